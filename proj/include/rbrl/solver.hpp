#pragma once

#include <utility>

#include "rbrl/lowrank.hpp"
#include "rbrl/objective.hpp"
#include "rbrl/types.hpp"

namespace rbrl {

enum class StopReason { Converged, MaxIters };

struct SolveTrace {
  double initial_objective = 0.0;        // F at the zero start
  std::vector<double> objective_per_iter; // F(W_t), t = 1..iterations
  int iterations = 0;
  StopReason stop_reason = StopReason::MaxIters;
  double l_f_used = 0.0;
  Index ranking_rows_skipped = 0;
};

// Accelerated proximal gradient on the composite objective
//   F(P) = f(P) + lambda3 ||P||_*
// with fixed step 1/L_f, momentum b_{t+1} = (1 + sqrt(1 + 4 b_t^2))/2, zero
// initialization, and stopping when the relative objective change
// |F_t - F_{t-1}| / max(1, |F_{t-1}|) drops below rel_tol.

struct FitOptions {
  bool add_bias = true; // linear path only; applied exactly once here
};

std::pair<LinearModel, SolveTrace> fit_linear(const Dataset& ds,
                                              const HyperParams& hp,
                                              const FitOptions& opts = {});

std::pair<KernelModel, SolveTrace> fit_kernel(const Dataset& ds,
                                              const HyperParams& hp);

// Momentum recurrence, exposed for property tests.
inline double next_momentum(double b) {
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * b * b));
}

// Scores a test block; bias augmentation (linear) or the kernel block against
// the retained training rows (kernel) happens internally. X_test must have
// the model's pre-augmentation width.
std::pair<PredictionScores, LabelPredictions> predict(const LinearModel& model,
                                                      const Matrix& x_test);
std::pair<PredictionScores, LabelPredictions> predict(const KernelModel& model,
                                                      const Matrix& x_test);

} // namespace rbrl
