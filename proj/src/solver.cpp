#include "rbrl/solver.hpp"

#include <cmath>
#include <functional>

namespace rbrl {

namespace {

struct ApgOutput {
  Matrix param;
  SolveTrace trace;
};

// Shared APG loop over either parameter space. grad_at evaluates the smooth
// gradient, smooth_value_at the smooth objective; the trace-norm part of the
// composite objective comes out of the proximal step itself.
ApgOutput apg(Index rows, Index cols, const HyperParams& hp, double l_f,
              const std::function<Matrix(const Matrix&)>& grad_at,
              const std::function<double(const Matrix&)>& smooth_value_at) {
  ApgOutput out;
  // With all-zero data the gradient is constant and any positive step works.
  if (!(l_f > 0.0)) l_f = 1.0;
  out.trace.l_f_used = l_f;

  Matrix w = Matrix::Zero(rows, cols); // W_{t-1}, starts as W_0
  Matrix g = w;                        // G_t
  double b = 1.0;

  double f_prev = smooth_value_at(w); // F(0); the trace norm of 0 is 0
  out.trace.initial_objective = f_prev;

  const double shrink = hp.lambda3 / l_f;
  StopReason reason = StopReason::MaxIters;
  int t = 0;
  while (t < hp.max_iters) {
    Matrix step = g - grad_at(g) / l_f;
    Matrix w_next;
    double w_next_trace_norm = 0.0;
    if (hp.lambda3 == 0.0) {
      w_next = std::move(step);
    } else {
      SvtResult prox = svt_with_norm(step, shrink);
      w_next = std::move(prox.value);
      w_next_trace_norm = prox.trace_norm;
    }
    const double b_next = next_momentum(b);
    g = w_next + ((b - 1.0) / b_next) * (w_next - w);
    w = std::move(w_next);
    b = b_next;
    ++t;

    const double f_t =
        smooth_value_at(w) + hp.lambda3 * w_next_trace_norm;
    if (!std::isfinite(f_t)) {
      throw NonFiniteObjective("objective became non-finite at iteration " +
                               std::to_string(t));
    }
    out.trace.objective_per_iter.push_back(f_t);
    const double rel =
        std::abs(f_t - f_prev) / std::max(1.0, std::abs(f_prev));
    f_prev = f_t;
    if (rel < hp.rel_tol) {
      reason = StopReason::Converged;
      break;
    }
  }
  out.trace.iterations = t;
  out.trace.stop_reason = reason;
  out.param = std::move(w);
  return out;
}

} // namespace

std::pair<LinearModel, SolveTrace> fit_linear(const Dataset& ds,
                                              const HyperParams& hp,
                                              const FitOptions& opts) {
  validate_dataset(ds);
  validate_hyperparams(hp);
  const Dataset train = opts.add_bias ? augment_bias(ds) : ds;

  const LipschitzBound bound = lipschitz_linear(train, hp);
  ApgOutput run = apg(
      train.feature_count(), train.label_count(), hp, bound.l_f,
      [&](const Matrix& w) { return smooth_eval_linear(w, train, hp).gradient; },
      [&](const Matrix& w) { return smooth_value_linear(w, train, hp); });

  LinearModel model;
  model.weights = std::move(run.param);
  model.raw_features = ds.feature_count();
  model.bias_added = opts.add_bias;
  run.trace.ranking_rows_skipped = train.ranking_skipped_rows();
  return {std::move(model), std::move(run.trace)};
}

std::pair<KernelModel, SolveTrace> fit_kernel(const Dataset& ds,
                                              const HyperParams& hp) {
  validate_dataset(ds);
  validate_hyperparams(hp);
  const Matrix k = gram(hp.kernel, ds.features); // exactly symmetric
  const LipschitzBound bound = lipschitz_kernel(k, ds, hp);
  ApgOutput run = apg(
      ds.rows(), ds.label_count(), hp, bound.l_f,
      [&](const Matrix& a) {
        return detail::smooth_eval_kernel_sym(a, k, ds, hp).gradient;
      },
      [&](const Matrix& a) {
        return detail::smooth_value_kernel_sym(a, k, ds, hp);
      });

  KernelModel model;
  model.coefficients = std::move(run.param);
  model.kernel = hp.kernel;
  model.train_features = ds.features;
  run.trace.ranking_rows_skipped = ds.ranking_skipped_rows();
  return {std::move(model), std::move(run.trace)};
}

std::pair<PredictionScores, LabelPredictions> predict(const LinearModel& model,
                                                      const Matrix& x_test) {
  if (x_test.cols() != model.raw_features) {
    throw ShapeMismatch("test feature width " + std::to_string(x_test.cols()) +
                        " does not match model width " +
                        std::to_string(model.raw_features));
  }
  PredictionScores scores;
  if (model.bias_added) {
    scores.scores.noalias() =
        x_test * model.weights.topRows(model.raw_features);
    scores.scores.rowwise() += model.weights.row(model.raw_features);
  } else {
    scores.scores.noalias() = x_test * model.weights;
  }
  LabelPredictions labels = threshold_scores(scores);
  return {std::move(scores), std::move(labels)};
}

std::pair<PredictionScores, LabelPredictions> predict(const KernelModel& model,
                                                      const Matrix& x_test) {
  const Matrix k_t = cross_gram(model.kernel, model.train_features, x_test);
  PredictionScores scores;
  scores.scores.noalias() = k_t.transpose() * model.coefficients;
  LabelPredictions labels = threshold_scores(scores);
  return {std::move(scores), std::move(labels)};
}

} // namespace rbrl
