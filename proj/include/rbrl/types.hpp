#pragma once

#include <vector>

#include "rbrl/errors.hpp"
#include "rbrl/kernel.hpp"
#include "rbrl/matrix.hpp"

namespace rbrl {

// A multi-label training or test set. Features are dense reals, labels are
// signs in {-1,+1}. The per-row relevant/irrelevant index sets are built once
// and shared read-only by the loss, ranking and metric code.
//
// Rows whose relevant or irrelevant set is empty are legal; the pairwise
// ranking machinery skips them because its 1/(|Y+||Y-|) normalizer is
// undefined there.
struct Dataset {
  Matrix features; // n x m
  Matrix labels;   // n x l, entries -1.0 or +1.0
  std::vector<std::vector<Index>> relevant;   // per row: {j : y_ij = +1}
  std::vector<std::vector<Index>> irrelevant; // per row: {j : y_ij = -1}

  Index rows() const { return features.rows(); }
  Index feature_count() const { return features.cols(); }
  Index label_count() const { return labels.cols(); }

  // Rows usable by the pairwise ranking term (both index sets nonempty).
  Index ranking_usable_rows() const;
  Index ranking_skipped_rows() const { return rows() - ranking_usable_rows(); }

  // Builds the index sets from labels. Does not validate; see
  // validate_dataset.
  static Dataset from_xy(Matrix x, Matrix y);
};

// Checks every Dataset invariant and throws the first violation found, with
// the offending rows listed in the message.
void validate_dataset(const Dataset& ds);

// Returns a copy with a trailing all-ones feature column (bias absorption).
Dataset augment_bias(const Dataset& ds);

struct HyperParams {
  double lambda1 = 1.0;  // Frobenius / Tr(A^T K A) tradeoff
  double lambda2 = 1.0;  // pairwise ranking tradeoff
  double lambda3 = 1.0;  // trace-norm tradeoff
  int max_iters = 1000;
  double rel_tol = 1e-6; // relative objective-change stopping threshold
  KernelSpec kernel = KernelSpec::linear();

  static HyperParams defaults_linear() { return {}; }
  static HyperParams defaults_kernel(KernelSpec spec) {
    HyperParams hp;
    hp.max_iters = 3000;
    hp.kernel = spec;
    return hp;
  }
};

void validate_hyperparams(const HyperParams& hp);

struct LinearModel {
  Matrix weights;        // (raw_features + 1) x l when bias_added, else m x l
  Index raw_features = 0; // expected pre-augmentation width of inputs
  bool bias_added = true;

  Index label_count() const { return weights.cols(); }
};

struct KernelModel {
  Matrix coefficients; // n x l
  KernelSpec kernel;
  Matrix train_features; // retained to form the test kernel block

  Index label_count() const { return coefficients.cols(); }
};

struct PredictionScores {
  Matrix scores; // n_t x l
};

struct LabelPredictions {
  Matrix labels; // n_t x l, entries -1.0 or +1.0
};

// H = sign(F) elementwise, sign(0) = -1.
LabelPredictions threshold_scores(const PredictionScores& scores);

} // namespace rbrl
