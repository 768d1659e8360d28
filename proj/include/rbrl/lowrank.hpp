#pragma once

#include "rbrl/types.hpp"

namespace rbrl {

// Closed-form Lipschitz constant of the smooth gradient, assembled from the
// per-label pair counts A_j and weighted norms B_j:
//   l_fr = sqrt(max_j A_j * B_j)
//   l_f  = sqrt(3 (||X||_F^2)^2 + 3 lambda1^2 + 3 (lambda2 l_fr)^2)   (linear)
//   l_f  = sqrt(3 (||K||_F^2)^2 + 3 ||lambda1 K||_F^2 + 3 (lambda2 l_fr)^2)
// Rows with an empty relevant or irrelevant set contribute nothing, matching
// the skipping rule in the ranking term itself.
struct LipschitzBound {
  double l_f = 0.0;
  double l_fr = 0.0;
  Vector per_label_a;
  Vector per_label_b;
};

LipschitzBound lipschitz_linear(const Dataset& ds, const HyperParams& hp);
LipschitzBound lipschitz_kernel(const Matrix& k, const Dataset& ds,
                                const HyperParams& hp);

// Singular value thresholding: the exact minimizer of
// 1/2 ||Z - M||_F^2 + eps ||Z||_*. Singular values are shrunk by eps and
// floored at zero; eps = 0 returns M unchanged.
Matrix svt(const Matrix& m, double eps);

// Same operator, also reporting the trace norm of the result (the shrunk
// singular values are a free byproduct of the decomposition).
struct SvtResult {
  Matrix value;
  double trace_norm = 0.0;
};
SvtResult svt_with_norm(const Matrix& m, double eps);

} // namespace rbrl
