#pragma once

#include "rbrl/errors.hpp"
#include "rbrl/matrix.hpp"

namespace rbrl {

enum class KernelKind { Linear, Rbf };

struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  double gamma = 0.0; // rbf only; > 0 required

  static KernelSpec linear() { return {KernelKind::Linear, 0.0}; }
  static KernelSpec rbf(double gamma) { return {KernelKind::Rbf, gamma}; }
  // The conventional default: gamma = 1/m with m the raw feature count.
  static KernelSpec rbf_default(Index raw_feature_count) {
    return rbf(1.0 / static_cast<double>(raw_feature_count));
  }
};

void validate_kernel_spec(const KernelSpec& spec);

// Gram matrix K with K(i,j) = k(x_i, x_j). The result is exactly symmetric
// (computed as (G + G^T)/2) and the rbf diagonal is exactly 1.
Matrix gram(const KernelSpec& spec, const Matrix& x);

// Rectangular kernel block between training and test rows; column t holds
// [k(x_1, x_t), ..., k(x_n, x_t)].
Matrix cross_gram(const KernelSpec& spec, const Matrix& x_train,
                  const Matrix& x_test);

// max|K - K^T| <= tol * max|K| check, then symmetrization. Throws
// AsymmetricKernel when violated.
Matrix require_symmetric(const Matrix& k, double rel_tol = 1e-8);

} // namespace rbrl
