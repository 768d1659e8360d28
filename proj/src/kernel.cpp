#include "rbrl/kernel.hpp"

#include <cmath>

namespace rbrl {

Matrix require_symmetric(const Matrix& k, double rel_tol) {
  if (k.rows() != k.cols()) {
    throw ShapeMismatch("kernel matrix must be square, got " +
                        std::to_string(k.rows()) + "x" +
                        std::to_string(k.cols()));
  }
  const double scale = k.cwiseAbs().maxCoeff();
  const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
  if (asym > rel_tol * std::max(scale, 1e-300)) {
    throw AsymmetricKernel("max|K - K^T| = " + std::to_string(asym) +
                           " exceeds tolerance " +
                           std::to_string(rel_tol * scale));
  }
  return 0.5 * (k + k.transpose());
}

Matrix gram(const KernelSpec& spec, const Matrix& x) {
  validate_kernel_spec(spec);
  Matrix g = x * x.transpose();
  g = 0.5 * (g + g.transpose()); // exact symmetry
  if (spec.kind == KernelKind::Linear) return g;

  const Index n = x.rows();
  Vector sq = g.diagonal();
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d2 = std::max(0.0, sq(i) + sq(j) - 2.0 * g(i, j));
      const double v = std::exp(-spec.gamma * d2);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Matrix cross_gram(const KernelSpec& spec, const Matrix& x_train,
                  const Matrix& x_test) {
  validate_kernel_spec(spec);
  if (x_train.cols() != x_test.cols()) {
    throw ShapeMismatch("train feature width " +
                        std::to_string(x_train.cols()) +
                        " != test feature width " +
                        std::to_string(x_test.cols()));
  }
  Matrix g = x_train * x_test.transpose(); // n x n_t
  if (spec.kind == KernelKind::Linear) return g;

  Vector sq_train = x_train.rowwise().squaredNorm();
  Vector sq_test = x_test.rowwise().squaredNorm();
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index t = 0; t < g.cols(); ++t) {
      const double d2 = std::max(0.0, sq_train(i) + sq_test(t) - 2.0 * g(i, t));
      g(i, t) = std::exp(-spec.gamma * d2);
    }
  }
  return g;
}

} // namespace rbrl
