#include "rbrl/lowrank.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace rbrl {

namespace {

// A_j and B_j accumulated from the per-row label-set cardinalities; norm4[i]
// holds ||x_i||^4 (or ||K^i||^4 on the kernel path). Rows with an empty set
// are skipped to mirror the ranking term.
void accumulate_pair_bounds(const Dataset& ds, const Vector& norm4,
                            Vector& a_out, Vector& b_out) {
  const Index l = ds.label_count();
  a_out = Vector::Zero(l);
  b_out = Vector::Zero(l);
  for (Index i = 0; i < ds.rows(); ++i) {
    const auto& rel = ds.relevant[i];
    const auto& irr = ds.irrelevant[i];
    if (rel.empty() || irr.empty()) continue;
    const double n_rel = static_cast<double>(rel.size());
    const double n_irr = static_cast<double>(irr.size());
    const double denom = n_rel * n_rel * n_irr * n_irr;
    for (Index j : rel) {
      a_out(j) += n_irr;
      b_out(j) += n_irr * norm4(i) / denom;
    }
    for (Index j : irr) {
      a_out(j) += n_rel;
      b_out(j) += n_rel * norm4(i) / denom;
    }
  }
}

LipschitzBound assemble_bound(const Dataset& ds, const HyperParams& hp,
                              const Vector& norm4, double data_term,
                              double reg_term) {
  LipschitzBound bound;
  accumulate_pair_bounds(ds, norm4, bound.per_label_a, bound.per_label_b);
  double max_ab = 0.0;
  for (Index j = 0; j < bound.per_label_a.size(); ++j) {
    max_ab = std::max(max_ab, bound.per_label_a(j) * bound.per_label_b(j));
  }
  bound.l_fr = std::sqrt(max_ab);
  const double r = hp.lambda2 * bound.l_fr;
  bound.l_f = std::sqrt(3.0 * data_term * data_term + 3.0 * reg_term +
                        3.0 * r * r);
  return bound;
}

} // namespace

LipschitzBound lipschitz_linear(const Dataset& ds, const HyperParams& hp) {
  Vector sq = ds.features.rowwise().squaredNorm();
  Vector norm4 = sq.cwiseProduct(sq);
  const double x_f2 = ds.features.squaredNorm();
  return assemble_bound(ds, hp, norm4, x_f2, hp.lambda1 * hp.lambda1);
}

LipschitzBound lipschitz_kernel(const Matrix& k, const Dataset& ds,
                                const HyperParams& hp) {
  const Matrix sym = require_symmetric(k);
  if (sym.rows() != ds.rows()) {
    throw ShapeMismatch("gram matrix size " + std::to_string(sym.rows()) +
                        " does not match n=" + std::to_string(ds.rows()));
  }
  Vector sq = sym.colwise().squaredNorm().transpose();
  Vector norm4 = sq.cwiseProduct(sq);
  const double k_f2 = sym.squaredNorm();
  const double reg = hp.lambda1 * hp.lambda1 * k_f2;
  return assemble_bound(ds, hp, norm4, k_f2, reg);
}

SvtResult svt_with_norm(const Matrix& m, double eps) {
  if (eps < 0.0 || !std::isfinite(eps)) {
    throw NumericError("svt threshold must be nonnegative and finite");
  }
  if (eps == 0.0) {
    Eigen::BDCSVD<Matrix> sv(m);
    if (sv.info() != Eigen::Success) throw SvdFailure("svd did not converge");
    return {m, sv.singularValues().sum()};
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw SvdFailure("svd did not converge");
  Vector shrunk = (svd.singularValues().array() - eps).max(0.0);
  SvtResult out;
  out.value.noalias() =
      svd.matrixU() * shrunk.asDiagonal() * svd.matrixV().transpose();
  out.trace_norm = shrunk.sum();
  return out;
}

Matrix svt(const Matrix& m, double eps) {
  if (eps == 0.0) return m;
  return svt_with_norm(m, eps).value;
}

} // namespace rbrl
