#include "rbrl/objective.hpp"

#include <Eigen/SVD>

namespace rbrl {

namespace {

void check_linear_shapes(const Matrix& w, const Dataset& ds) {
  if (w.rows() != ds.feature_count() || w.cols() != ds.label_count()) {
    throw ShapeMismatch("weight matrix " + std::to_string(w.rows()) + "x" +
                        std::to_string(w.cols()) + " does not match dataset " +
                        std::to_string(ds.feature_count()) + "x" +
                        std::to_string(ds.label_count()));
  }
}

void check_kernel_shapes(const Matrix& a, const Matrix& k, const Dataset& ds) {
  if (k.rows() != ds.rows() || k.cols() != ds.rows()) {
    throw ShapeMismatch("gram matrix " + std::to_string(k.rows()) + "x" +
                        std::to_string(k.cols()) + " does not match n=" +
                        std::to_string(ds.rows()));
  }
  if (a.rows() != ds.rows() || a.cols() != ds.label_count()) {
    throw ShapeMismatch("coefficient matrix " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()) +
                        " does not match dataset " + std::to_string(ds.rows()) +
                        "x" + std::to_string(ds.label_count()));
  }
}

// 1/2 sum max(0, 1 - y_ij s_ij)^2 over prediction scores S.
double br_from_scores(const Matrix& s, const Matrix& y) {
  return 0.5 *
         (Matrix::Ones(y.rows(), y.cols()) - y.cwiseProduct(s))
             .cwiseMax(0.0)
             .squaredNorm();
}

// Pairwise squared-hinge ranking term over scores. When grad_coeffs is given
// it receives d(ranking)/dS, so the parameter gradient is basis^T *
// grad_coeffs for either basis (X or K). Rows missing a relevant or
// irrelevant label are skipped.
double ranking_from_scores(const Matrix& s, const Dataset& ds,
                           Matrix* grad_coeffs) {
  double total = 0.0;
  for (Index i = 0; i < ds.rows(); ++i) {
    const auto& rel = ds.relevant[i];
    const auto& irr = ds.irrelevant[i];
    if (rel.empty() || irr.empty()) continue;
    const double inv =
        1.0 / (static_cast<double>(rel.size()) * static_cast<double>(irr.size()));
    for (Index p : rel) {
      const double sp = s(i, p);
      for (Index q : irr) {
        const double margin = 2.0 - (sp - s(i, q));
        if (margin > 0.0) {
          total += inv * margin * margin;
          if (grad_coeffs) {
            (*grad_coeffs)(i, p) -= inv * margin;
            (*grad_coeffs)(i, q) += inv * margin;
          }
        }
      }
    }
  }
  return 0.5 * total;
}

} // namespace

double br_loss_linear(const Matrix& w, const Dataset& ds) {
  check_linear_shapes(w, ds);
  return br_from_scores(ds.features * w, ds.labels);
}

double ranking_loss_term_linear(const Matrix& w, const Dataset& ds) {
  check_linear_shapes(w, ds);
  const Matrix s = ds.features * w;
  return ranking_from_scores(s, ds, nullptr);
}

double br_loss_kernel(const Matrix& a, const Matrix& k, const Dataset& ds) {
  check_kernel_shapes(a, k, ds);
  return br_from_scores(k * a, ds.labels);
}

double ranking_loss_term_kernel(const Matrix& a, const Matrix& k,
                                const Dataset& ds) {
  check_kernel_shapes(a, k, ds);
  const Matrix s = k * a;
  return ranking_from_scores(s, ds, nullptr);
}

namespace detail {

// Shared core once scores S = X*W (or K*A) are known. The returned
// grad_coeffs combines the BR hinge term and the ranking pair term so the
// caller finishes with a single basis^T * grad_coeffs product.
struct ScoreEval {
  double br = 0.0;
  double ranking = 0.0;
  Matrix grad_coeffs; // empty when gradients were not requested
};

ScoreEval eval_scores(const Matrix& s, const Dataset& ds,
                      const HyperParams& hp, bool want_gradient) {
  ScoreEval ev;
  const Matrix margins =
      Matrix::Ones(s.rows(), s.cols()) - ds.labels.cwiseProduct(s);
  const Matrix hinge = margins.cwiseMax(0.0);
  ev.br = 0.5 * hinge.squaredNorm();
  if (want_gradient) {
    ev.grad_coeffs = hinge.cwiseProduct(-ds.labels);
    if (hp.lambda2 != 0.0) {
      Matrix rank_coeffs = Matrix::Zero(s.rows(), s.cols());
      ev.ranking = ranking_from_scores(s, ds, &rank_coeffs);
      ev.grad_coeffs.noalias() += hp.lambda2 * rank_coeffs;
    }
  } else if (hp.lambda2 != 0.0) {
    ev.ranking = ranking_from_scores(s, ds, nullptr);
  }
  return ev;
}

SmoothEval smooth_eval_kernel_sym(const Matrix& a, const Matrix& k,
                                  const Dataset& ds, const HyperParams& hp) {
  check_kernel_shapes(a, k, ds);
  const Matrix s = k * a;
  ScoreEval ev = eval_scores(s, ds, hp, true);
  SmoothEval out;
  out.value = ev.br + 0.5 * hp.lambda1 * a.cwiseProduct(s).sum() +
              hp.lambda2 * ev.ranking;
  out.gradient.noalias() = k * ev.grad_coeffs;
  out.gradient.noalias() += hp.lambda1 * s;
  return out;
}

double smooth_value_kernel_sym(const Matrix& a, const Matrix& k,
                               const Dataset& ds, const HyperParams& hp) {
  check_kernel_shapes(a, k, ds);
  const Matrix s = k * a;
  ScoreEval ev = eval_scores(s, ds, hp, false);
  return ev.br + 0.5 * hp.lambda1 * a.cwiseProduct(s).sum() +
         hp.lambda2 * ev.ranking;
}

} // namespace detail

SmoothEval smooth_eval_linear(const Matrix& w, const Dataset& ds,
                              const HyperParams& hp) {
  check_linear_shapes(w, ds);
  const Matrix s = ds.features * w;
  detail::ScoreEval ev = detail::eval_scores(s, ds, hp, true);
  SmoothEval out;
  out.value = ev.br + 0.5 * hp.lambda1 * w.squaredNorm() +
              hp.lambda2 * ev.ranking;
  out.gradient.noalias() = ds.features.transpose() * ev.grad_coeffs;
  out.gradient.noalias() += hp.lambda1 * w;
  return out;
}

double smooth_value_linear(const Matrix& w, const Dataset& ds,
                           const HyperParams& hp) {
  check_linear_shapes(w, ds);
  const Matrix s = ds.features * w;
  detail::ScoreEval ev = detail::eval_scores(s, ds, hp, false);
  return ev.br + 0.5 * hp.lambda1 * w.squaredNorm() + hp.lambda2 * ev.ranking;
}

SmoothEval smooth_eval_kernel(const Matrix& a, const Matrix& k,
                              const Dataset& ds, const HyperParams& hp) {
  return detail::smooth_eval_kernel_sym(a, require_symmetric(k), ds, hp);
}

double smooth_value_kernel(const Matrix& a, const Matrix& k, const Dataset& ds,
                           const HyperParams& hp) {
  return detail::smooth_value_kernel_sym(a, require_symmetric(k), ds, hp);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw SvdFailure("singular value decomposition did not converge");
  }
  return svd.singularValues().sum();
}

double full_objective_linear(const Matrix& w, const Dataset& ds,
                             const HyperParams& hp) {
  double value = smooth_value_linear(w, ds, hp);
  if (hp.lambda3 != 0.0) value += hp.lambda3 * trace_norm(w);
  return value;
}

double full_objective_kernel(const Matrix& a, const Matrix& k,
                             const Dataset& ds, const HyperParams& hp) {
  double value = smooth_value_kernel(a, k, ds, hp);
  if (hp.lambda3 != 0.0) value += hp.lambda3 * trace_norm(a);
  return value;
}

} // namespace rbrl
