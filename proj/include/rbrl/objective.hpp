#pragma once

#include "rbrl/types.hpp"

namespace rbrl {

// Value and gradient of the smooth part f of the training objective, in
// either W-space (linear) or A-space (kernel). The nonsmooth part is
// lambda3 * trace_norm and is handled by the proximal step.
struct SmoothEval {
  double value = 0.0;
  Matrix gradient;
};

// 1/2 sum_ij max(0, 1 - y_ij <w^j, x_i>)^2
double br_loss_linear(const Matrix& w, const Dataset& ds);

// 1/2 sum_i 1/(|Y+||Y-|) sum_{p in Y+} sum_{q in Y-}
//   max(0, 2 - <w^p - w^q, x_i>)^2,
// skipping rows with an empty relevant or irrelevant set.
double ranking_loss_term_linear(const Matrix& w, const Dataset& ds);

// Kernel-space analogues over scores K*A.
double br_loss_kernel(const Matrix& a, const Matrix& k, const Dataset& ds);
double ranking_loss_term_kernel(const Matrix& a, const Matrix& k,
                                const Dataset& ds);

// f(W) = br + (lambda1/2)||W||_F^2 + lambda2 * ranking, with exact gradient
// X^T(|E - Y.(XW)|_+ . (-Y)) + lambda1 W + lambda2 grad_fr.
SmoothEval smooth_eval_linear(const Matrix& w, const Dataset& ds,
                              const HyperParams& hp);
double smooth_value_linear(const Matrix& w, const Dataset& ds,
                           const HyperParams& hp);

// f(A) = br + (lambda1/2)Tr(A^T K A) + lambda2 * ranking; k must be
// symmetric (see require_symmetric).
SmoothEval smooth_eval_kernel(const Matrix& a, const Matrix& k,
                              const Dataset& ds, const HyperParams& hp);
double smooth_value_kernel(const Matrix& a, const Matrix& k, const Dataset& ds,
                           const HyperParams& hp);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Smooth value + lambda3 * trace_norm(param).
double full_objective_linear(const Matrix& w, const Dataset& ds,
                             const HyperParams& hp);
double full_objective_kernel(const Matrix& a, const Matrix& k,
                             const Dataset& ds, const HyperParams& hp);

namespace detail {
// Variants for callers that already hold an exactly symmetric Gram matrix
// (the solver symmetrizes once before its loop).
SmoothEval smooth_eval_kernel_sym(const Matrix& a, const Matrix& k,
                                  const Dataset& ds, const HyperParams& hp);
double smooth_value_kernel_sym(const Matrix& a, const Matrix& k,
                               const Dataset& ds, const HyperParams& hp);
} // namespace detail

} // namespace rbrl
