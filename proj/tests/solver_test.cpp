#include <doctest.h>

#include "rbrl/solver.hpp"
#include "support/test_support.hpp"

using namespace rbrl;

namespace {

Dataset one_by_one() {
  Matrix x(1, 1);
  x << 1;
  Matrix y(1, 1);
  y << 1;
  return Dataset::from_xy(x, y);
}

} // namespace

TEST_CASE("closed-form minimum of the 1x1 problem") {
  // f(w) = 1/2 (1 - w)^2 + 1/2 w^2 has its minimum at w = 1/2, F = 1/4.
  HyperParams hp;
  hp.lambda1 = 1.0;
  hp.lambda2 = 0.0;
  hp.lambda3 = 0.0;
  hp.rel_tol = 1e-12;
  hp.max_iters = 5000;
  auto [model, trace] = fit_linear(one_by_one(), hp, {.add_bias = false});
  CHECK(model.weights(0, 0) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(trace.objective_per_iter.back() ==
        doctest::Approx(0.25).epsilon(1e-8));
  CHECK(trace.stop_reason == StopReason::Converged);
}

TEST_CASE("huge trace-norm weight collapses the model to zero") {
  testsup::Rng rng(21);
  const Dataset ds = testsup::random_dataset(4, 3, 2, rng);
  HyperParams hp;
  hp.lambda1 = 0.1;
  hp.lambda2 = 0.1;
  hp.lambda3 = 1e6;
  auto [model, trace] = fit_linear(ds, hp);
  CHECK(model.weights.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degenerate all-zero lambdas still descend") {
  testsup::Rng rng(22);
  const Dataset ds = testsup::random_dataset(5, 3, 2, rng);
  auto [model, trace] = fit_kernel(ds, HyperParams{
                                           .lambda1 = 0,
                                           .lambda2 = 0,
                                           .lambda3 = 0,
                                           .max_iters = 200,
                                           .rel_tol = 1e-9,
                                           .kernel = KernelSpec::rbf(0.5),
                                       });
  double prev = trace.initial_objective;
  for (double f : trace.objective_per_iter) {
    CHECK(f <= prev + 1e-9 * std::max(1.0, std::abs(prev)));
    prev = f;
  }
}

TEST_CASE("trace bookkeeping invariants") {
  testsup::Rng rng(23);
  const Dataset ds = testsup::random_dataset(6, 3, 3, rng, false);
  HyperParams hp;
  hp.lambda1 = 0.2;
  hp.lambda2 = 0.4;
  hp.lambda3 = 0.05;
  auto [model, trace] = fit_linear(ds, hp);
  CHECK(static_cast<int>(trace.objective_per_iter.size()) ==
        trace.iterations);
  CHECK(trace.objective_per_iter.back() <=
        trace.objective_per_iter.front() + 1e-12);
  CHECK(trace.objective_per_iter.back() <= trace.initial_objective);
  CHECK(trace.l_f_used > 0.0);
  CHECK(trace.ranking_rows_skipped == ds.ranking_skipped_rows());
}

TEST_CASE("momentum sequence grows and dominates (t+1)/2") {
  double b = 1.0;
  for (int t = 1; t <= 200; ++t) {
    CHECK(b >= static_cast<double>(t + 1) / 2.0 - 1e-12);
    const double b_next = next_momentum(b);
    CHECK(b_next > b);
    b = b_next;
  }
}

TEST_CASE("identical inputs give bit-identical traces") {
  testsup::Rng rng(24);
  const Dataset ds = testsup::random_dataset(6, 4, 3, rng);
  HyperParams hp;
  hp.lambda1 = 0.3;
  hp.lambda2 = 0.2;
  hp.lambda3 = 0.1;
  auto [m1, t1] = fit_linear(ds, hp);
  auto [m2, t2] = fit_linear(ds, hp);
  REQUIRE(t1.objective_per_iter.size() == t2.objective_per_iter.size());
  for (std::size_t i = 0; i < t1.objective_per_iter.size(); ++i) {
    CHECK(t1.objective_per_iter[i] == t2.objective_per_iter[i]);
  }
  CHECK(m1.weights == m2.weights);
}

TEST_CASE("zero model predicts all-negative labels") {
  LinearModel model;
  model.weights = Matrix::Zero(3, 2);
  model.raw_features = 2;
  model.bias_added = true;
  const Matrix x = Matrix::Ones(4, 2);
  auto [scores, labels] = predict(model, x);
  CHECK(scores.scores.cwiseAbs().maxCoeff() == 0.0);
  CHECK(labels.labels.maxCoeff() == -1.0);
}

TEST_CASE("one-hot kernel coefficients score the matching kernel value") {
  testsup::Rng rng(25);
  KernelModel model;
  model.kernel = KernelSpec::rbf(0.7);
  model.train_features = testsup::random_matrix(5, 3, rng);
  model.coefficients = Matrix::Zero(5, 2);
  model.coefficients(2, 1) = 1.0; // alpha = e_2 on label 1
  const Matrix x_t = testsup::random_matrix(1, 3, rng);
  auto [scores, labels] = predict(model, x_t);
  const Matrix k_t = cross_gram(model.kernel, model.train_features, x_t);
  CHECK(scores.scores(0, 0) == 0.0);
  CHECK(scores.scores(0, 1) == doctest::Approx(k_t(2, 0)).epsilon(1e-14));
}

TEST_CASE("linear-kernel training scores equal XW when W = X^T A") {
  testsup::Rng rng(26);
  const Matrix x = testsup::random_matrix(4, 3, rng);
  const Matrix a = testsup::random_matrix(4, 2, rng);
  KernelModel model;
  model.kernel = KernelSpec::linear();
  model.train_features = x;
  model.coefficients = a;
  auto [scores, labels] = predict(model, x);
  const Matrix w = x.transpose() * a;
  CHECK(scores.scores.isApprox(x * w, 1e-12));
}

TEST_CASE("representer equivalence of the two solver paths") {
  testsup::Rng rng(27);
  for (int round = 0; round < 3; ++round) {
    const Dataset ds = testsup::random_dataset(6, 4, 3, rng);
    HyperParams hp;
    hp.lambda1 = 0.5;
    hp.lambda2 = 0.25;
    hp.lambda3 = 0.0;
    hp.rel_tol = 1e-14;
    hp.max_iters = 100000;
    hp.kernel = KernelSpec::linear();
    auto [lin, lt] = fit_linear(ds, hp, {.add_bias = false});
    auto [ker, kt] = fit_kernel(ds, hp);
    auto [ls, ll] = predict(lin, ds.features);
    auto [ks, kl] = predict(ker, ds.features);
    const double rel = (ls.scores - ks.scores).norm() /
                       std::max(1.0, ls.scores.norm());
    CHECK(rel < 1e-4);
  }
}

TEST_CASE("predicted labels are exactly the thresholded scores") {
  testsup::Rng rng(28);
  const Dataset ds = testsup::random_dataset(8, 3, 3, rng);
  HyperParams hp;
  hp.lambda1 = 0.2;
  hp.lambda2 = 0.1;
  hp.lambda3 = 0.05;
  auto [model, trace] = fit_linear(ds, hp);
  const Matrix x_test = testsup::random_matrix(5, 3, rng);
  auto [scores, labels] = predict(model, x_test);
  CHECK(labels.labels == threshold_scores(scores).labels);
}

TEST_CASE("prediction rejects the wrong feature width") {
  LinearModel model;
  model.weights = Matrix::Zero(4, 2);
  model.raw_features = 3;
  model.bias_added = true;
  CHECK_THROWS_AS(predict(model, Matrix::Zero(2, 5)), ShapeMismatch);
}
