#include <doctest.h>

#include "rbrl/objective.hpp"
#include "rbrl/solver.hpp"
#include "support/test_support.hpp"

using namespace rbrl;

namespace {

HyperParams plain(double l1 = 0, double l2 = 0, double l3 = 0) {
  HyperParams hp;
  hp.lambda1 = l1;
  hp.lambda2 = l2;
  hp.lambda3 = l3;
  return hp;
}

double rel_err(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

} // namespace

TEST_CASE("br loss at zero weights is half n*l") {
  testsup::Rng rng(1);
  const Dataset ds = testsup::random_dataset(2, 4, 3, rng);
  CHECK(br_loss_linear(Matrix::Zero(4, 3), ds) == doctest::Approx(3.0));
}

TEST_CASE("br loss vanishes when every margin is satisfied") {
  Matrix x(2, 1);
  x << 1, 1;
  Matrix y(2, 2);
  y << 1, -1, 1, -1;
  const Dataset ds = Dataset::from_xy(x, y);
  Matrix w(1, 2);
  w << 5, -5; // y*score = 5 >= 1 everywhere
  CHECK(br_loss_linear(w, ds) == 0.0);
}

TEST_CASE("a single violated margin contributes its square") {
  Matrix x(1, 1);
  x << 1;
  Matrix y(1, 1);
  y << 1;
  const Dataset ds = Dataset::from_xy(x, y);
  Matrix w(1, 1);
  w << -1; // y<w,x> = -1 -> max(0, 2)^2 / 2 = 2
  CHECK(br_loss_linear(w, ds) == doctest::Approx(2.0));
}

TEST_CASE("ranking term at zero weights is 2 per usable row") {
  testsup::Rng rng(5);
  for (int round = 0; round < 5; ++round) {
    const Dataset ds = testsup::random_dataset(4, 3, 3, rng, false);
    const double expected = 2.0 * static_cast<double>(ds.ranking_usable_rows());
    CHECK(ranking_loss_term_linear(Matrix::Zero(3, 3), ds) ==
          doctest::Approx(expected));
  }
}

TEST_CASE("ranking term vanishes once every pair clears margin 2") {
  Matrix x(1, 1);
  x << 1;
  Matrix y(1, 2);
  y << 1, -1;
  const Dataset ds = Dataset::from_xy(x, y);
  Matrix w(1, 2);
  w << 3, 0; // <w^p - w^q, x> = 3 >= 2
  CHECK(ranking_loss_term_linear(w, ds) == 0.0);
  w << 2, 0; // margin exactly met: zero loss, zero slope boundary
  CHECK(ranking_loss_term_linear(w, ds) == 0.0);
}

TEST_CASE("flat region has zero gradient when lambdas vanish") {
  Matrix x(2, 1);
  x << 1, 2;
  Matrix y(2, 2);
  y << 1, -1, 1, -1;
  const Dataset ds = Dataset::from_xy(x, y);
  Matrix w(1, 2);
  w << 9, -9; // all BR hinges and all pair hinges inactive
  const SmoothEval ev = smooth_eval_linear(w, ds, plain());
  CHECK(ev.value == 0.0);
  CHECK(ev.gradient.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hand-differentiated 1x1 instance") {
  Matrix x(1, 1);
  x << 1;
  Matrix y(1, 1);
  y << 1;
  const Dataset ds = Dataset::from_xy(x, y);
  const SmoothEval ev =
      smooth_eval_linear(Matrix::Zero(1, 1), ds, plain(1.0, 0.0));
  CHECK(ev.value == doctest::Approx(0.5));
  CHECK(ev.gradient(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("linear gradient matches central finite differences") {
  testsup::Rng rng(42);
  for (int round = 0; round < 30; ++round) {
    const Dataset ds = testsup::random_dataset(4, 3, 2, rng, false);
    const HyperParams hp =
        plain(rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2));
    const Matrix w = testsup::random_matrix(3, 2, rng);
    const SmoothEval ev = smooth_eval_linear(w, ds, hp);
    const Matrix fd = testsup::fd_gradient(
        [&](const Matrix& p) { return smooth_value_linear(p, ds, hp); }, w);
    CHECK(rel_err(ev.gradient, fd) < 1e-5);
  }
}

TEST_CASE("kernel value at zero coefficients") {
  testsup::Rng rng(9);
  const Dataset ds = testsup::random_dataset(5, 3, 2, rng, false);
  const Matrix k = gram(KernelSpec::rbf(0.4), ds.features);
  const HyperParams hp = plain(0.7, 0.3);
  const double expected =
      0.5 * 5 * 2 + 2.0 * 0.3 * static_cast<double>(ds.ranking_usable_rows());
  CHECK(smooth_value_kernel(Matrix::Zero(5, 2), k, ds, hp) ==
        doctest::Approx(expected));
}

TEST_CASE("kernel gradient matches central finite differences") {
  testsup::Rng rng(43);
  for (int round = 0; round < 20; ++round) {
    const Dataset ds = testsup::random_dataset(4, 3, 2, rng, false);
    const Matrix k = gram(round % 2 ? KernelSpec::rbf(0.6)
                                    : KernelSpec::linear(),
                          ds.features);
    const HyperParams hp =
        plain(rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2));
    const Matrix a = testsup::random_matrix(4, 2, rng);
    const SmoothEval ev = smooth_eval_kernel(a, k, ds, hp);
    const Matrix fd = testsup::fd_gradient(
        [&](const Matrix& p) { return smooth_value_kernel(p, k, ds, hp); },
        a);
    CHECK(rel_err(ev.gradient, fd) < 1e-5);
  }
}

TEST_CASE("linear and kernel objectives agree through W = X^T A") {
  testsup::Rng rng(44);
  for (int round = 0; round < 10; ++round) {
    const Dataset ds = testsup::random_dataset(5, 3, 2, rng, false);
    const Matrix k = gram(KernelSpec::linear(), ds.features);
    const Matrix a = testsup::random_matrix(5, 2, rng);
    const Matrix w = ds.features.transpose() * a;
    const HyperParams hp = plain(rng.uniform(0, 1), rng.uniform(0, 1));
    const double lin = smooth_value_linear(w, ds, hp);
    const double ker = smooth_value_kernel(a, k, ds, hp);
    CHECK(std::abs(lin - ker) <= 1e-10 * std::max(1.0, std::abs(lin)));
  }
}

TEST_CASE("trace norm basics") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  CHECK(trace_norm(d) == doctest::Approx(4.0));
  CHECK(trace_norm(Matrix::Zero(3, 2)) == 0.0);
  Matrix ones = Matrix::Ones(2, 2); // rank one, sigma = 2
  CHECK(trace_norm(ones) == doctest::Approx(2.0));
}

TEST_CASE("full objective composes smooth value and trace norm") {
  testsup::Rng rng(45);
  const Dataset ds = testsup::random_dataset(4, 3, 2, rng);
  const Matrix w = testsup::random_matrix(3, 2, rng);
  const HyperParams no3 = plain(0.5, 0.5, 0.0);
  CHECK(full_objective_linear(w, ds, no3) ==
        doctest::Approx(smooth_value_linear(w, ds, no3)));
  HyperParams with3 = plain(0.5, 0.5, 0.25);
  CHECK(full_objective_linear(w, ds, with3) ==
        doctest::Approx(smooth_value_linear(w, ds, with3) +
                        0.25 * trace_norm(w)));
  CHECK(full_objective_linear(Matrix::Zero(3, 2), ds, with3) ==
        doctest::Approx(smooth_value_linear(Matrix::Zero(3, 2), ds, with3)));
}

TEST_CASE("solver output never exceeds the zero-start objective") {
  testsup::Rng rng(46);
  for (int round = 0; round < 3; ++round) {
    const Dataset ds = testsup::random_dataset(6, 3, 2, rng);
    HyperParams hp = plain(0.1, 0.1, 0.1);
    auto [model, trace] = fit_linear(ds, hp);
    const Dataset aug = augment_bias(ds);
    CHECK(full_objective_linear(model.weights, aug, hp) <=
          trace.initial_objective + 1e-12);
  }
}

TEST_CASE("all three smooth terms are nonnegative") {
  testsup::Rng rng(47);
  for (int round = 0; round < 20; ++round) {
    const Dataset ds = testsup::random_dataset(4, 3, 3, rng, false);
    const Matrix w = testsup::random_matrix(3, 3, rng, 3.0);
    CHECK(br_loss_linear(w, ds) >= 0.0);
    CHECK(ranking_loss_term_linear(w, ds) >= 0.0);
    CHECK(smooth_value_linear(w, ds, plain(1, 1)) >= 0.0);
  }
}

TEST_CASE("midpoint convexity spot-check") {
  testsup::Rng rng(48);
  for (int round = 0; round < 30; ++round) {
    const Dataset ds = testsup::random_dataset(4, 3, 2, rng, false);
    const HyperParams hp = plain(rng.uniform(0, 1), rng.uniform(0, 1));
    const Matrix p1 = testsup::random_matrix(3, 2, rng, 2.0);
    const Matrix p2 = testsup::random_matrix(3, 2, rng, 2.0);
    const double mid = smooth_value_linear(0.5 * (p1 + p2), ds, hp);
    const double avg = 0.5 * smooth_value_linear(p1, ds, hp) +
                       0.5 * smooth_value_linear(p2, ds, hp);
    CHECK(mid <= avg + 1e-10);
  }
}

TEST_CASE("hinge difference bound | |a|+ - |b|+ | <= |a - b|") {
  testsup::Rng rng(49);
  for (int round = 0; round < 1000; ++round) {
    const double a = rng.uniform(-10, 10);
    const double b = rng.uniform(-10, 10);
    CHECK(std::abs(std::max(0.0, a) - std::max(0.0, b)) <=
          std::abs(a - b) + 1e-15);
  }
}

TEST_CASE("shape mismatches are rejected") {
  testsup::Rng rng(50);
  const Dataset ds = testsup::random_dataset(3, 4, 2, rng);
  CHECK_THROWS_AS(br_loss_linear(Matrix::Zero(3, 2), ds), ShapeMismatch);
  CHECK_THROWS_AS(smooth_eval_kernel(Matrix::Zero(3, 2), Matrix::Zero(2, 2),
                                     ds, plain()),
                  ShapeMismatch);
}
