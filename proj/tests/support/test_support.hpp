#pragma once

// Shared test utilities: deterministic generators, the finite-difference
// gradient oracle, an independent naive implementation of the six metrics,
// and a synthetic multi-label generator with a planted low-rank weight
// structure. Everything here is test-only and independent of the library
// code paths it checks.

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbrl/data.hpp"
#include "rbrl/types.hpp"

namespace testsup {

using rbrl::Dataset;
using rbrl::Index;
using rbrl::Matrix;
using rbrl::Vector;

struct Rng {
  rbrl::SplitMix64 sm;
  explicit Rng(std::uint64_t seed) : sm(seed) {}

  double uniform01() {
    return static_cast<double>(sm.next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }
  double normal() {
    // Box-Muller; one value per call keeps the stream simple.
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793 * u2);
  }
  Index uniform_index(Index lo, Index hi) { // inclusive bounds
    return lo + static_cast<Index>(
                    sm.below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

inline Matrix random_matrix(Index rows, Index cols, Rng& rng,
                            double scale = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * rng.uniform(-1.0, 1.0);
  }
  return m;
}

inline Matrix random_sign_matrix(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    }
  }
  return m;
}

// Random dataset; with mixed_rows every row keeps at least one relevant and
// one irrelevant label so the ranking term touches all of them.
inline Dataset random_dataset(Index n, Index m, Index l, Rng& rng,
                              bool mixed_rows = true) {
  Matrix y = random_sign_matrix(n, l, rng);
  if (mixed_rows && l >= 2) {
    for (Index i = 0; i < n; ++i) {
      const Index a = rng.uniform_index(0, l - 1);
      Index b = rng.uniform_index(0, l - 2);
      if (b >= a) ++b;
      y(i, a) = 1.0;
      y(i, b) = -1.0;
    }
  }
  return Dataset::from_xy(random_matrix(n, m, rng), std::move(y));
}

// Linearly separable data: labels follow sign(x . w) with alternating column
// signs, so every row mixes relevant and irrelevant labels and a
// low-regularization fit can reach zero training error.
inline Dataset separable_dataset(Index n, Index m, Index l, Rng& rng,
                                 double margin = 0.3) {
  Vector w(m);
  for (Index j = 0; j < m; ++j) w(j) = rng.normal();
  Matrix x(n, m);
  Matrix y(n, l);
  for (Index i = 0; i < n; ++i) {
    double score = 0.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      for (Index j = 0; j < m; ++j) x(i, j) = rng.uniform(-1.0, 1.0);
      score = x.row(i) * w;
      if (std::abs(score) >= margin) break;
    }
    for (Index j = 0; j < l; ++j) {
      const double flip = j % 2 == 0 ? 1.0 : -1.0;
      y(i, j) = flip * score > 0 ? 1.0 : -1.0;
    }
  }
  return Dataset::from_xy(std::move(x), std::move(y));
}

// Central finite differences of a scalar function of a matrix.
template <class F>
Matrix fd_gradient(F&& f, Matrix at, double step = 1e-6) {
  Matrix g(at.rows(), at.cols());
  for (Index i = 0; i < at.rows(); ++i) {
    for (Index j = 0; j < at.cols(); ++j) {
      const double saved = at(i, j);
      at(i, j) = saved + step;
      const double fp = f(at);
      at(i, j) = saved - step;
      const double fm = f(at);
      at(i, j) = saved;
      g(i, j) = (fp - fm) / (2.0 * step);
    }
  }
  return g;
}

// ---- naive metric oracle ----
// Rank of label j: 1 + (#labels scoring strictly higher) + (#lower-index
// labels scoring equal). Derived by counting rather than sorting.
inline std::vector<Index> oracle_ranks(const std::vector<double>& f) {
  const Index l = static_cast<Index>(f.size());
  std::vector<Index> ranks(f.size());
  for (Index j = 0; j < l; ++j) {
    Index r = 1;
    for (Index k = 0; k < l; ++k) {
      if (f[static_cast<std::size_t>(k)] > f[static_cast<std::size_t>(j)]) {
        ++r;
      } else if (k < j && f[static_cast<std::size_t>(k)] ==
                              f[static_cast<std::size_t>(j)]) {
        ++r;
      }
    }
    ranks[static_cast<std::size_t>(j)] = r;
  }
  return ranks;
}

struct OracleMetrics {
  double hal = 0, sa = 0, f1e = 0, ral = 0, cov = 0, ap = 0;
};

inline OracleMetrics oracle_metrics(const Matrix& scores,
                                    const Matrix& predicted,
                                    const Matrix& truth) {
  const Index n = truth.rows(), l = truth.cols();
  OracleMetrics out;
  double mism = 0, exact = 0, f1 = 0;
  double ral_sum = 0, cov_sum = 0, ap_sum = 0;
  Index ral_rows = 0, rel_rows = 0;
  for (Index i = 0; i < n; ++i) {
    std::vector<double> f(static_cast<std::size_t>(l));
    std::vector<bool> y(static_cast<std::size_t>(l)),
        h(static_cast<std::size_t>(l));
    for (Index j = 0; j < l; ++j) {
      f[static_cast<std::size_t>(j)] = scores(i, j);
      y[static_cast<std::size_t>(j)] = truth(i, j) > 0;
      h[static_cast<std::size_t>(j)] = predicted(i, j) > 0;
    }
    Index npos = 0, hpos = 0, inter = 0;
    bool row_exact = true;
    for (Index j = 0; j < l; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (h[sj] != y[sj]) {
        mism += 1;
        row_exact = false;
      }
      npos += y[sj];
      hpos += h[sj];
      inter += y[sj] && h[sj];
    }
    exact += row_exact;
    f1 += (npos + hpos == 0) ? 1.0 : 2.0 * inter / double(npos + hpos);

    if (npos > 0 && npos < l) {
      Index viol = 0;
      for (Index p = 0; p < l; ++p) {
        if (!y[static_cast<std::size_t>(p)]) continue;
        for (Index q = 0; q < l; ++q) {
          if (y[static_cast<std::size_t>(q)]) continue;
          if (f[static_cast<std::size_t>(p)] <= f[static_cast<std::size_t>(q)])
            ++viol;
        }
      }
      ral_sum += double(viol) / (double(npos) * double(l - npos));
      ++ral_rows;
    }
    if (npos > 0) {
      const auto ranks = oracle_ranks(f);
      Index maxr = 0;
      double ap_row = 0;
      for (Index j = 0; j < l; ++j) {
        if (!y[static_cast<std::size_t>(j)]) continue;
        maxr = std::max(maxr, ranks[static_cast<std::size_t>(j)]);
        Index ahead = 0;
        for (Index k = 0; k < l; ++k) {
          if (y[static_cast<std::size_t>(k)] &&
              ranks[static_cast<std::size_t>(k)] <=
                  ranks[static_cast<std::size_t>(j)])
            ++ahead;
        }
        ap_row += double(ahead) / double(ranks[static_cast<std::size_t>(j)]);
      }
      cov_sum += double(maxr);
      ap_sum += ap_row / double(npos);
      ++rel_rows;
    }
  }
  out.hal = mism / double(n * l);
  out.sa = exact / double(n);
  out.f1e = f1 / double(n);
  out.ral = ral_rows ? ral_sum / double(ral_rows) : 0.0;
  out.cov = rel_rows ? (cov_sum / double(rel_rows) - 1.0) / double(l) : 0.0;
  out.ap = rel_rows ? ap_sum / double(rel_rows) : 0.0;
  return out;
}

// ---- synthetic benchmark-shaped data ----
// X is either dense gaussian or sparse 0/1 (density < 1); scores come from a
// planted rank-r weight matrix plus noise, and each label is thresholded at
// its own quantile so the average number of relevant labels per row lands
// near `cardinality`.
inline Dataset synthetic_lowrank(Index n, Index m, Index l, Index rank,
                                 double cardinality, double noise,
                                 std::uint64_t seed,
                                 double feature_density = 1.0) {
  Rng rng(seed);
  Matrix x;
  if (feature_density >= 1.0) {
    x = Matrix(n, m);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < m; ++j) x(i, j) = 0.5 * rng.normal();
    }
  } else {
    x = Matrix::Zero(n, m);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < m; ++j) {
        if (rng.uniform01() < feature_density) x(i, j) = 1.0;
      }
    }
  }
  Matrix u(m, rank), v(rank, l);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < rank; ++j) u(i, j) = rng.normal();
  }
  for (Index i = 0; i < rank; ++i) {
    for (Index j = 0; j < l; ++j) v(i, j) = rng.normal();
  }
  Matrix scores = x * u * v / std::sqrt(static_cast<double>(m * rank));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < l; ++j) scores(i, j) += noise * rng.normal();
  }
  // Per-label threshold at the (1 - cardinality/l) quantile.
  Matrix y(n, l);
  const double q = 1.0 - cardinality / static_cast<double>(l);
  for (Index j = 0; j < l; ++j) {
    std::vector<double> col(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = scores(i, j);
    std::sort(col.begin(), col.end());
    const auto cut = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n - 1),
                         std::max(0.0, q * static_cast<double>(n))));
    const double threshold = col[cut];
    for (Index i = 0; i < n; ++i) {
      y(i, j) = scores(i, j) > threshold ? 1.0 : -1.0;
    }
  }
  return Dataset::from_xy(std::move(x), std::move(y));
}

} // namespace testsup
