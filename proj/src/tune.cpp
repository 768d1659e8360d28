#include "rbrl/tune.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rbrl/harness.hpp"

namespace rbrl {

Metric parse_metric(const std::string& name) {
  if (name == "hamming-loss" || name == "hal") return Metric::HammingLoss;
  if (name == "subset-accuracy" || name == "sa") return Metric::SubsetAccuracy;
  if (name == "f1-example" || name == "f1e") return Metric::F1Example;
  if (name == "ranking-loss" || name == "ral") return Metric::RankingLoss;
  if (name == "coverage" || name == "cov") return Metric::Coverage;
  if (name == "average-precision" || name == "ap") {
    return Metric::AveragePrecision;
  }
  throw ParseError("unknown metric '" + name + "'");
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::HammingLoss: return "hamming-loss";
    case Metric::SubsetAccuracy: return "subset-accuracy";
    case Metric::F1Example: return "f1-example";
    case Metric::RankingLoss: return "ranking-loss";
    case Metric::Coverage: return "coverage";
    case Metric::AveragePrecision: return "average-precision";
  }
  return "?";
}

bool metric_maximizes(Metric m) {
  switch (m) {
    case Metric::SubsetAccuracy:
    case Metric::F1Example:
    case Metric::AveragePrecision:
      return true;
    default:
      return false;
  }
}

double metric_value(const EvalReport& report, Metric m) {
  switch (m) {
    case Metric::HammingLoss: return report.hamming_loss;
    case Metric::SubsetAccuracy: return report.subset_accuracy;
    case Metric::F1Example: return report.f1_example;
    case Metric::RankingLoss: return report.ranking_loss;
    case Metric::Coverage: return report.coverage;
    case Metric::AveragePrecision: return report.average_precision;
  }
  return 0.0;
}

namespace {

// Only the selection metric is needed per cell; computing the full report
// would make cells fail on unrelated undefined metrics.
double eval_selection_metric(const Matrix& scores, const Matrix& labels,
                             const Matrix& truth, Metric m) {
  switch (m) {
    case Metric::HammingLoss: return hamming_loss(labels, truth);
    case Metric::SubsetAccuracy: return subset_accuracy(labels, truth);
    case Metric::F1Example: return f1_example(labels, truth);
    case Metric::RankingLoss: return ranking_loss(scores, truth);
    case Metric::Coverage: return coverage(scores, truth);
    case Metric::AveragePrecision: return average_precision(scores, truth);
  }
  throw ValidationError("unhandled selection metric");
}

} // namespace

std::vector<double> default_lambda_grid() {
  return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2};
}

void validate_grid_spec(const GridSpec& grid) {
  if (grid.lambda1_grid.empty() || grid.lambda2_grid.empty() ||
      grid.lambda3_grid.empty()) {
    throw ValidationError("hyperparameter grids must be nonempty");
  }
  for (const auto* g :
       {&grid.lambda1_grid, &grid.lambda2_grid, &grid.lambda3_grid}) {
    for (double v : *g) {
      if (v < 0.0 || !std::isfinite(v)) {
        throw ValidationError("grid values must be nonnegative and finite");
      }
    }
  }
  if (grid.folds < 2) {
    throw ValidationError("cross-validation needs at least 2 folds");
  }
}

GridSearchResult grid_search(const Dataset& ds_train, const GridSpec& grid,
                             const HyperParams& hp_base, ModelKind kind) {
  validate_grid_spec(grid);
  validate_dataset(ds_train);

  auto g1 = grid.lambda1_grid;
  auto g2 = grid.lambda2_grid;
  auto g3 = grid.lambda3_grid;
  std::sort(g1.begin(), g1.end());
  std::sort(g2.begin(), g2.end());
  std::sort(g3.begin(), g3.end());

  const auto folds = kfold(ds_train, grid.folds, grid.fold_seed);

  GridSearchResult result;
  result.table.resize(g1.size() * g2.size() * g3.size());
  // lambda3-major enumeration: index order doubles as the tie-break order
  // (smaller lambda3, then lambda2, then lambda1 first).
  Index c = 0;
  for (double l3 : g3) {
    for (double l2 : g2) {
      for (double l1 : g1) {
        auto& cell = result.table[static_cast<std::size_t>(c++)];
        cell.lambda1 = l1;
        cell.lambda2 = l2;
        cell.lambda3 = l3;
      }
    }
  }

  HyperParams hp_cv = hp_base;
  if (grid.cv_rel_tol > 0.0) {
    hp_cv.rel_tol = std::max(hp_cv.rel_tol, grid.cv_rel_tol);
  }
  if (grid.cv_max_iters > 0) {
    hp_cv.max_iters = std::min(hp_cv.max_iters, grid.cv_max_iters);
  }

  detail::run_pool(
      static_cast<Index>(result.table.size()), grid.threads, [&](Index idx) {
        auto& cell = result.table[static_cast<std::size_t>(idx)];
        HyperParams hp = hp_cv;
        hp.lambda1 = cell.lambda1;
        hp.lambda2 = cell.lambda2;
        hp.lambda3 = cell.lambda3;
        try {
          double sum = 0.0;
          for (const auto& [train, val] : folds) {
            double score = 0.0;
            if (kind == ModelKind::Linear) {
              auto [model, trace] = fit_linear(train, hp);
              auto [scores, labels] = predict(model, val.features);
              score = eval_selection_metric(scores.scores, labels.labels,
                                            val.labels,
                                            grid.selection_metric);
            } else {
              auto [model, trace] = fit_kernel(train, hp);
              auto [scores, labels] = predict(model, val.features);
              score = eval_selection_metric(scores.scores, labels.labels,
                                            val.labels,
                                            grid.selection_metric);
            }
            cell.fold_scores.push_back(score);
            sum += score;
          }
          cell.mean_score = sum / static_cast<double>(folds.size());
        } catch (const Error& e) {
          cell.failed = true;
          cell.failure = e.what();
        }
      });

  const bool maximize = metric_maximizes(grid.selection_metric);
  for (std::size_t i = 0; i < result.table.size(); ++i) {
    const auto& cell = result.table[i];
    if (cell.failed) continue;
    if (result.best_cell < 0) {
      result.best_cell = static_cast<Index>(i);
      continue;
    }
    const double best =
        result.table[static_cast<std::size_t>(result.best_cell)].mean_score;
    if (maximize ? cell.mean_score > best : cell.mean_score < best) {
      result.best_cell = static_cast<Index>(i);
    }
  }
  if (result.best_cell < 0) {
    throw NumericError("grid search: every cell failed (" +
                       result.table.front().failure + ")");
  }
  const auto& best = result.table[static_cast<std::size_t>(result.best_cell)];
  result.best = hp_base;
  result.best.lambda1 = best.lambda1;
  result.best.lambda2 = best.lambda2;
  result.best.lambda3 = best.lambda3;
  return result;
}

void write_grid_table_csv(const GridSearchResult& result, int folds,
                          std::ostream& out) {
  out << "lambda1,lambda2,lambda3";
  for (int f = 0; f < folds; ++f) out << ",fold" << f;
  out << ",mean,failed\n";
  for (const auto& cell : result.table) {
    out << format_double(cell.lambda1) << ',' << format_double(cell.lambda2)
        << ',' << format_double(cell.lambda3);
    for (int f = 0; f < folds; ++f) {
      out << ',';
      if (static_cast<std::size_t>(f) < cell.fold_scores.size()) {
        out << format_double(
            cell.fold_scores[static_cast<std::size_t>(f)]);
      }
    }
    out << ',' << (cell.failed ? "" : format_double(cell.mean_score)) << ','
        << (cell.failed ? 1 : 0) << "\n";
  }
}

} // namespace rbrl
