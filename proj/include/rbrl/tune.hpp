#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rbrl/data.hpp"
#include "rbrl/metrics.hpp"
#include "rbrl/solver.hpp"

namespace rbrl {

enum class ModelKind { Linear, Kernel };

enum class Metric {
  HammingLoss,
  SubsetAccuracy,
  F1Example,
  RankingLoss,
  Coverage,
  AveragePrecision,
};

Metric parse_metric(const std::string& name);
const char* metric_name(Metric m);
// true when larger values are better (Sa, F1e, Ap).
bool metric_maximizes(Metric m);
double metric_value(const EvalReport& report, Metric m);

// {1e-4, 1e-3, ..., 1e2}
std::vector<double> default_lambda_grid();

struct GridSpec {
  std::vector<double> lambda1_grid = default_lambda_grid();
  std::vector<double> lambda2_grid = default_lambda_grid();
  std::vector<double> lambda3_grid = default_lambda_grid();
  int folds = 5;
  std::uint64_t fold_seed = 0;
  Metric selection_metric = Metric::AveragePrecision;
  // Fits inside cross-validation may use a looser stopping tolerance and a
  // tighter iteration cap than the final fit; 0 keeps the base values.
  double cv_rel_tol = 0.0;
  int cv_max_iters = 0;
  int threads = 1;
};

void validate_grid_spec(const GridSpec& grid);

struct GridCell {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  std::vector<double> fold_scores;
  double mean_score = 0.0;
  bool failed = false;
  std::string failure;
};

struct GridSearchResult {
  HyperParams best;
  Index best_cell = -1;
  std::vector<GridCell> table; // exactly |g1|*|g2|*|g3| rows
};

// Exhaustive search over the lambda grid with k-fold cross-validation on
// ds_train. Cells are scored by the mean validation metric across folds;
// ties prefer the smaller (lambda3, lambda2, lambda1). Cells whose fits throw
// are marked failed and skipped. Cell fits run on grid.threads workers and
// merge deterministically by cell index.
GridSearchResult grid_search(const Dataset& ds_train, const GridSpec& grid,
                             const HyperParams& hp_base, ModelKind kind);

void write_grid_table_csv(const GridSearchResult& result, int folds,
                          std::ostream& out);

} // namespace rbrl
