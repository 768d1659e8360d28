#include "rbrl/types.hpp"

#include <cmath>
#include <sstream>

namespace rbrl {

namespace {

std::string list_rows(const std::vector<Index>& rows) {
  std::ostringstream os;
  const std::size_t shown = std::min<std::size_t>(rows.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) os << ",";
    os << rows[i];
  }
  if (rows.size() > shown) os << ",... (" << rows.size() << " total)";
  return os.str();
}

} // namespace

Index Dataset::ranking_usable_rows() const {
  Index usable = 0;
  for (Index i = 0; i < rows(); ++i) {
    if (!relevant[i].empty() && !irrelevant[i].empty()) ++usable;
  }
  return usable;
}

Dataset Dataset::from_xy(Matrix x, Matrix y) {
  Dataset ds;
  ds.features = std::move(x);
  ds.labels = std::move(y);
  const Index n = ds.labels.rows();
  const Index l = ds.labels.cols();
  ds.relevant.assign(static_cast<std::size_t>(n), {});
  ds.irrelevant.assign(static_cast<std::size_t>(n), {});
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < l; ++j) {
      if (ds.labels(i, j) > 0) {
        ds.relevant[i].push_back(j);
      } else {
        ds.irrelevant[i].push_back(j);
      }
    }
  }
  return ds;
}

void validate_dataset(const Dataset& ds) {
  if (ds.rows() == 0 || ds.feature_count() == 0 || ds.label_count() == 0) {
    throw EmptyDataset("dataset is empty: n=" + std::to_string(ds.rows()) +
                       " m=" + std::to_string(ds.feature_count()) +
                       " l=" + std::to_string(ds.label_count()));
  }
  if (ds.labels.rows() != ds.features.rows()) {
    throw ShapeMismatch("feature rows " + std::to_string(ds.features.rows()) +
                        " != label rows " + std::to_string(ds.labels.rows()));
  }

  std::vector<Index> bad_label_rows;
  for (Index i = 0; i < ds.rows(); ++i) {
    for (Index j = 0; j < ds.label_count(); ++j) {
      const double y = ds.labels(i, j);
      if (y != 1.0 && y != -1.0) {
        bad_label_rows.push_back(i);
        break;
      }
    }
  }
  if (!bad_label_rows.empty()) {
    throw BadLabelValue("label entries outside {-1,+1} in rows " +
                        list_rows(bad_label_rows));
  }

  std::vector<Index> nonfinite_rows;
  for (Index i = 0; i < ds.rows(); ++i) {
    for (Index j = 0; j < ds.feature_count(); ++j) {
      if (!std::isfinite(ds.features(i, j))) {
        nonfinite_rows.push_back(i);
        break;
      }
    }
  }
  if (!nonfinite_rows.empty()) {
    throw NonFiniteFeature("non-finite feature values in rows " +
                           list_rows(nonfinite_rows));
  }

  // Index sets must partition {0..l-1} per row.
  if (ds.relevant.size() != static_cast<std::size_t>(ds.rows()) ||
      ds.irrelevant.size() != static_cast<std::size_t>(ds.rows())) {
    throw ShapeMismatch("index sets not built for every row");
  }
  for (Index i = 0; i < ds.rows(); ++i) {
    if (static_cast<Index>(ds.relevant[i].size() + ds.irrelevant[i].size()) !=
        ds.label_count()) {
      throw ShapeMismatch("index sets of row " + std::to_string(i) +
                          " do not partition the label set");
    }
  }
}

Dataset augment_bias(const Dataset& ds) {
  Matrix x(ds.features.rows(), ds.features.cols() + 1);
  x.leftCols(ds.features.cols()) = ds.features;
  x.col(ds.features.cols()).setOnes();
  return Dataset::from_xy(std::move(x), ds.labels);
}

void validate_kernel_spec(const KernelSpec& spec) {
  if (spec.kind == KernelKind::Rbf &&
      !(spec.gamma > 0.0 && std::isfinite(spec.gamma))) {
    throw ValidationError("rbf gamma must be positive and finite, got " +
                          std::to_string(spec.gamma));
  }
}

void validate_hyperparams(const HyperParams& hp) {
  if (hp.lambda1 < 0 || hp.lambda2 < 0 || hp.lambda3 < 0) {
    throw ValidationError("lambda tradeoffs must be nonnegative");
  }
  if (!(hp.rel_tol > 0)) {
    throw ValidationError("rel_tol must be positive");
  }
  if (hp.max_iters <= 0) {
    throw ValidationError("max_iters must be positive");
  }
  validate_kernel_spec(hp.kernel);
}

LabelPredictions threshold_scores(const PredictionScores& scores) {
  LabelPredictions out;
  out.labels = scores.scores.unaryExpr(
      [](double v) { return v > 0.0 ? 1.0 : -1.0; });
  return out;
}

} // namespace rbrl
