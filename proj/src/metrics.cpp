#include "rbrl/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace rbrl {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(what) + ": " + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  }
}

} // namespace

std::vector<Index> score_ranks(const Vector& score_row) {
  const Index l = score_row.size();
  std::vector<Index> order(static_cast<std::size_t>(l));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return score_row(a) > score_row(b); // stable: ties keep lower index first
  });
  std::vector<Index> ranks(static_cast<std::size_t>(l));
  for (Index pos = 0; pos < l; ++pos) {
    ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
        pos + 1;
  }
  return ranks;
}

double hamming_loss(const Matrix& predicted, const Matrix& truth) {
  check_same_shape(predicted, truth, "hamming_loss");
  Index mismatches = 0;
  for (Index i = 0; i < truth.rows(); ++i) {
    for (Index j = 0; j < truth.cols(); ++j) {
      if ((predicted(i, j) > 0) != (truth(i, j) > 0)) ++mismatches;
    }
  }
  return static_cast<double>(mismatches) /
         static_cast<double>(truth.rows() * truth.cols());
}

double subset_accuracy(const Matrix& predicted, const Matrix& truth) {
  check_same_shape(predicted, truth, "subset_accuracy");
  Index exact = 0;
  for (Index i = 0; i < truth.rows(); ++i) {
    bool same = true;
    for (Index j = 0; j < truth.cols() && same; ++j) {
      same = (predicted(i, j) > 0) == (truth(i, j) > 0);
    }
    if (same) ++exact;
  }
  return static_cast<double>(exact) / static_cast<double>(truth.rows());
}

double f1_example(const Matrix& predicted, const Matrix& truth) {
  check_same_shape(predicted, truth, "f1_example");
  double total = 0.0;
  for (Index i = 0; i < truth.rows(); ++i) {
    Index pred_pos = 0, true_pos = 0, both = 0;
    for (Index j = 0; j < truth.cols(); ++j) {
      const bool p = predicted(i, j) > 0;
      const bool y = truth(i, j) > 0;
      pred_pos += p;
      true_pos += y;
      both += p && y;
    }
    // No true and no predicted positives: vacuously perfect row.
    total += (pred_pos + true_pos == 0)
                 ? 1.0
                 : 2.0 * static_cast<double>(both) /
                       static_cast<double>(pred_pos + true_pos);
  }
  return total / static_cast<double>(truth.rows());
}

double ranking_loss(const Matrix& scores, const Matrix& truth) {
  check_same_shape(scores, truth, "ranking_loss");
  double total = 0.0;
  Index usable = 0;
  for (Index i = 0; i < truth.rows(); ++i) {
    Index violations = 0, rel = 0, irr = 0;
    for (Index p = 0; p < truth.cols(); ++p) {
      if (truth(i, p) <= 0) continue;
      ++rel;
      for (Index q = 0; q < truth.cols(); ++q) {
        if (truth(i, q) > 0) continue;
        // <= : a tie counts as a violation
        if (scores(i, p) <= scores(i, q)) ++violations;
      }
    }
    for (Index q = 0; q < truth.cols(); ++q) irr += truth(i, q) <= 0;
    if (rel == 0 || irr == 0) continue;
    ++usable;
    total += static_cast<double>(violations) /
             (static_cast<double>(rel) * static_cast<double>(irr));
  }
  if (usable == 0) {
    throw NoUsableRows("ranking_loss: no row has both a relevant and an "
                       "irrelevant label");
  }
  return total / static_cast<double>(usable);
}

double coverage(const Matrix& scores, const Matrix& truth) {
  check_same_shape(scores, truth, "coverage");
  double total_max_rank = 0.0;
  Index usable = 0;
  for (Index i = 0; i < truth.rows(); ++i) {
    const std::vector<Index> ranks = score_ranks(scores.row(i).transpose());
    Index max_rank = 0;
    for (Index j = 0; j < truth.cols(); ++j) {
      if (truth(i, j) > 0) {
        max_rank = std::max(max_rank, ranks[static_cast<std::size_t>(j)]);
      }
    }
    if (max_rank == 0) continue; // no relevant label on this row
    ++usable;
    total_max_rank += static_cast<double>(max_rank);
  }
  if (usable == 0) {
    throw NoUsableRows("coverage: no row has a relevant label");
  }
  const double mean_max_rank = total_max_rank / static_cast<double>(usable);
  return (mean_max_rank - 1.0) / static_cast<double>(truth.cols());
}

double average_precision(const Matrix& scores, const Matrix& truth) {
  check_same_shape(scores, truth, "average_precision");
  double total = 0.0;
  Index usable = 0;
  for (Index i = 0; i < truth.rows(); ++i) {
    const std::vector<Index> ranks = score_ranks(scores.row(i).transpose());
    std::vector<Index> rel;
    for (Index j = 0; j < truth.cols(); ++j) {
      if (truth(i, j) > 0) rel.push_back(j);
    }
    if (rel.empty()) continue;
    ++usable;
    double row = 0.0;
    for (Index j : rel) {
      const Index rank_j = ranks[static_cast<std::size_t>(j)];
      Index ahead = 0;
      for (Index k : rel) {
        if (ranks[static_cast<std::size_t>(k)] <= rank_j) ++ahead;
      }
      row += static_cast<double>(ahead) / static_cast<double>(rank_j);
    }
    total += row / static_cast<double>(rel.size());
  }
  if (usable == 0) {
    throw NoUsableRows("average_precision: no row has a relevant label");
  }
  return total / static_cast<double>(usable);
}

EvalReport evaluate_all(const Matrix& scores, const Matrix& predicted,
                        const Matrix& truth) {
  check_same_shape(scores, truth, "evaluate_all");
  check_same_shape(predicted, truth, "evaluate_all");
  if (truth.rows() == 0 || truth.cols() == 0) {
    throw EmptyDataset("evaluate_all: nothing to evaluate");
  }
  EvalReport report;
  report.evaluated_rows = truth.rows();
  report.hamming_loss = hamming_loss(predicted, truth);
  report.subset_accuracy = subset_accuracy(predicted, truth);
  report.f1_example = f1_example(predicted, truth);
  report.ranking_loss = ranking_loss(scores, truth);
  report.coverage = coverage(scores, truth);
  report.average_precision = average_precision(scores, truth);
  for (Index i = 0; i < truth.rows(); ++i) {
    Index rel = 0;
    for (Index j = 0; j < truth.cols(); ++j) rel += truth(i, j) > 0;
    if (rel == 0) {
      ++report.skipped_relevant_rows;
      ++report.skipped_pair_rows;
    } else if (rel == truth.cols()) {
      ++report.skipped_pair_rows;
    }
  }
  return report;
}

} // namespace rbrl
