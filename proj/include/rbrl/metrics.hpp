#pragma once

#include "rbrl/types.hpp"

namespace rbrl {

// The six example-based evaluation metrics. Ranking-based metrics exclude
// rows they are undefined for and report how many were skipped:
//   ranking_loss  needs both a relevant and an irrelevant label,
//   coverage / average_precision need at least one relevant label.
// Ranking ties count as violations in ranking_loss (the <= in its pair set);
// rank positions break ties by ascending label index.
struct EvalReport {
  double hamming_loss = 0.0;
  double subset_accuracy = 0.0;
  double f1_example = 0.0;
  double ranking_loss = 0.0;
  double coverage = 0.0;
  double average_precision = 0.0;
  Index skipped_pair_rows = 0;     // rows excluded from ranking_loss
  Index skipped_relevant_rows = 0; // rows excluded from coverage / AP
  Index evaluated_rows = 0;
};

double hamming_loss(const Matrix& predicted, const Matrix& truth);
double subset_accuracy(const Matrix& predicted, const Matrix& truth);
double f1_example(const Matrix& predicted, const Matrix& truth);
double ranking_loss(const Matrix& scores, const Matrix& truth);
double coverage(const Matrix& scores, const Matrix& truth);
double average_precision(const Matrix& scores, const Matrix& truth);

// 1-based rank of each label for one score row; rank 1 is the highest score,
// ties ranked by lower label index first.
std::vector<Index> score_ranks(const Vector& score_row);

EvalReport evaluate_all(const Matrix& scores, const Matrix& predicted,
                        const Matrix& truth);

} // namespace rbrl
