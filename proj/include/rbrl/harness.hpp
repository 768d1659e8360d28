#pragma once

#include <functional>
#include <iosfwd>

#include "rbrl/model_io.hpp"
#include "rbrl/tune.hpp"

namespace rbrl {

enum class TuneMode { None, Once, PerRepeat };

TuneMode parse_tune_mode(const std::string& name);

struct BenchConfig {
  ModelKind kind = ModelKind::Linear;
  HyperParams hp; // lambdas used as-is when tune == None
  SplitPlan plan;
  TuneMode tune = TuneMode::None;
  GridSpec grid;
  int threads = 1;
};

struct RepeatOutcome {
  int repeat_index = 0;
  HyperParams hp_used;
  EvalReport report;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
  int iterations = 0;
};

struct BenchResult {
  std::vector<RepeatOutcome> repeats;
  EvalReport mean;
  EvalReport stddev; // sample std over repeats (0 for a single repeat)
  double train_seconds_mean = 0.0;
  double test_seconds_mean = 0.0;
  HyperParams selected; // tuned params (tune == Once) or the base ones
};

// Fit + score one train/test pair with the given params.
RepeatOutcome run_single(const Dataset& train, const Dataset& test,
                         const HyperParams& hp, ModelKind kind,
                         int repeat_index);

// The repeated-split protocol: for r in 0..repeats-1, split, optionally tune,
// fit, evaluate. `on_repeat`, when set, is invoked in repeat order as results
// complete so long runs can flush partial output.
BenchResult run_bench(const Dataset& ds, const BenchConfig& config,
                      const std::function<void(const RepeatOutcome&)>&
                          on_repeat = {});

enum class SweepAxis { Lambda1, Lambda2, Lambda3, Gamma };

SweepAxis parse_axis(const std::string& name);
const char* axis_name(SweepAxis axis);

struct SweepPoint {
  double axis_value = 0.0;
  EvalReport report; // mean over the plan's repeats
};

// Holds everything else fixed and varies one hyperparameter axis.
std::vector<SweepPoint> run_sweep(const Dataset& ds, const BenchConfig& base,
                                  SweepAxis axis,
                                  const std::vector<double>& values);

// --- aggregation and serialization helpers ---

EvalReport report_mean(const std::vector<EvalReport>& reports);
EvalReport report_stddev(const std::vector<EvalReport>& reports,
                         const EvalReport& mean);

// Shortest round-trip double formatting shared by every writer so identical
// runs serialize byte-identically.
std::string format_double(double v);

void write_eval_report_json(const EvalReport& report, std::ostream& out);
void write_trace_csv(const SolveTrace& trace, std::ostream& out);
void write_repeat_csv_header(std::ostream& out);
void write_repeat_csv_row(const RepeatOutcome& outcome, std::ostream& out);
void write_bench_summary_csv(const std::string& row_label,
                             const BenchResult& result, std::ostream& out,
                             bool header = true);
void write_sweep_csv(SweepAxis axis, const std::vector<SweepPoint>& points,
                     std::ostream& out);
void write_timing_csv(const BenchResult& result, std::ostream& out);

namespace detail {
// Runs tasks 0..count-1 on up to `threads` workers. Tasks own their error
// handling when partial failure is acceptable; an escaping exception stops
// the pool and rethrows.
void run_pool(Index count, int threads,
              const std::function<void(Index)>& task);
} // namespace detail

} // namespace rbrl
