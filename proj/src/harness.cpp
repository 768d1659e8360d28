#include "rbrl/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

namespace rbrl {

namespace detail {

void run_pool(Index count, int threads,
              const std::function<void(Index)>& task) {
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (Index i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<Index> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const Index i = next.fetch_add(1);
      if (i >= count) break;
      try {
        task(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

TuneMode parse_tune_mode(const std::string& name) {
  if (name == "none") return TuneMode::None;
  if (name == "once") return TuneMode::Once;
  if (name == "per-repeat") return TuneMode::PerRepeat;
  throw ParseError("unknown tune mode '" + name +
                   "' (expected none, once or per-repeat)");
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

} // namespace

RepeatOutcome run_single(const Dataset& train, const Dataset& test,
                         const HyperParams& hp, ModelKind kind,
                         int repeat_index) {
  RepeatOutcome outcome;
  outcome.repeat_index = repeat_index;
  outcome.hp_used = hp;

  const auto t0 = std::chrono::steady_clock::now();
  PredictionScores scores;
  LabelPredictions labels;
  if (kind == ModelKind::Linear) {
    auto [model, trace] = fit_linear(train, hp);
    outcome.train_seconds = seconds_since(t0);
    outcome.iterations = trace.iterations;
    const auto t1 = std::chrono::steady_clock::now();
    std::tie(scores, labels) = predict(model, test.features);
    outcome.test_seconds = seconds_since(t1);
  } else {
    auto [model, trace] = fit_kernel(train, hp);
    outcome.train_seconds = seconds_since(t0);
    outcome.iterations = trace.iterations;
    const auto t1 = std::chrono::steady_clock::now();
    std::tie(scores, labels) = predict(model, test.features);
    outcome.test_seconds = seconds_since(t1);
  }
  outcome.report = evaluate_all(scores.scores, labels.labels, test.labels);
  return outcome;
}

BenchResult run_bench(const Dataset& ds, const BenchConfig& config,
                      const std::function<void(const RepeatOutcome&)>&
                          on_repeat) {
  validate_dataset(ds);
  validate_split_plan(config.plan);
  validate_hyperparams(config.hp);

  BenchResult result;
  result.selected = config.hp;

  GridSpec grid = config.grid;
  grid.threads = std::max(grid.threads, config.threads);

  if (config.tune == TuneMode::Once) {
    const auto [tune_train, tune_test] = split(ds, config.plan, 0);
    (void)tune_test;
    result.selected =
        grid_search(tune_train, grid, config.hp, config.kind).best;
  }

  const int repeats = config.plan.repeats;
  result.repeats.resize(static_cast<std::size_t>(repeats));

  std::mutex flush_mutex;
  std::vector<bool> done(static_cast<std::size_t>(repeats), false);
  int flushed = 0;
  auto flush_ready = [&](const std::function<void(const RepeatOutcome&)>& cb) {
    while (flushed < repeats && done[static_cast<std::size_t>(flushed)]) {
      if (cb) cb(result.repeats[static_cast<std::size_t>(flushed)]);
      ++flushed;
    }
  };

  if (config.tune == TuneMode::PerRepeat) {
    for (int r = 0; r < repeats; ++r) {
      const auto [train, test] = split(ds, config.plan, r);
      GridSpec grid_r = grid;
      grid_r.fold_seed = mix_seed(config.plan.seed,
                                  1000ULL + static_cast<std::uint64_t>(r));
      const HyperParams hp_r =
          grid_search(train, grid_r, config.hp, config.kind).best;
      result.repeats[static_cast<std::size_t>(r)] =
          run_single(train, test, hp_r, config.kind, r);
      done[static_cast<std::size_t>(r)] = true;
      flush_ready(on_repeat);
    }
  } else {
    detail::run_pool(repeats, config.threads, [&](Index r) {
      const auto [train, test] = split(ds, config.plan, static_cast<int>(r));
      RepeatOutcome outcome = run_single(train, test, result.selected,
                                         config.kind, static_cast<int>(r));
      std::scoped_lock lock(flush_mutex);
      result.repeats[static_cast<std::size_t>(r)] = std::move(outcome);
      done[static_cast<std::size_t>(r)] = true;
      flush_ready(on_repeat);
    });
  }

  std::vector<EvalReport> reports;
  reports.reserve(result.repeats.size());
  double train_sum = 0.0, test_sum = 0.0;
  for (const auto& rep : result.repeats) {
    reports.push_back(rep.report);
    train_sum += rep.train_seconds;
    test_sum += rep.test_seconds;
  }
  result.mean = report_mean(reports);
  result.stddev = report_stddev(reports, result.mean);
  result.train_seconds_mean = train_sum / static_cast<double>(repeats);
  result.test_seconds_mean = test_sum / static_cast<double>(repeats);
  return result;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "lambda1") return SweepAxis::Lambda1;
  if (name == "lambda2") return SweepAxis::Lambda2;
  if (name == "lambda3") return SweepAxis::Lambda3;
  if (name == "gamma") return SweepAxis::Gamma;
  throw ParseError("unknown sweep axis '" + name +
                   "' (expected lambda1, lambda2, lambda3 or gamma)");
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Lambda1: return "lambda1";
    case SweepAxis::Lambda2: return "lambda2";
    case SweepAxis::Lambda3: return "lambda3";
    case SweepAxis::Gamma: return "gamma";
  }
  return "?";
}

std::vector<SweepPoint> run_sweep(const Dataset& ds, const BenchConfig& base,
                                  SweepAxis axis,
                                  const std::vector<double>& values) {
  if (values.empty()) {
    throw ValidationError("sweep needs at least one axis value");
  }
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double v : values) {
    BenchConfig config = base;
    config.tune = TuneMode::None;
    switch (axis) {
      case SweepAxis::Lambda1: config.hp.lambda1 = v; break;
      case SweepAxis::Lambda2: config.hp.lambda2 = v; break;
      case SweepAxis::Lambda3: config.hp.lambda3 = v; break;
      case SweepAxis::Gamma:
        if (config.hp.kernel.kind != KernelKind::Rbf) {
          throw ValidationError("gamma sweep requires an rbf kernel");
        }
        config.hp.kernel.gamma = v;
        break;
    }
    const BenchResult res = run_bench(ds, config);
    points.push_back({v, res.mean});
  }
  return points;
}

EvalReport report_mean(const std::vector<EvalReport>& reports) {
  EvalReport mean;
  if (reports.empty()) return mean;
  for (const auto& r : reports) {
    mean.hamming_loss += r.hamming_loss;
    mean.subset_accuracy += r.subset_accuracy;
    mean.f1_example += r.f1_example;
    mean.ranking_loss += r.ranking_loss;
    mean.coverage += r.coverage;
    mean.average_precision += r.average_precision;
    mean.skipped_pair_rows += r.skipped_pair_rows;
    mean.skipped_relevant_rows += r.skipped_relevant_rows;
    mean.evaluated_rows += r.evaluated_rows;
  }
  const double n = static_cast<double>(reports.size());
  mean.hamming_loss /= n;
  mean.subset_accuracy /= n;
  mean.f1_example /= n;
  mean.ranking_loss /= n;
  mean.coverage /= n;
  mean.average_precision /= n;
  return mean;
}

EvalReport report_stddev(const std::vector<EvalReport>& reports,
                         const EvalReport& mean) {
  EvalReport sd;
  if (reports.size() < 2) return sd;
  auto acc = [&](auto get) {
    double s = 0.0;
    for (const auto& r : reports) {
      const double d = get(r) - get(mean);
      s += d * d;
    }
    return std::sqrt(s / static_cast<double>(reports.size() - 1));
  };
  sd.hamming_loss = acc([](const EvalReport& r) { return r.hamming_loss; });
  sd.subset_accuracy =
      acc([](const EvalReport& r) { return r.subset_accuracy; });
  sd.f1_example = acc([](const EvalReport& r) { return r.f1_example; });
  sd.ranking_loss = acc([](const EvalReport& r) { return r.ranking_loss; });
  sd.coverage = acc([](const EvalReport& r) { return r.coverage; });
  sd.average_precision =
      acc([](const EvalReport& r) { return r.average_precision; });
  return sd;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("0");
}

void write_eval_report_json(const EvalReport& report, std::ostream& out) {
  out << "{\n"
      << "  \"hamming_loss\": " << format_double(report.hamming_loss) << ",\n"
      << "  \"subset_accuracy\": " << format_double(report.subset_accuracy)
      << ",\n"
      << "  \"f1_example\": " << format_double(report.f1_example) << ",\n"
      << "  \"ranking_loss\": " << format_double(report.ranking_loss) << ",\n"
      << "  \"coverage\": " << format_double(report.coverage) << ",\n"
      << "  \"average_precision\": "
      << format_double(report.average_precision) << ",\n"
      << "  \"skipped_pair_rows\": " << report.skipped_pair_rows << ",\n"
      << "  \"skipped_relevant_rows\": " << report.skipped_relevant_rows
      << ",\n"
      << "  \"evaluated_rows\": " << report.evaluated_rows << "\n"
      << "}\n";
}

void write_trace_csv(const SolveTrace& trace, std::ostream& out) {
  out << "iter,objective\n";
  out << "0," << format_double(trace.initial_objective) << "\n";
  for (std::size_t t = 0; t < trace.objective_per_iter.size(); ++t) {
    out << (t + 1) << ',' << format_double(trace.objective_per_iter[t])
        << "\n";
  }
}

void write_repeat_csv_header(std::ostream& out) {
  out << "repeat,lambda1,lambda2,lambda3,iterations,hamming_loss,"
         "subset_accuracy,f1_example,ranking_loss,coverage,"
         "average_precision\n";
}

void write_repeat_csv_row(const RepeatOutcome& outcome, std::ostream& out) {
  const EvalReport& r = outcome.report;
  out << outcome.repeat_index << ',' << format_double(outcome.hp_used.lambda1)
      << ',' << format_double(outcome.hp_used.lambda2) << ','
      << format_double(outcome.hp_used.lambda3) << ',' << outcome.iterations
      << ',' << format_double(r.hamming_loss) << ','
      << format_double(r.subset_accuracy) << ','
      << format_double(r.f1_example) << ',' << format_double(r.ranking_loss)
      << ',' << format_double(r.coverage) << ','
      << format_double(r.average_precision) << "\n";
}

void write_bench_summary_csv(const std::string& row_label,
                             const BenchResult& result, std::ostream& out,
                             bool header) {
  if (header) {
    out << "label,repeats,lambda1,lambda2,lambda3,"
           "hamming_loss_mean,hamming_loss_std,"
           "subset_accuracy_mean,subset_accuracy_std,"
           "f1_example_mean,f1_example_std,"
           "ranking_loss_mean,ranking_loss_std,"
           "coverage_mean,coverage_std,"
           "average_precision_mean,average_precision_std\n";
  }
  const EvalReport& m = result.mean;
  const EvalReport& s = result.stddev;
  out << row_label << ',' << result.repeats.size() << ','
      << format_double(result.selected.lambda1) << ','
      << format_double(result.selected.lambda2) << ','
      << format_double(result.selected.lambda3) << ','
      << format_double(m.hamming_loss) << ',' << format_double(s.hamming_loss)
      << ',' << format_double(m.subset_accuracy) << ','
      << format_double(s.subset_accuracy) << ','
      << format_double(m.f1_example) << ',' << format_double(s.f1_example)
      << ',' << format_double(m.ranking_loss) << ','
      << format_double(s.ranking_loss) << ',' << format_double(m.coverage)
      << ',' << format_double(s.coverage) << ','
      << format_double(m.average_precision) << ','
      << format_double(s.average_precision) << "\n";
}

void write_sweep_csv(SweepAxis axis, const std::vector<SweepPoint>& points,
                     std::ostream& out) {
  out << axis_name(axis)
      << ",hamming_loss,subset_accuracy,f1_example,ranking_loss,coverage,"
         "average_precision\n";
  for (const auto& p : points) {
    const EvalReport& r = p.report;
    out << format_double(p.axis_value) << ','
        << format_double(r.hamming_loss) << ','
        << format_double(r.subset_accuracy) << ','
        << format_double(r.f1_example) << ','
        << format_double(r.ranking_loss) << ',' << format_double(r.coverage)
        << ',' << format_double(r.average_precision) << "\n";
  }
}

void write_timing_csv(const BenchResult& result, std::ostream& out) {
  out << "repeat,train_seconds,test_seconds\n";
  for (const auto& rep : result.repeats) {
    out << rep.repeat_index << ',' << format_double(rep.train_seconds) << ','
        << format_double(rep.test_seconds) << "\n";
  }
  out << "mean," << format_double(result.train_seconds_mean) << ','
      << format_double(result.test_seconds_mean) << "\n";
}

} // namespace rbrl
