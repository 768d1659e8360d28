// Command line front end: train, predict, evaluate, tune, bench and sweep
// subcommands over the rbrl library. Exit codes: 0 success, 2 parse/load
// failure, 3 validation failure, 4 numeric failure, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "rbrl/harness.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct DataArgs {
  std::string path;
  std::string format = "dense-csv";
};

struct ModelArgs {
  std::string kind = "linear";
  std::string kernel = "rbf"; // applies to kind == kernel only
  bool kernel_set = false;
  double gamma = 0.0; // 0: resolve to 1/m for rbf
};

struct FitArgs {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double rel_tol = 1e-6;
  int max_iters = 0; // 0: 1000 linear, 3000 kernel
};

void add_data_args(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--data", args.path, "Dataset file")->required();
  cmd->add_option("--format", args.format,
                  "Dataset format: dense-csv or sparse-mll");
}

void add_model_args(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--model-kind", args.kind,
                  "Model kind: linear or kernel");
  cmd->add_option("--kernel", args.kernel, "Kernel for kind=kernel: linear or rbf")
      ->each([&args](const std::string&) { args.kernel_set = true; });
  cmd->add_option("--gamma", args.gamma,
                  "RBF bandwidth; 0 selects 1/m from the data");
}

void add_fit_args(CLI::App* cmd, FitArgs& args) {
  cmd->add_option("--lambda1", args.lambda1, "Frobenius tradeoff");
  cmd->add_option("--lambda2", args.lambda2, "Ranking tradeoff");
  cmd->add_option("--lambda3", args.lambda3, "Trace-norm tradeoff");
  cmd->add_option("--rel-tol", args.rel_tol,
                  "Relative objective-change stopping threshold");
  cmd->add_option("--max-iters", args.max_iters,
                  "Iteration cap; 0 selects 1000 (linear) / 3000 (kernel)");
}

rbrl::ModelKind parse_kind(const std::string& kind) {
  if (kind == "linear") return rbrl::ModelKind::Linear;
  if (kind == "kernel") return rbrl::ModelKind::Kernel;
  throw rbrl::ValidationError("unknown model kind '" + kind +
                              "' (expected linear or kernel)");
}

rbrl::Dataset load_data(const DataArgs& args) {
  return rbrl::load_dataset(args.path, rbrl::parse_format(args.format));
}

rbrl::KernelSpec resolve_kernel(const ModelArgs& args,
                                rbrl::Index raw_features) {
  if (parse_kind(args.kind) == rbrl::ModelKind::Linear) {
    if (args.kernel_set) {
      throw rbrl::ValidationError(
          "--kernel only applies to --model-kind kernel");
    }
    return rbrl::KernelSpec::linear();
  }
  if (args.kernel == "linear") return rbrl::KernelSpec::linear();
  if (args.kernel == "rbf") {
    return args.gamma > 0.0 ? rbrl::KernelSpec::rbf(args.gamma)
                            : rbrl::KernelSpec::rbf_default(raw_features);
  }
  throw rbrl::ValidationError("unknown kernel '" + args.kernel +
                              "' (expected linear or rbf)");
}

rbrl::HyperParams resolve_hp(const FitArgs& fit, rbrl::ModelKind kind,
                             const rbrl::KernelSpec& spec) {
  rbrl::HyperParams hp;
  hp.lambda1 = fit.lambda1;
  hp.lambda2 = fit.lambda2;
  hp.lambda3 = fit.lambda3;
  hp.rel_tol = fit.rel_tol;
  hp.max_iters = fit.max_iters > 0
                     ? fit.max_iters
                     : (kind == rbrl::ModelKind::Kernel ? 3000 : 1000);
  hp.kernel = spec;
  return hp;
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
  fs::create_directories(p);
  return p;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw rbrl::ParseError("cannot open '" + path.string() +
                           "' for writing");
  }
  return out;
}

json hp_to_json(const rbrl::HyperParams& hp) {
  json j;
  j["lambda1"] = hp.lambda1;
  j["lambda2"] = hp.lambda2;
  j["lambda3"] = hp.lambda3;
  j["rel_tol"] = hp.rel_tol;
  j["max_iters"] = hp.max_iters;
  j["kernel"] = hp.kernel.kind == rbrl::KernelKind::Rbf ? "rbf" : "linear";
  if (hp.kernel.kind == rbrl::KernelKind::Rbf) {
    j["gamma"] = hp.kernel.gamma;
  }
  return j;
}

void write_config(const fs::path& path, const json& config) {
  auto out = open_out(path);
  out << config.dump(2) << "\n";
}

void print_report(const rbrl::EvalReport& report) {
  std::cout << "hamming_loss       " << report.hamming_loss << "\n"
            << "subset_accuracy    " << report.subset_accuracy << "\n"
            << "f1_example         " << report.f1_example << "\n"
            << "ranking_loss       " << report.ranking_loss << "\n"
            << "coverage           " << report.coverage << "\n"
            << "average_precision  " << report.average_precision << "\n";
}

void write_matrix_csv(const rbrl::Matrix& m, std::ostream& out) {
  for (rbrl::Index i = 0; i < m.rows(); ++i) {
    for (rbrl::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << rbrl::format_double(m(i, j));
    }
    out << "\n";
  }
}

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string tok =
        csv.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
    if (!tok.empty()) {
      try {
        values.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw rbrl::ParseError("bad value '" + tok + "' in list '" + csv +
                               "'");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.empty()) {
    throw rbrl::ParseError("empty value list '" + csv + "'");
  }
  return values;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// --- subcommand bodies ---

struct TrainOpts {
  DataArgs data;
  ModelArgs model;
  FitArgs fit;
  std::string out = ".";
  bool text_model = false;
};

void cmd_train(const TrainOpts& opts) {
  const rbrl::Dataset ds = load_data(opts.data);
  const rbrl::ModelKind kind = parse_kind(opts.model.kind);
  const rbrl::KernelSpec spec = resolve_kernel(opts.model, ds.feature_count());
  const rbrl::HyperParams hp = resolve_hp(opts.fit, kind, spec);
  const fs::path out_dir = ensure_out_dir(opts.out);

  rbrl::AnyModel model{rbrl::LinearModel{}};
  rbrl::SolveTrace trace;
  const auto t0 = std::chrono::steady_clock::now();
  if (kind == rbrl::ModelKind::Linear) {
    auto [m, tr] = rbrl::fit_linear(ds, hp);
    model = std::move(m);
    trace = std::move(tr);
  } else {
    auto [m, tr] = rbrl::fit_kernel(ds, hp);
    model = std::move(m);
    trace = std::move(tr);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  rbrl::save_model(model, (out_dir / "model.rbrl").string(), opts.text_model);
  {
    auto out = open_out(out_dir / "trace.csv");
    rbrl::write_trace_csv(trace, out);
  }
  json config;
  config["command"] = "train";
  config["data"] = opts.data.path;
  config["format"] = opts.data.format;
  config["model_kind"] = opts.model.kind;
  config["hyperparams"] = hp_to_json(hp);
  write_config(out_dir / "train_config.json", config);

  std::cout << "trained " << opts.model.kind << " model: "
            << trace.iterations << " iterations ("
            << (trace.stop_reason == rbrl::StopReason::Converged
                    ? "converged"
                    : "max-iters")
            << "), objective "
            << (trace.objective_per_iter.empty()
                    ? trace.initial_objective
                    : trace.objective_per_iter.back())
            << ", L_f " << trace.l_f_used << ", " << seconds << " s\n"
            << "model: " << (out_dir / "model.rbrl").string() << "\n"
            << "trace: " << (out_dir / "trace.csv").string() << "\n";
}

struct PredictOpts {
  std::string model;
  DataArgs data;
  std::string out = ".";
};

void cmd_predict(const PredictOpts& opts) {
  const rbrl::AnyModel model = rbrl::load_model(opts.model);
  const rbrl::Dataset ds = load_data(opts.data);
  const auto [scores, labels] = rbrl::predict_any(model, ds.features);
  const fs::path out_dir = ensure_out_dir(opts.out);
  {
    auto out = open_out(out_dir / "scores.csv");
    write_matrix_csv(scores.scores, out);
  }
  {
    auto out = open_out(out_dir / "labels.csv");
    write_matrix_csv(labels.labels, out);
  }
  json config;
  config["command"] = "predict";
  config["model"] = opts.model;
  config["data"] = opts.data.path;
  config["format"] = opts.data.format;
  write_config(out_dir / "predict_config.json", config);
  std::cout << "scored " << ds.rows() << " rows x "
            << rbrl::model_label_count(model) << " labels\n";
}

struct EvaluateOpts {
  std::string model;
  DataArgs data;
  std::string out = ".";
};

void cmd_evaluate(const EvaluateOpts& opts) {
  const rbrl::AnyModel model = rbrl::load_model(opts.model);
  const rbrl::Dataset ds = load_data(opts.data);
  if (rbrl::model_label_count(model) != ds.label_count()) {
    throw rbrl::ShapeMismatch(
        "model has " + std::to_string(rbrl::model_label_count(model)) +
        " labels but dataset has " + std::to_string(ds.label_count()));
  }
  const auto [scores, labels] = rbrl::predict_any(model, ds.features);
  const rbrl::EvalReport report =
      rbrl::evaluate_all(scores.scores, labels.labels, ds.labels);
  const fs::path out_dir = ensure_out_dir(opts.out);
  {
    auto out = open_out(out_dir / "report.json");
    rbrl::write_eval_report_json(report, out);
  }
  json config;
  config["command"] = "evaluate";
  config["model"] = opts.model;
  config["data"] = opts.data.path;
  config["format"] = opts.data.format;
  write_config(out_dir / "evaluate_config.json", config);
  print_report(report);
}

struct TuneOpts {
  DataArgs data;
  ModelArgs model;
  FitArgs fit;
  std::string grid1, grid2, grid3;
  int folds = 5;
  std::uint64_t seed = 0;
  std::string metric = "average-precision";
  double cv_rel_tol = 0.0;
  int cv_max_iters = 0;
  int threads = 0;
  std::string out = ".";
};

rbrl::GridSpec make_grid(const TuneOpts& opts) {
  rbrl::GridSpec grid;
  if (!opts.grid1.empty()) grid.lambda1_grid = parse_value_list(opts.grid1);
  if (!opts.grid2.empty()) grid.lambda2_grid = parse_value_list(opts.grid2);
  if (!opts.grid3.empty()) grid.lambda3_grid = parse_value_list(opts.grid3);
  grid.folds = opts.folds;
  grid.fold_seed = opts.seed;
  grid.selection_metric = rbrl::parse_metric(opts.metric);
  grid.cv_rel_tol = opts.cv_rel_tol;
  grid.cv_max_iters = opts.cv_max_iters;
  grid.threads = opts.threads > 0 ? opts.threads : default_threads();
  return grid;
}

json grid_to_json(const rbrl::GridSpec& grid) {
  json j;
  j["lambda1_grid"] = grid.lambda1_grid;
  j["lambda2_grid"] = grid.lambda2_grid;
  j["lambda3_grid"] = grid.lambda3_grid;
  j["folds"] = grid.folds;
  j["fold_seed"] = grid.fold_seed;
  j["metric"] = rbrl::metric_name(grid.selection_metric);
  j["cv_rel_tol"] = grid.cv_rel_tol;
  j["cv_max_iters"] = grid.cv_max_iters;
  return j;
}

void cmd_tune(const TuneOpts& opts) {
  const rbrl::Dataset ds = load_data(opts.data);
  const rbrl::ModelKind kind = parse_kind(opts.model.kind);
  const rbrl::KernelSpec spec = resolve_kernel(opts.model, ds.feature_count());
  const rbrl::HyperParams hp = resolve_hp(opts.fit, kind, spec);
  const rbrl::GridSpec grid = make_grid(opts);
  const fs::path out_dir = ensure_out_dir(opts.out);

  const rbrl::GridSearchResult result =
      rbrl::grid_search(ds, grid, hp, kind);
  {
    auto out = open_out(out_dir / "grid_table.csv");
    rbrl::write_grid_table_csv(result, grid.folds, out);
  }
  json best;
  best["command"] = "tune";
  best["data"] = opts.data.path;
  best["model_kind"] = opts.model.kind;
  best["grid"] = grid_to_json(grid);
  best["best"] = hp_to_json(result.best);
  best["best_cell"] = result.best_cell;
  best["best_score"] =
      result.table[static_cast<std::size_t>(result.best_cell)].mean_score;
  write_config(out_dir / "best.json", best);

  std::cout << "best cell: lambda1=" << result.best.lambda1
            << " lambda2=" << result.best.lambda2
            << " lambda3=" << result.best.lambda3 << " ("
            << rbrl::metric_name(grid.selection_metric) << " = "
            << result.table[static_cast<std::size_t>(result.best_cell)]
                   .mean_score
            << " over " << grid.folds << " folds)\n"
            << "table: " << (out_dir / "grid_table.csv").string() << "\n";
}

struct BenchOpts {
  DataArgs data;
  ModelArgs model;
  FitArgs fit;
  std::string tune_mode = "none";
  std::string grid1, grid2, grid3;
  int folds = 5;
  std::uint64_t seed = 0;
  int repeats = 10;
  double train_fraction = 0.6;
  std::string metric = "average-precision";
  double cv_rel_tol = 1e-4;
  int cv_max_iters = 0;
  int threads = 0;
  std::string out = ".";
  bool ablate_lambda2 = false;
};

rbrl::BenchConfig make_bench_config(const BenchOpts& opts,
                                    const rbrl::Dataset& ds) {
  rbrl::BenchConfig config;
  config.kind = parse_kind(opts.model.kind);
  const rbrl::KernelSpec spec =
      resolve_kernel(opts.model, ds.feature_count());
  config.hp = resolve_hp(opts.fit, config.kind, spec);
  config.plan.seed = opts.seed;
  config.plan.repeats = opts.repeats;
  config.plan.train_fraction = opts.train_fraction;
  config.tune = rbrl::parse_tune_mode(opts.tune_mode);
  TuneOpts grid_opts;
  grid_opts.grid1 = opts.grid1;
  grid_opts.grid2 = opts.grid2;
  grid_opts.grid3 = opts.grid3;
  grid_opts.folds = opts.folds;
  grid_opts.seed = opts.seed;
  grid_opts.metric = opts.metric;
  grid_opts.cv_rel_tol = opts.cv_rel_tol;
  grid_opts.cv_max_iters = opts.cv_max_iters;
  grid_opts.threads = opts.threads;
  config.grid = make_grid(grid_opts);
  config.threads = opts.threads > 0 ? opts.threads : default_threads();
  return config;
}

rbrl::BenchResult bench_pass(const rbrl::Dataset& ds,
                             const rbrl::BenchConfig& config,
                             const fs::path& repeats_path) {
  auto repeats_out = open_out(repeats_path);
  rbrl::write_repeat_csv_header(repeats_out);
  return rbrl::run_bench(ds, config,
                         [&repeats_out](const rbrl::RepeatOutcome& outcome) {
                           rbrl::write_repeat_csv_row(outcome, repeats_out);
                           repeats_out.flush();
                         });
}

void cmd_bench(const BenchOpts& opts) {
  const rbrl::Dataset ds = load_data(opts.data);
  const rbrl::BenchConfig config = make_bench_config(opts, ds);
  const fs::path out_dir = ensure_out_dir(opts.out);

  json cfg;
  cfg["command"] = "bench";
  cfg["data"] = opts.data.path;
  cfg["format"] = opts.data.format;
  cfg["model_kind"] = opts.model.kind;
  cfg["seed"] = opts.seed;
  cfg["repeats"] = opts.repeats;
  cfg["train_fraction"] = opts.train_fraction;
  cfg["tune"] = opts.tune_mode;
  cfg["hyperparams"] = hp_to_json(config.hp);
  if (config.tune != rbrl::TuneMode::None) {
    cfg["grid"] = grid_to_json(config.grid);
  }
  cfg["ablate_lambda2"] = opts.ablate_lambda2;
  cfg["threads"] = config.threads;
  write_config(out_dir / "bench_config.json", cfg);

  const rbrl::BenchResult result =
      bench_pass(ds, config, out_dir / "bench_repeats.csv");
  {
    auto out = open_out(out_dir / "bench_summary.csv");
    rbrl::write_bench_summary_csv("rbrl", result, out, true);
    if (opts.ablate_lambda2) {
      rbrl::BenchConfig brl = config;
      brl.hp.lambda2 = 0.0;
      brl.grid.lambda2_grid = {0.0};
      const rbrl::BenchResult brl_result =
          bench_pass(ds, brl, out_dir / "bench_repeats_brl.csv");
      rbrl::write_bench_summary_csv("brl", brl_result, out, false);
      auto timing = open_out(out_dir / "bench_timing_brl.csv");
      rbrl::write_timing_csv(brl_result, timing);
    }
  }
  {
    auto timing = open_out(out_dir / "bench_timing.csv");
    rbrl::write_timing_csv(result, timing);
  }

  std::cout << "bench over " << opts.repeats << " repeats ("
            << opts.model.kind << "):\n";
  print_report(result.mean);
  std::cout << "summary: " << (out_dir / "bench_summary.csv").string()
            << "\n";
}

struct SweepOpts {
  DataArgs data;
  ModelArgs model;
  FitArgs fit;
  std::string axis = "lambda3";
  std::string values;
  std::uint64_t seed = 0;
  int repeats = 1;
  double train_fraction = 0.6;
  int threads = 0;
  std::string out = ".";
};

void cmd_sweep(const SweepOpts& opts) {
  const rbrl::Dataset ds = load_data(opts.data);
  const rbrl::SweepAxis axis = rbrl::parse_axis(opts.axis);

  BenchOpts bench;
  bench.data = opts.data;
  bench.model = opts.model;
  bench.fit = opts.fit;
  bench.seed = opts.seed;
  bench.repeats = opts.repeats;
  bench.train_fraction = opts.train_fraction;
  bench.threads = opts.threads;
  const rbrl::BenchConfig base = make_bench_config(bench, ds);

  std::vector<double> values;
  if (!opts.values.empty()) {
    values = parse_value_list(opts.values);
  } else if (axis == rbrl::SweepAxis::Gamma) {
    const double m = static_cast<double>(ds.feature_count());
    for (int e = -3; e <= 3; ++e) values.push_back(std::pow(10.0, e) / m);
  } else {
    values = rbrl::default_lambda_grid();
  }

  const auto points = rbrl::run_sweep(ds, base, axis, values);
  const fs::path out_dir = ensure_out_dir(opts.out);
  {
    auto out = open_out(out_dir / "sweep.csv");
    rbrl::write_sweep_csv(axis, points, out);
  }
  json cfg;
  cfg["command"] = "sweep";
  cfg["data"] = opts.data.path;
  cfg["axis"] = opts.axis;
  cfg["values"] = values;
  cfg["seed"] = opts.seed;
  cfg["repeats"] = opts.repeats;
  cfg["hyperparams"] = hp_to_json(base.hp);
  write_config(out_dir / "sweep_config.json", cfg);
  std::cout << "swept " << values.size() << " values of " << opts.axis
            << " -> " << (out_dir / "sweep.csv").string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rbrl: joint binary-relevance + ranking multi-label "
               "classifier with trace-norm low-rank regularization"};
  app.require_subcommand(1);

  TrainOpts train;
  auto* train_cmd = app.add_subcommand("train", "Fit a model on a dataset");
  add_data_args(train_cmd, train.data);
  add_model_args(train_cmd, train.model);
  add_fit_args(train_cmd, train.fit);
  train_cmd->add_option("--out", train.out, "Output directory");
  train_cmd->add_flag("--text-model", train.text_model,
                      "Save the model in the textual format");

  PredictOpts predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Score a dataset with a saved model");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  add_data_args(predict_cmd, predict.data);
  predict_cmd->add_option("--out", predict.out, "Output directory");

  EvaluateOpts evaluate;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Score a labeled dataset and report the six metrics");
  evaluate_cmd->add_option("--model", evaluate.model, "Model file")
      ->required();
  add_data_args(evaluate_cmd, evaluate.data);
  evaluate_cmd->add_option("--out", evaluate.out, "Output directory");

  TuneOpts tune;
  auto* tune_cmd = app.add_subcommand(
      "tune", "Grid-search hyperparameters with k-fold cross-validation");
  add_data_args(tune_cmd, tune.data);
  add_model_args(tune_cmd, tune.model);
  add_fit_args(tune_cmd, tune.fit);
  tune_cmd->add_option("--grid1", tune.grid1, "lambda1 grid (comma list)");
  tune_cmd->add_option("--grid2", tune.grid2, "lambda2 grid (comma list)");
  tune_cmd->add_option("--grid3", tune.grid3, "lambda3 grid (comma list)");
  tune_cmd->add_option("--folds", tune.folds, "Cross-validation folds");
  tune_cmd->add_option("--seed", tune.seed, "Fold shuffle seed");
  tune_cmd->add_option("--metric", tune.metric, "Selection metric");
  tune_cmd->add_option("--cv-rel-tol", tune.cv_rel_tol,
                       "Looser stopping tolerance for CV fits (0 = base)");
  tune_cmd->add_option("--cv-max-iters", tune.cv_max_iters,
                       "Iteration cap for CV fits (0 = base)");
  tune_cmd->add_option("--threads", tune.threads, "Worker threads");
  tune_cmd->add_option("--out", tune.out, "Output directory");

  BenchOpts bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Repeated-split benchmark with optional tuning");
  add_data_args(bench_cmd, bench.data);
  add_model_args(bench_cmd, bench.model);
  add_fit_args(bench_cmd, bench.fit);
  bench_cmd->add_option("--tune", bench.tune_mode,
                        "Tuning mode: none, once or per-repeat");
  bench_cmd->add_option("--grid1", bench.grid1, "lambda1 grid (comma list)");
  bench_cmd->add_option("--grid2", bench.grid2, "lambda2 grid (comma list)");
  bench_cmd->add_option("--grid3", bench.grid3, "lambda3 grid (comma list)");
  bench_cmd->add_option("--folds", bench.folds, "Cross-validation folds");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--repeats", bench.repeats, "Split repeats");
  bench_cmd->add_option("--train-fraction", bench.train_fraction,
                        "Training fraction of each split");
  bench_cmd->add_option("--metric", bench.metric, "Tuning selection metric");
  bench_cmd->add_option("--cv-rel-tol", bench.cv_rel_tol,
                        "Looser stopping tolerance for CV fits (0 = base)");
  bench_cmd->add_option("--cv-max-iters", bench.cv_max_iters,
                        "Iteration cap for CV fits (0 = base)");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_flag("--ablate-lambda2", bench.ablate_lambda2,
                      "Also run the lambda2=0 ablation (BRL row)");

  SweepOpts sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Metric curves along one hyperparameter axis");
  add_data_args(sweep_cmd, sweep.data);
  add_model_args(sweep_cmd, sweep.model);
  add_fit_args(sweep_cmd, sweep.fit);
  sweep_cmd->add_option("--axis", sweep.axis,
                        "lambda1, lambda2, lambda3 or gamma");
  sweep_cmd->add_option("--values", sweep.values,
                        "Axis values (comma list; default: standard grid)");
  sweep_cmd->add_option("--seed", sweep.seed, "Split seed");
  sweep_cmd->add_option("--repeats", sweep.repeats, "Split repeats per value");
  sweep_cmd->add_option("--train-fraction", sweep.train_fraction,
                        "Training fraction of each split");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads");
  sweep_cmd->add_option("--out", sweep.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) cmd_train(train);
    if (*predict_cmd) cmd_predict(predict);
    if (*evaluate_cmd) cmd_evaluate(evaluate);
    if (*tune_cmd) cmd_tune(tune);
    if (*bench_cmd) cmd_bench(bench);
    if (*sweep_cmd) cmd_sweep(sweep);
  } catch (const rbrl::ParseError& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return 2;
  } catch (const rbrl::NumericError& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return 4;
  } catch (const rbrl::Error& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
