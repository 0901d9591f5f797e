#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spmvsel/advisor.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/generate.hpp"
#include "spmvsel/matrix_market.hpp"

namespace spmvsel::cli {
namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::size_t> workers, reps, warmup, llc_bytes, cacheline_bytes;
  std::optional<std::string> subset;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--reps", reps, "timed repetitions")->check(CLI::PositiveNumber);
    app->add_option("--warmup", warmup, "untimed warmup runs");
    app->add_option("--llc-bytes", llc_bytes, "last-level cache size")->check(CLI::PositiveNumber);
    app->add_option("--cacheline-bytes", cacheline_bytes, "cache line size")
        ->check(CLI::PositiveNumber);
  }

  AdvisorConfig resolve() const {
    AdvisorConfig cfg = AdvisorConfig::defaults();
    if (!config.empty()) cfg = load_config(config, cfg);
    if (workers) cfg.workers = *workers;
    if (reps) cfg.reps = *reps;
    if (warmup) cfg.warmup = *warmup;
    if (llc_bytes) cfg.llc_bytes = *llc_bytes;
    if (cacheline_bytes) cfg.cacheline_bytes = *cacheline_bytes;
    if (subset) cfg.feature_subset = *subset;
    cfg.validate();
    return cfg;
  }
};

std::unique_ptr<Timer> steady_timer(const std::string&) { return std::make_unique<SteadyTimer>(); }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  return f;
}

/// Loads a model and, when the user named a subset, checks it is the one
/// the model was trained on.
TrainedModel load_checked_model(const std::string& path, const std::optional<std::string>& subset) {
  TrainedModel m = load_model(std::filesystem::path(path));
  if (subset && feature_subset_preset(*subset) != m.feature_names) {
    throw ModelError(fmt::format("model consumes [{}], not subset '{}'",
                                 fmt::join(m.feature_names, ","), *subset));
  }
  return m;
}

void print_confusion(std::ostream& out, const ConfusionMatrix& c) {
  fmt::print(out, "confusion (rows actual, columns predicted)\n{:>6}", "");
  for (MatrixClass p : kAllClasses) fmt::print(out, "{:>6}", class_name(p));
  fmt::print(out, "\n");
  for (MatrixClass a : kAllClasses) {
    fmt::print(out, "{:>6}", class_name(a));
    for (MatrixClass p : kAllClasses) fmt::print(out, "{:>6}", c[class_index(a)][class_index(p)]);
    fmt::print(out, "\n");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SpMV bottleneck classifier and optimization advisor", "spmvsel"};
  app.require_subcommand(1);

  // advise
  CommonFlags advise_flags;
  std::string advise_matrix, advise_mode, advise_model;
  auto* advise_cmd = app.add_subcommand("advise", "classify a matrix and recommend an optimization");
  advise_cmd->add_option("--matrix", advise_matrix, "Matrix Market file")->required();
  advise_cmd->add_option("--mode", advise_mode, "profiling or features (default: features with --model)");
  advise_cmd->add_option("--model", advise_model, "trained model (features mode)");
  advise_cmd->add_option("--subset", advise_flags.subset, "expected feature subset of the model");
  advise_flags.attach(advise_cmd);

  // train / eval
  CommonFlags train_flags, eval_flags;
  std::string train_corpus, train_labels = "auto", train_classifier = "tree", train_out, train_csv;
  std::string eval_corpus, eval_labels = "auto", eval_classifier = "tree", eval_subsets;
  std::optional<std::size_t> train_depth, eval_depth;
  std::size_t train_min_leaf = 1, eval_min_leaf = 1;

  auto* train_cmd = app.add_subcommand("train", "train a classifier over a matrix corpus");
  auto* eval_cmd = app.add_subcommand("eval", "leave-one-out evaluation over a matrix corpus");
  for (auto [cmd, flags, corpus, labels, classifier, depth, min_leaf] :
       {std::tuple{train_cmd, &train_flags, &train_corpus, &train_labels, &train_classifier,
                   &train_depth, &train_min_leaf},
        std::tuple{eval_cmd, &eval_flags, &eval_corpus, &eval_labels, &eval_classifier,
                   &eval_depth, &eval_min_leaf}}) {
    cmd->add_option("--corpus", *corpus, "directory of .mtx files")->required();
    cmd->add_option("--labels", *labels, "label CSV (matrix,label) or 'auto' to profile");
    cmd->add_option("--classifier", *classifier, "tree or nb")
        ->check(CLI::IsMember({"tree", "nb"}));
    cmd->add_option("--subset", flags->subset, "feature subset preset");
    cmd->add_option("--max-depth", *depth, "tree depth limit")->check(CLI::PositiveNumber);
    cmd->add_option("--min-leaf", *min_leaf, "minimum samples per leaf")->check(CLI::PositiveNumber);
    flags->attach(cmd);
  }
  train_cmd->add_option("--out", train_out, "model output path")->required();
  train_cmd->add_option("--csv", train_csv, "feature/label log (default: stdout)");
  eval_cmd->add_option("--subsets", eval_subsets, "comma-separated presets to compare");

  // bench
  CommonFlags bench_flags;
  std::string bench_matrix, bench_list, bench_out;
  std::optional<std::size_t> bench_chunk;
  auto* bench_cmd = app.add_subcommand("bench", "time optimization variants against the baseline");
  bench_cmd->add_option("--matrix", bench_matrix, "Matrix Market file")->required();
  bench_cmd->add_option("--variants", bench_list, "comma-separated variants (default: all)");
  bench_cmd->add_option("--chunk", bench_chunk, "rows per dynamic chunk")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_out, "append results CSV");
  bench_flags.attach(bench_cmd);

  // report
  std::string report_results, report_column = "speedup", report_variant, report_out;
  auto* report_cmd = app.add_subcommand("report", "box-plot statistics of speedups");
  report_cmd->add_option("results,--results", report_results, "results CSV or number list")
      ->required();
  report_cmd->add_option("--column", report_column, "value column");
  report_cmd->add_option("--variant", report_variant, "only rows of this variant");
  report_cmd->add_option("--out", report_out, "plot-data CSV");

  // overhead
  CommonFlags overhead_flags;
  std::string overhead_matrix, overhead_mode, overhead_model;
  auto* overhead_cmd = app.add_subcommand("overhead", "classification cost in SpMV operations");
  overhead_cmd->add_option("--matrix", overhead_matrix, "Matrix Market file")->required();
  overhead_cmd->add_option("--mode", overhead_mode, "profiling or features");
  overhead_cmd->add_option("--model", overhead_model, "trained model (features mode)");
  overhead_cmd->add_option("--subset", overhead_flags.subset, "expected feature subset");
  overhead_flags.attach(overhead_cmd);

  // generate
  std::string gen_kind, gen_out;
  std::size_t gen_n = 0, gen_k = 0, gen_llc = 0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic matrix");
  gen_cmd->add_option("--kind", gen_kind, "banded, irregular, skewed or small-dense")
      ->required()
      ->check(CLI::IsMember({"banded", "irregular", "skewed", "small-dense"}));
  gen_cmd->add_option("--n", gen_n, "rows and columns")->required();
  gen_cmd->add_option("--nnz-per-row", gen_k, "nonzeros per row")->required();
  gen_cmd->add_option("--seed", gen_seed, "PRNG seed");
  gen_cmd->add_option("--llc-bytes", gen_llc, "small-dense: LLC size the matrix must fit");
  gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto mode_of = [](const std::string& mode, const std::string& model) {
    if (mode.empty()) return model.empty() ? AdviseMode::kProfiling : AdviseMode::kFeatures;
    return parse_advise_mode(mode);
  };

  try {
    if (*advise_cmd) {
      const AdvisorConfig cfg = advise_flags.resolve();
      const AdviseMode mode = mode_of(advise_mode, advise_model);
      if (mode == AdviseMode::kFeatures && advise_model.empty()) {
        throw UsageError("features mode needs --model");
      }
      const CsrMatrix a = load_csr(advise_matrix);
      std::optional<TrainedModel> model;
      if (mode == AdviseMode::kFeatures) model = load_checked_model(advise_model, advise_flags.subset);
      SteadyTimer timer;
      print_advice(out, advise(a, mode, model ? &*model : nullptr, cfg, timer));
    } else if (*train_cmd || *eval_cmd) {
      const bool training = train_cmd->parsed();
      const CommonFlags& flags = training ? train_flags : eval_flags;
      const std::string& corpus_dir = training ? train_corpus : eval_corpus;
      const std::string& labels_arg = training ? train_labels : eval_labels;
      const ModelKind kind = parse_model_kind(training ? train_classifier : eval_classifier);
      TrainOptions opts;
      opts.cart.max_depth = training ? train_depth : eval_depth;
      opts.cart.min_leaf = training ? train_min_leaf : eval_min_leaf;

      const AdvisorConfig cfg = flags.resolve();
      std::optional<std::map<std::string, MatrixClass>> labels;
      if (labels_arg != "auto") labels = read_label_file(std::filesystem::path(labels_arg));
      const LabelledCorpus corpus =
          label_corpus(corpus_dir, labels ? &*labels : nullptr, cfg, steady_timer);
      for (const std::string& w : corpus.warnings) fmt::print(err, "warning: {}\n", w);
      if (corpus.matrices.size() < 2) {
        throw InvalidArgument(fmt::format("need at least 2 labelled matrices, have {}",
                                          corpus.matrices.size()));
      }
      const auto subset = feature_subset_preset(cfg.feature_subset);
      const Dataset d = corpus_dataset(corpus, subset);

      if (training) {
        const TrainedModel model = train_model(d, kind, opts);
        save_model(model, std::filesystem::path(train_out));
        if (train_csv.empty()) {
          write_corpus_csv(out, corpus);
        } else {
          auto f = open_out(train_csv);
          write_corpus_csv(f, corpus);
        }
        fmt::print(err, "trained {} on {} matrices ({} skipped), saved {}\n",
                   model_kind_name(kind), d.size(), corpus.skipped, train_out);
      } else {
        const Trainer trainer = model_trainer(kind, opts);
        const LooResult r = loo_cv(d, trainer);
        fmt::print(out, "matrices {}\naccuracy {}\n", d.size(), r.accuracy);
        print_confusion(out, r.confusion);
        if (!eval_subsets.empty()) {
          std::vector<std::vector<std::string>> subsets;
          const auto names = split_list(eval_subsets);
          for (const std::string& n : names) subsets.push_back(feature_subset_preset(n));
          const Dataset full = corpus_dataset(corpus, feature_subset_preset("all"));
          const auto scores = evaluate_subsets(full, subsets, trainer);
          for (std::size_t i = 0; i < scores.size(); ++i) {
            fmt::print(out, "subset {} accuracy {}\n", names[i], scores[i].accuracy);
          }
        }
      }
    } else if (*bench_cmd) {
      AdvisorConfig cfg = bench_flags.resolve();
      if (bench_chunk) cfg.schedule_chunk = *bench_chunk;
      const auto variants =
          bench_list.empty() ? bench_variant_names() : split_list(bench_list);
      const CsrMatrix a = load_csr(bench_matrix);
      SteadyTimer timer;
      const BenchResult r = bench_variants(a, variants, cfg, timer);
      print_bench(out, r);
      if (!bench_out.empty()) {
        const bool fresh = !std::filesystem::exists(bench_out) ||
                           std::filesystem::file_size(bench_out) == 0;
        std::ofstream f(bench_out, std::ios::app);
        if (!f) throw Error("cannot write " + bench_out);
        write_bench_csv(f, std::filesystem::path(bench_matrix).stem().string(), r, fresh);
      }
    } else if (*report_cmd) {
      std::ifstream in(report_results);
      if (!in) throw ParseError("cannot open " + report_results);
      const auto values = read_speedups(in, report_column, report_variant);
      const SpeedupStats s = speedup_stats(values);
      print_stats(out, s);
      if (!report_out.empty()) {
        auto f = open_out(report_out);
        write_stats_csv(f, s);
      }
    } else if (*overhead_cmd) {
      const AdvisorConfig cfg = overhead_flags.resolve();
      const AdviseMode mode = mode_of(overhead_mode, overhead_model);
      if (mode == AdviseMode::kFeatures && overhead_model.empty()) {
        throw UsageError("features mode needs --model");
      }
      const CsrMatrix a = load_csr(overhead_matrix);
      std::optional<TrainedModel> model;
      if (mode == AdviseMode::kFeatures) {
        model = load_checked_model(overhead_model, overhead_flags.subset);
      }
      SteadyTimer timer;
      print_overhead(out, measure_overhead(a, mode, model ? &*model : nullptr, cfg, timer));
    } else if (*gen_cmd) {
      GenerateOptions opts{*parse_matrix_kind(gen_kind), gen_n, gen_k, gen_seed, gen_llc};
      if (gen_n == 0 || gen_k == 0) throw UsageError("--n and --nnz-per-row must be positive");
      const CsrMatrix a = generate_matrix(opts);
      if (gen_out.empty()) {
        write_matrix_market(out, a);
      } else {
        auto f = open_out(gen_out);
        write_matrix_market(f, a);
      }
    }
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitData;
  }
  return kExitOk;
}

}  // namespace spmvsel::cli
