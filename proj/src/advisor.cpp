#include "spmvsel/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "spmvsel/delta_csr.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/kernels.hpp"
#include "spmvsel/matrix_market.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/spmv.hpp"

namespace spmvsel {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string strip_mtx(std::string name) {
  if (name.size() > 4 && name.ends_with(".mtx")) name.resize(name.size() - 4);
  return name;
}

/// Deterministic dense vector in [0, 1) used for agreement checks.
std::vector<double> probe_vector(std::size_t n) {
  std::mt19937_64 engine(0x5eed);
  std::vector<double> x(n);
  for (double& v : x) v = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return x;
}

double timed_median(Timer& timer, KernelId id, std::size_t warmup, std::size_t reps,
                    const std::function<void()>& body) {
  for (std::size_t w = 0; w < warmup; ++w) body();
  std::vector<double> samples(reps);
  for (double& s : samples) s = timer.time(id, body);
  return median(std::move(samples));
}

}  // namespace

// --- config ------------------------------------------------------------------

AdvisorConfig AdvisorConfig::defaults() {
  AdvisorConfig c;
  c.workers = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

void AdvisorConfig::validate() const {
  if (llc_bytes == 0 || cacheline_bytes == 0 || workers == 0 || reps == 0 ||
      schedule_chunk == 0) {
    throw UsageError("llc_bytes, cacheline_bytes, workers, reps and schedule_chunk must be > 0");
  }
  if (cacheline_bytes % sizeof(double) != 0) {
    throw UsageError("cacheline_bytes must be a multiple of 8");
  }
  try {
    thresholds.validate();
    feature_subset_preset(feature_subset);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

CacheConfig AdvisorConfig::cache() const {
  return CacheConfig{llc_bytes, cacheline_bytes, sizeof(double), sizeof(std::uint32_t)};
}

ProfilingConfig AdvisorConfig::profiling() const { return {measure_options(), thresholds}; }

AdvisorConfig parse_config(std::istream& in, AdvisorConfig base) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "llc_bytes") {
        base.llc_bytes = value.get<std::size_t>();
      } else if (key == "cacheline_bytes") {
        base.cacheline_bytes = value.get<std::size_t>();
      } else if (key == "workers") {
        base.workers = value.get<std::size_t>();
      } else if (key == "reps") {
        base.reps = value.get<std::size_t>();
      } else if (key == "warmup") {
        base.warmup = value.get<std::size_t>();
      } else if (key == "schedule_chunk") {
        base.schedule_chunk = value.get<std::size_t>();
      } else if (key == "feature_subset") {
        base.feature_subset = value.get<std::string>();
      } else if (key == "thresholds") {
        base.thresholds.cml = value.value("cml", base.thresholds.cml);
        base.thresholds.mb = value.value("mb", base.thresholds.mb);
        base.thresholds.imb = value.value("imb", base.thresholds.imb);
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  base.validate();
  return base;
}

AdvisorConfig load_config(const std::filesystem::path& path, AdvisorConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  return parse_config(in, std::move(base));
}

// --- advise ------------------------------------------------------------------

AdviseMode parse_advise_mode(std::string_view name) {
  if (name == "profiling") return AdviseMode::kProfiling;
  if (name == "features") return AdviseMode::kFeatures;
  throw UsageError(fmt::format("unknown mode '{}' (expected profiling or features)", name));
}

AdviceReport advise(const CsrMatrix& a, AdviseMode mode, const TrainedModel* model,
                    const AdvisorConfig& cfg, Timer& timer) {
  AdviceReport r;
  if (mode == AdviseMode::kFeatures) {
    if (model == nullptr) throw UsageError("features mode needs a trained model");
    r.features = extract_features(a, cfg.cache());
    r.matrix_class = model->predict(*r.features);
  } else {
    const ProfilingResult p = classify_profiling(a, cfg.profiling(), timer);
    r.benchmark = p.report;
    r.matrix_class = p.matrix_class;
  }
  r.optimization = optimization_for(r.matrix_class);
  return r;
}

void print_advice(std::ostream& out, const AdviceReport& r) {
  fmt::print(out, "class: {}\n", class_name(r.matrix_class));
  fmt::print(out, "optimization: {} ({})\n", optimization_description(r.optimization),
             optimization_variant(r.optimization));
  if (r.benchmark) {
    const BenchmarkReport& b = *r.benchmark;
    fmt::print(out, "evidence: profiling\n");
    fmt::print(out, "  t_baseline {:.6e} s\n  t_noxmiss {:.6e} s\n", b.t_baseline, b.t_noxmiss);
    fmt::print(out, "  t_inflate {:.6e} s\n  t_balance_mean {:.6e} s\n", b.t_inflate,
               b.t_balance_mean);
    fmt::print(out, "  s_cml {:.4f}\n  s_mb {:.4f}\n  s_imb {:.4f}\n", b.s_cml, b.s_mb, b.s_imb);
  }
  if (r.features) {
    fmt::print(out, "evidence: features\n");
    const auto values = r.features->as_array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      fmt::print(out, "  {} {}\n", feature_names()[i], values[i]);
    }
  }
}

// --- corpora -------------------------------------------------------------------

std::vector<CorpusEntry> list_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw InvalidArgument("corpus directory " + dir.string() + " does not exist");
  }
  std::vector<CorpusEntry> entries;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".mtx") {
      entries.push_back({e.path().stem().string(), e.path()});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return entries;
}

std::map<std::string, MatrixClass> read_label_file(std::istream& in) {
  std::map<std::string, MatrixClass> labels;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError("label line needs 'matrix,label': '" + line + "'");
    const auto cls = parse_class(fields[1]);
    if (!cls) {
      if (first && fields[1] == "label") {
        first = false;
        continue;
      }
      throw ParseError("unknown class label '" + fields[1] + "'");
    }
    first = false;
    labels[strip_mtx(fields[0])] = *cls;
  }
  return labels;
}

std::map<std::string, MatrixClass> read_label_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open label file " + path.string());
  return read_label_file(in);
}

LabelledCorpus label_corpus(const std::filesystem::path& dir,
                            const std::map<std::string, MatrixClass>* labels,
                            const AdvisorConfig& cfg, const TimerFactory& timers) {
  LabelledCorpus out;
  const auto entries = list_corpus(dir);
  std::set<std::string> seen;
  for (const CorpusEntry& entry : entries) {
    seen.insert(entry.name);
    CsrMatrix a;
    try {
      a = load_csr(entry.path);
    } catch (const Error& e) {
      out.warnings.push_back(fmt::format("skipping {}: {}", entry.name, e.what()));
      ++out.skipped;
      continue;
    }
    if (a.nrows() == 0 || a.ncols() == 0) {
      out.warnings.push_back(fmt::format("skipping {}: empty shape", entry.name));
      ++out.skipped;
      continue;
    }

    MatrixClass label;
    if (labels != nullptr) {
      const auto it = labels->find(entry.name);
      if (it == labels->end()) {
        out.warnings.push_back(fmt::format("skipping {}: no label", entry.name));
        ++out.skipped;
        continue;
      }
      label = it->second;
    } else {
      const auto timer = timers(entry.name);
      label = classify_profiling(a, cfg.profiling(), *timer).matrix_class;
    }
    out.matrices.push_back({entry.name, extract_features(a, cfg.cache()), label});
  }
  if (labels != nullptr) {
    for (const auto& [name, cls] : *labels) {
      if (!seen.count(name)) {
        out.warnings.push_back(fmt::format("label for missing matrix {} ignored", name));
      }
    }
  }
  if (out.matrices.empty()) {
    throw InvalidArgument("corpus " + dir.string() + " has no usable labelled matrices");
  }
  return out;
}

Dataset corpus_dataset(const LabelledCorpus& corpus, std::span<const std::string> subset) {
  Dataset d{{subset.begin(), subset.end()}, {}};
  for (const LabelledMatrix& m : corpus.matrices) {
    d.samples.push_back({select_features(m.features, subset), m.label});
  }
  return d;
}

void write_corpus_csv(std::ostream& out, const LabelledCorpus& corpus) {
  fmt::print(out, "matrix,{},label\n", fmt::join(feature_names(), ","));
  for (const LabelledMatrix& m : corpus.matrices) {
    fmt::print(out, "{},{},{}\n", m.name, fmt::join(m.features.as_array(), ","),
               class_name(m.label));
  }
}

// --- bench ---------------------------------------------------------------------

std::vector<std::string> bench_variant_names() {
  return {"baseline", "prefetch", "delta", "scheduled", "unrolled"};
}

BenchResult bench_variants(const CsrMatrix& a, std::span<const std::string> variants,
                           const AdvisorConfig& cfg, Timer& timer) {
  const auto known = bench_variant_names();
  for (const std::string& v : variants) {
    if (std::find(known.begin(), known.end(), v) == known.end()) {
      throw InvalidArgument(fmt::format("unknown variant '{}' (expected one of {})", v,
                                        fmt::join(known, ", ")));
    }
  }
  if (variants.empty()) throw InvalidArgument("no variants requested");

  WorkerPool pool(cfg.workers);
  const RowPartition part = partition_rows_by_nnz(a, cfg.workers);
  const std::size_t distance = default_prefetch_distance(cfg.cacheline_bytes);
  const SchedulePolicy dynamic = SchedulePolicy::dynamic(cfg.schedule_chunk);
  const bool needs_delta = std::find(variants.begin(), variants.end(), "delta") != variants.end();
  const std::optional<DeltaCsrMatrix> delta =
      needs_delta ? std::optional<DeltaCsrMatrix>(encode_delta(a)) : std::nullopt;

  const std::vector<double> x = probe_vector(a.ncols());
  std::vector<double> y(a.nrows());

  auto body_for = [&](const std::string& v) -> std::function<void()> {
    if (v == "prefetch") return [&] { spmv_prefetch(a, x, y, part, distance, pool); };
    if (v == "delta") return [&] { spmv_delta(*delta, x, y, part, pool); };
    if (v == "scheduled") return [&] { spmv_scheduled(a, x, y, dynamic, pool); };
    if (v == "unrolled") return [&] { spmv_unrolled(a, x, y, part, pool); };
    return [&] { spmv_baseline(a, x, y, part, pool); };
  };

  // Agreement with the baseline before anything is timed.
  const std::vector<double> reference = spmv_baseline(a, x, part, pool);
  for (const std::string& v : variants) {
    std::fill(y.begin(), y.end(), std::nan(""));
    body_for(v)();
    for (std::size_t i = 0; i < y.size(); ++i) {
      const bool ok = v == "unrolled"
                          ? std::abs(y[i] - reference[i]) <= 1e-10 * std::abs(reference[i]) ||
                                y[i] == reference[i]
                          : std::memcmp(&y[i], &reference[i], sizeof(double)) == 0;
      if (!ok) {
        throw Error(fmt::format("internal error: variant '{}' disagrees with baseline at row {}",
                                v, i));
      }
    }
  }

  BenchResult r;
  r.baseline_seconds =
      timed_median(timer, KernelId::kBaseline, cfg.warmup, cfg.reps, body_for("baseline"));
  double best_speedup = -1.0;
  for (const std::string& v : variants) {
    const double seconds =
        v == "baseline"
            ? r.baseline_seconds
            : timed_median(timer, *parse_kernel_name(v), cfg.warmup, cfg.reps, body_for(v));
    if (!(seconds > 0.0)) throw Error("timer failure: non-positive duration");
    const double speedup = r.baseline_seconds / seconds;
    r.variants.push_back({v, seconds, speedup});
    if (speedup > best_speedup) {
      best_speedup = speedup;
      r.best = v;
    }
  }
  return r;
}

void print_bench(std::ostream& out, const BenchResult& r) {
  fmt::print(out, "{:<10} {:>14} {:>9}\n", "variant", "seconds", "speedup");
  for (const VariantTiming& v : r.variants) {
    fmt::print(out, "{:<10} {:>14.6e} {:>9.4f}\n", v.variant, v.seconds, v.speedup);
  }
  fmt::print(out, "best: {}\n", r.best);
}

void write_bench_csv(std::ostream& out, std::string_view matrix, const BenchResult& r,
                     bool header) {
  if (header) fmt::print(out, "matrix,variant,seconds,speedup\n");
  const VariantTiming* best = nullptr;
  for (const VariantTiming& v : r.variants) {
    fmt::print(out, "{},{},{},{}\n", matrix, v.variant, v.seconds, v.speedup);
    if (v.variant == r.best) best = &v;
  }
  if (best != nullptr) {
    fmt::print(out, "{},best,{},{}\n", matrix, best->seconds, best->speedup);
  }
}

// --- report --------------------------------------------------------------------

std::vector<double> read_speedups(std::istream& in, std::string_view column,
                                  std::string_view variant_filter) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!trim(line).empty()) lines.push_back(trim(line));
  }
  std::vector<double> values;
  if (lines.empty()) return values;

  if (parse_number(split_csv(lines.front()).front())) {
    for (const std::string& line : lines) {
      const auto v = parse_number(line);
      if (!v) throw ParseError("not a number: '" + line + "'");
      values.push_back(*v);
    }
    return values;
  }

  const auto header = split_csv(lines.front());
  const auto col = std::find(header.begin(), header.end(), column);
  if (col == header.end()) {
    throw ParseError(fmt::format("results file has no '{}' column", column));
  }
  const auto value_index = static_cast<std::size_t>(col - header.begin());
  const auto vcol = std::find(header.begin(), header.end(), "variant");
  const std::optional<std::size_t> variant_index =
      vcol == header.end() ? std::nullopt
                           : std::optional<std::size_t>(vcol - header.begin());

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    if (fields.size() != header.size()) {
      throw ParseError(fmt::format("results row {} has {} fields, header has {}", i + 1,
                                   fields.size(), header.size()));
    }
    if (!variant_filter.empty() && variant_index && fields[*variant_index] != variant_filter) {
      continue;
    }
    const auto v = parse_number(fields[value_index]);
    if (!v) throw ParseError(fmt::format("row {}: '{}' is not a number", i + 1, fields[value_index]));
    values.push_back(*v);
  }
  return values;
}

void print_stats(std::ostream& out, const SpeedupStats& s) {
  fmt::print(out, "min {}\nq1 {}\nmean {}\nq3 {}\nmax {}\n", s.min, s.q1, s.mean, s.q3, s.max);
}

void write_stats_csv(std::ostream& out, const SpeedupStats& s) {
  fmt::print(out, "min,q1,mean,q3,max\n{},{},{},{},{}\n", s.min, s.q1, s.mean, s.q3, s.max);
}

// --- overhead ------------------------------------------------------------------

OverheadRecord measure_overhead(const CsrMatrix& a, AdviseMode mode, const TrainedModel* model,
                                const AdvisorConfig& cfg, Timer& timer) {
  if (mode == AdviseMode::kFeatures && model == nullptr) {
    throw UsageError("features mode needs a trained model");
  }
  OverheadRecord r;
  {
    WorkerPool pool(cfg.workers);
    const RowPartition part = partition_rows_by_nnz(a, cfg.workers);
    const std::vector<double> x(a.ncols(), 1.0);
    std::vector<double> y(a.nrows());
    r.t_spmv = timed_median(timer, KernelId::kBaseline, cfg.warmup, cfg.reps,
                            [&] { spmv_baseline(a, x, y, part, pool); });
  }

  const std::uint64_t before = kernel_invocations();
  r.t_classification =
      timer.time(KernelId::kClassification, [&] { advise(a, mode, model, cfg, timer); });
  r.classification_kernel_runs = kernel_invocations() - before;

  if (!(r.t_spmv > 0.0)) throw Error("timer failure: non-positive SpMV time");
  r.ratio = r.t_classification / r.t_spmv;
  return r;
}

void print_overhead(std::ostream& out, const OverheadRecord& r) {
  fmt::print(out, "t_classification {:.6e} s\nt_spmv {:.6e} s\nratio {:.2f} SpMV\n",
             r.t_classification, r.t_spmv, r.ratio);
  fmt::print(out, "classification kernel runs {}\n", r.classification_kernel_runs);
}

}  // namespace spmvsel
