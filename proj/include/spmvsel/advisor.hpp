#ifndef SPMVSEL_ADVISOR_HPP
#define SPMVSEL_ADVISOR_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/features.hpp"
#include "spmvsel/matrix_class.hpp"
#include "spmvsel/model.hpp"
#include "spmvsel/profiling.hpp"
#include "spmvsel/stats.hpp"
#include "spmvsel/timer.hpp"
#include "spmvsel/validation.hpp"

namespace spmvsel {

/// Settings shared by every command; loadable from a JSON file with the same
/// keys (thresholds as {"cml", "mb", "imb"}).
struct AdvisorConfig {
  std::size_t llc_bytes = std::size_t{32} << 20;
  std::size_t cacheline_bytes = 64;
  std::size_t workers = 1;
  std::size_t reps = 20;
  std::size_t warmup = 5;
  std::size_t schedule_chunk = 32;
  ThresholdConfig thresholds;
  std::string feature_subset = "all";

  /// Workers default to the hardware thread count.
  static AdvisorConfig defaults();

  /// Throws UsageError on non-positive values or an unknown subset preset.
  void validate() const;

  CacheConfig cache() const;
  ProfilingConfig profiling() const;
  MeasureOptions measure_options() const { return {workers, reps, warmup}; }
};

/// Overlays the keys present in a JSON config document onto `base`.
AdvisorConfig parse_config(std::istream& in, AdvisorConfig base = AdvisorConfig::defaults());
AdvisorConfig load_config(const std::filesystem::path& path,
                          AdvisorConfig base = AdvisorConfig::defaults());

// --- advise ----------------------------------------------------------------

enum class AdviseMode { kProfiling, kFeatures };

AdviseMode parse_advise_mode(std::string_view name);

struct AdviceReport {
  MatrixClass matrix_class = MatrixClass::kCMP;
  OptimizationKind optimization = OptimizationKind::kUnrollVectorize;
  std::optional<BenchmarkReport> benchmark;  // profiling evidence
  std::optional<FeatureVector> features;     // feature evidence
};

/// Profiling mode runs the micro-benchmarks with `timer`. Features mode only
/// extracts features and queries `model` (required); no kernel is executed.
AdviceReport advise(const CsrMatrix& a, AdviseMode mode, const TrainedModel* model,
                    const AdvisorConfig& cfg, Timer& timer);

void print_advice(std::ostream& out, const AdviceReport& r);

// --- corpora, labels, training ----------------------------------------------

struct CorpusEntry {
  std::string name;  // file stem
  std::filesystem::path path;
};

/// *.mtx files of `dir`, sorted by name.
std::vector<CorpusEntry> list_corpus(const std::filesystem::path& dir);

/// CSV of `matrix,label` rows (optional header). Names may carry a .mtx
/// suffix. Throws ParseError on unknown class names.
std::map<std::string, MatrixClass> read_label_file(std::istream& in);
std::map<std::string, MatrixClass> read_label_file(const std::filesystem::path& path);

/// Creates the timer used to auto-label one matrix.
using TimerFactory = std::function<std::unique_ptr<Timer>(const std::string& matrix_name)>;

struct LabelledMatrix {
  std::string name;
  FeatureVector features;
  MatrixClass label = MatrixClass::kCMP;
};

struct LabelledCorpus {
  std::vector<LabelledMatrix> matrices;
  std::vector<std::string> warnings;
  std::size_t skipped = 0;  // unparseable or unlabelled matrices
};

/// Extracts features for every corpus matrix and resolves its label, either
/// from `labels` or, when absent, with the profiling classifier using a timer
/// from `timers`. Unparseable and unlabelled matrices are skipped with a
/// warning. Throws InvalidArgument when the corpus yields nothing.
LabelledCorpus label_corpus(const std::filesystem::path& dir,
                            const std::map<std::string, MatrixClass>* labels,
                            const AdvisorConfig& cfg, const TimerFactory& timers);

/// Projects the corpus onto the configured feature subset.
Dataset corpus_dataset(const LabelledCorpus& corpus, std::span<const std::string> subset);

void write_corpus_csv(std::ostream& out, const LabelledCorpus& corpus);

// --- bench -----------------------------------------------------------------

/// Variants accepted by bench_variants().
std::vector<std::string> bench_variant_names();

struct VariantTiming {
  std::string variant;
  double seconds = 0.0;
  double speedup = 0.0;  // baseline seconds / seconds
};

struct BenchResult {
  double baseline_seconds = 0.0;
  std::vector<VariantTiming> variants;  // in request order
  std::string best;                     // highest speedup; earliest on ties
};

/// Checks each variant against the baseline (bitwise, or rel 1e-10 for the
/// unrolled kernel) and then times it with the warmup/reps policy. Throws
/// InvalidArgument for unknown variants and Error if a check fails.
BenchResult bench_variants(const CsrMatrix& a, std::span<const std::string> variants,
                           const AdvisorConfig& cfg, Timer& timer);

void print_bench(std::ostream& out, const BenchResult& r);

/// Appends `matrix,variant,seconds,speedup` rows plus a `best` row.
void write_bench_csv(std::ostream& out, std::string_view matrix, const BenchResult& r,
                     bool header);

// --- report ----------------------------------------------------------------

/// Reads numbers from a results file: either a CSV whose header has
/// `column` (rows optionally filtered on `variant == variant_filter`), or a
/// bare list of numbers, one per line.
std::vector<double> read_speedups(std::istream& in, std::string_view column = "speedup",
                                  std::string_view variant_filter = {});

/// Lines `min 1`, `q1 2`, `mean 3`, `q3 4`, `max 5` (shortest round-trip form).
void print_stats(std::ostream& out, const SpeedupStats& s);
void write_stats_csv(std::ostream& out, const SpeedupStats& s);

// --- overhead --------------------------------------------------------------

struct OverheadRecord {
  double t_classification = 0.0;
  double t_spmv = 0.0;
  double ratio = 0.0;  // t_classification / t_spmv, in SpMV operations
  std::uint64_t classification_kernel_runs = 0;
};

/// t_spmv is the median multithreaded baseline time; t_classification is one
/// complete classification in `mode` (features: extraction + prediction).
OverheadRecord measure_overhead(const CsrMatrix& a, AdviseMode mode, const TrainedModel* model,
                                const AdvisorConfig& cfg, Timer& timer);

void print_overhead(std::ostream& out, const OverheadRecord& r);

}  // namespace spmvsel

#endif  // SPMVSEL_ADVISOR_HPP
