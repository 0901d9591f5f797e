#ifndef SPMVSEL_TIMER_HPP
#define SPMVSEL_TIMER_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

namespace spmvsel {

/// What a timed region executes. Used by scripted timers to pick durations.
enum class KernelId {
  kBaseline,
  kNoXMiss,
  kInflate,
  kDelta,
  kPrefetch,
  kScheduled,
  kUnrolled,
  kClassification,
};

std::string_view kernel_name(KernelId id);
std::optional<KernelId> parse_kernel_name(std::string_view name);

/// Source of durations for benchmark harnesses. Implementations must be safe
/// to call from several workers at once through time_worker().
class Timer {
 public:
  virtual ~Timer() = default;

  /// Runs `body` once and returns its duration in seconds.
  virtual double time(KernelId kernel, const std::function<void()>& body) = 0;

  /// Same, for one worker's share of a parallel region.
  virtual double time_worker(std::size_t worker, const std::function<void()>& body) = 0;
};

/// Wall-clock timer over std::chrono::steady_clock.
class SteadyTimer final : public Timer {
 public:
  double time(KernelId kernel, const std::function<void()>& body) override;
  double time_worker(std::size_t worker, const std::function<void()>& body) override;
};

/// Deterministic timer returning scripted durations. Each script is consumed
/// cyclically per kernel (or per worker). Bodies are still executed unless
/// disabled, so results and kernel counters stay observable.
class ScriptedTimer final : public Timer {
 public:
  explicit ScriptedTimer(bool execute_bodies = true) : execute_(execute_bodies) {}
  ScriptedTimer(ScriptedTimer&& other) noexcept
      : execute_(other.execute_),
        kernels_(std::move(other.kernels_)),
        workers_(std::move(other.workers_)),
        all_workers_(std::move(other.all_workers_)),
        calls_(std::move(other.calls_)) {}

  ScriptedTimer& script(KernelId kernel, std::vector<double> seconds);
  ScriptedTimer& script_worker(std::size_t worker, std::vector<double> seconds);
  /// Fallback for workers without their own script.
  ScriptedTimer& script_all_workers(std::vector<double> seconds);

  double time(KernelId kernel, const std::function<void()>& body) override;
  double time_worker(std::size_t worker, const std::function<void()>& body) override;

  /// Number of time() calls seen for `kernel`.
  std::size_t calls(KernelId kernel) const;

 private:
  struct Script {
    std::vector<double> seconds;
    std::size_t next = 0;
  };
  static double take(Script& s);

  bool execute_;
  mutable std::mutex mutex_;
  std::map<KernelId, Script> kernels_;
  std::map<std::size_t, Script> workers_;
  std::optional<Script> all_workers_;
  std::map<KernelId, std::size_t> calls_;
};

}  // namespace spmvsel

#endif  // SPMVSEL_TIMER_HPP
