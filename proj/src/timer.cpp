#include "spmvsel/timer.hpp"

#include <array>
#include <chrono>
#include <utility>

#include <fmt/core.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

constexpr std::array<std::pair<KernelId, std::string_view>, 8> kKernelNames = {{
    {KernelId::kBaseline, "baseline"},
    {KernelId::kNoXMiss, "noxmiss"},
    {KernelId::kInflate, "inflate"},
    {KernelId::kDelta, "delta"},
    {KernelId::kPrefetch, "prefetch"},
    {KernelId::kScheduled, "scheduled"},
    {KernelId::kUnrolled, "unrolled"},
    {KernelId::kClassification, "classification"},
}};

double elapsed(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

std::string_view kernel_name(KernelId id) {
  for (const auto& [k, name] : kKernelNames) {
    if (k == id) return name;
  }
  return "unknown";
}

std::optional<KernelId> parse_kernel_name(std::string_view name) {
  for (const auto& [k, n] : kKernelNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

double SteadyTimer::time(KernelId, const std::function<void()>& body) { return elapsed(body); }

double SteadyTimer::time_worker(std::size_t, const std::function<void()>& body) {
  return elapsed(body);
}

ScriptedTimer& ScriptedTimer::script(KernelId kernel, std::vector<double> seconds) {
  std::lock_guard lock(mutex_);
  kernels_[kernel] = Script{std::move(seconds), 0};
  return *this;
}

ScriptedTimer& ScriptedTimer::script_worker(std::size_t worker, std::vector<double> seconds) {
  std::lock_guard lock(mutex_);
  workers_[worker] = Script{std::move(seconds), 0};
  return *this;
}

ScriptedTimer& ScriptedTimer::script_all_workers(std::vector<double> seconds) {
  std::lock_guard lock(mutex_);
  all_workers_ = Script{std::move(seconds), 0};
  return *this;
}

double ScriptedTimer::take(Script& s) {
  if (s.seconds.empty()) throw Error("scripted timer has an empty script");
  const double v = s.seconds[s.next % s.seconds.size()];
  ++s.next;
  return v;
}

double ScriptedTimer::time(KernelId kernel, const std::function<void()>& body) {
  if (execute_) body();
  std::lock_guard lock(mutex_);
  ++calls_[kernel];
  const auto it = kernels_.find(kernel);
  if (it == kernels_.end()) {
    throw Error(fmt::format("no scripted time for kernel '{}'", kernel_name(kernel)));
  }
  return take(it->second);
}

double ScriptedTimer::time_worker(std::size_t worker, const std::function<void()>& body) {
  if (execute_) body();
  std::lock_guard lock(mutex_);
  if (const auto it = workers_.find(worker); it != workers_.end()) return take(it->second);
  if (all_workers_) return take(*all_workers_);
  throw Error(fmt::format("no scripted time for worker {}", worker));
}

std::size_t ScriptedTimer::calls(KernelId kernel) const {
  std::lock_guard lock(mutex_);
  const auto it = calls_.find(kernel);
  return it == calls_.end() ? 0 : it->second;
}

}  // namespace spmvsel
