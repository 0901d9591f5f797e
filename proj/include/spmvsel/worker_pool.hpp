#ifndef SPMVSEL_WORKER_POOL_HPP
#define SPMVSEL_WORKER_POOL_HPP

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace spmvsel {

/// Fixed-size fork/join pool. Worker 0 is the calling thread; the remaining
/// size()-1 workers are persistent threads parked between regions.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return threads_.size() + 1; }

  /// Runs body(w) once on every worker w in [0, size()) and returns when all
  /// have finished. The first exception thrown by any worker is rethrown.
  void run(const std::function<void(std::size_t)>& body);

  /// Static round-robin: worker w executes tasks w, w+size(), ...
  void for_each_task(std::size_t tasks, const std::function<void(std::size_t)>& task);

  /// Rows [0, n) split into chunks of `chunk` rows handed out on demand from a
  /// shared counter; a worker only stops once no unclaimed chunk remains.
  void for_each_chunk(std::size_t n, std::size_t chunk,
                      const std::function<void(std::size_t, std::size_t)>& body);

 private:
  void worker_loop(std::size_t index);

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* body_ = nullptr;
  std::size_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

/// Process-wide pool sized to std::thread::hardware_concurrency().
WorkerPool& default_pool();

}  // namespace spmvsel

#endif  // SPMVSEL_WORKER_POOL_HPP
