#include "spmvsel/worker_pool.hpp"

#include <algorithm>
#include <atomic>
#include <utility>

#include "spmvsel/error.hpp"

namespace spmvsel {

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers == 0) throw InvalidArgument("worker pool needs at least one worker");
  threads_.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    threads_.emplace_back([this, w] { worker_loop(w); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::worker_loop(std::size_t index) {
  std::size_t seen = 0;
  for (;;) {
    const std::function<void(std::size_t)>* body = nullptr;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
      body = body_;
    }
    try {
      (*body)(index);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerPool::run(const std::function<void(std::size_t)>& body) {
  if (threads_.empty()) {
    body(0);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    body_ = &body;
    pending_ = threads_.size();
    error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  std::exception_ptr own;
  try {
    body(0);
  } catch (...) {
    own = std::current_exception();
  }

  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
  body_ = nullptr;
  if (own) std::rethrow_exception(own);
  if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

void WorkerPool::for_each_task(std::size_t tasks,
                               const std::function<void(std::size_t)>& task) {
  const std::size_t workers = size();
  if (tasks == 1 || workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) task(t);
    return;
  }
  run([&](std::size_t w) {
    for (std::size_t t = w; t < tasks; t += workers) task(t);
  });
}

void WorkerPool::for_each_chunk(std::size_t n, std::size_t chunk,
                                const std::function<void(std::size_t, std::size_t)>& body) {
  if (chunk == 0) throw InvalidArgument("chunk size must be at least 1");
  std::atomic<std::size_t> next{0};
  run([&](std::size_t) {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= n) return;
      body(begin, std::min(n, begin + chunk));
    }
  });
}

WorkerPool& default_pool() {
  static WorkerPool pool(std::max(1u, std::thread::hardware_concurrency()));
  return pool;
}

}  // namespace spmvsel
