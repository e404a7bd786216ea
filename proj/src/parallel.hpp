// Minimal deterministic parallel-for used by scans and Monte-Carlo chunking.
// Work items are partitioned statically by index; each item writes only its
// own output slot, so results never depend on the worker count.
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zzb::internal {

inline std::atomic<int>& thread_limit_slot() {
  static std::atomic<int> limit{0};  // 0 = no programmatic limit
  return limit;
}

inline void set_thread_limit(int n) { thread_limit_slot().store(n); }

inline int effective_threads(std::size_t n_items) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("ZZBOUND_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  const int prog = thread_limit_slot().load();
  if (prog >= 1 && prog < n) n = prog;
  if (static_cast<std::size_t>(n) > n_items) n = static_cast<int>(n_items);
  return n < 1 ? 1 : n;
}

// Runs fn(i) for i in [0, n).  Exceptions are captured and the first one
// (lowest index) is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  if (n == 0) return;
  const int workers = effective_threads(n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::size_t first_error_index = n;
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zzb::internal
