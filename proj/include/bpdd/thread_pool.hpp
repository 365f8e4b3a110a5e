#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bpdd::util {

/// Worker count: BPDD_THREADS if set and positive, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("BPDD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(0..ntasks-1) over a shared atomic queue. Task order is arbitrary;
/// callers must only combine results in task-index order or with
/// order-independent reductions.
inline void parallel_for(int ntasks, const std::function<void(int)>& fn,
                         int nthreads = 0) {
  if (nthreads <= 0) nthreads = thread_count();
  nthreads = std::min(nthreads, ntasks);
  if (nthreads <= 1) {
    for (int i = 0; i < ntasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(nthreads);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  for (int t = 0; t < nthreads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= ntasks || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace bpdd::util
