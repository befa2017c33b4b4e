#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tlgpinn {

/// Worker count from TLGPINN_WORKERS, defaulting to the available hardware
/// parallelism.
int default_workers();

/// Runs fn(task, worker) for task in [0, n) on up to `workers` threads.  Tasks
/// are claimed in index order; the first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const int w = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int id = 0; id < w; ++id) {
    pool.emplace_back([&, id] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i, id);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tlgpinn
