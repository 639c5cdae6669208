#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dzlab {

// Runs fn(block) for block = 0..n_blocks-1 on up to `workers` threads.
// Block indices are handed out from an atomic counter; callers must make each
// block independent (typically via RandomStream::block_seed) and merge results
// in block order afterwards, so the worker count never affects output.
inline void run_blocks(int n_blocks, int workers,
                       const std::function<void(int)>& fn) {
  if (workers <= 1 || n_blocks <= 1) {
    for (int b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (;;) {
      int b = next.fetch_add(1);
      if (b >= n_blocks || failed.load()) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  int nthreads = std::min(workers, n_blocks);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace dzlab
