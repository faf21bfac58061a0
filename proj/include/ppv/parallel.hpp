#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ppv {

/// Worker count used by the entry-parallel loops. 1 means run inline.
inline std::atomic<unsigned> &thread_count() {
  static std::atomic<unsigned> n{1};
  return n;
}

/// Runs body(i) for i in [0, n). Each index is written by exactly one worker,
/// so results do not depend on scheduling.
template <class F> void parallel_for(std::size_t n, F &&body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count().load(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure)
            failure = std::current_exception();
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace ppv
