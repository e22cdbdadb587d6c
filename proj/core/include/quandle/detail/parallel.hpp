#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace quandle::detail {

// Runs fn(i) for every i in [0, count) on up to `jobs` threads. Work items are
// claimed dynamically; callers write results into slot i so the merged output
// never depends on scheduling. The first exception thrown by any worker is
// rethrown on the calling thread.
template <class Fn>
void parallel_for(unsigned jobs, std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1U, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace quandle::detail
