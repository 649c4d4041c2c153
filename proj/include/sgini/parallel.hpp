#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sgini::detail {

/// Runs body(i) for i in [0, total) on up to `threads` threads (0 means
/// hardware concurrency). Work items must write to disjoint, pre-sized
/// storage so results do not depend on the schedule. The first exception
/// thrown by any item is rethrown after all threads join.
inline void parallel_for(int total, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, total);

  if (threads <= 1) {
    for (int i = 0; i < total; ++i) body(i);
    return;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const int lo = static_cast<int>(static_cast<long>(total) * t / threads);
      const int hi = static_cast<int>(static_cast<long>(total) * (t + 1) / threads);
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace sgini::detail
