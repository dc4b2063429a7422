#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace courtnet {

/// Applies `fn(i)` for every i in [0, n) on a bounded pool of worker threads.
/// `fn` must write only to its own slot; results are therefore in index order
/// whatever the scheduling was. `fn` must not throw.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned max_workers = 0) {
  unsigned workers = max_workers ? max_workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

}  // namespace courtnet
