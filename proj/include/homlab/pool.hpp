#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace homlab {

/// Run fn(i) for i in [0, n) on up to `threads` workers.  Results must be
/// written to per-index slots; iteration order is unspecified but the set of
/// indices is exactly [0, n).
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> crew;
  int count = std::min<std::size_t>(std::size_t(threads), n);
  crew.reserve(count);
  for (int t = 0; t < count; ++t) crew.emplace_back(worker);
  for (auto& th : crew) th.join();
}

}  // namespace homlab
