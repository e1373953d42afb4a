#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qrap {

// Applies fn to every index in [0, n) with up to `workers` threads. Results
// land in a slot vector keyed by index, so output order never depends on the
// worker count or scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map_indexed(std::size_t n, int workers, Fn&& fn) {
  std::vector<T> results(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace qrap
