#pragma once
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace shubin {

// Worker count: SHUBIN_THREADS caps the pool, default hardware concurrency.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 4;
  if (const char* env = std::getenv("SHUBIN_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, cap);
  }
  return hw;
}

// Static block partition; deterministic regardless of scheduling since each
// index writes only its own slot.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int nw = worker_count();
  if (nw <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int threads = static_cast<int>(std::min<std::size_t>(nw, count));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace shubin
