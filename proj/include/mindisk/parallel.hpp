#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace mindisk {

// Thread cap from MINDISK_THREADS (0 or unset = hardware auto).
inline int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("MINDISK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0 && v < static_cast<long>(hw)) return static_cast<int>(v);
    if (v > 0) return static_cast<int>(v);
  }
  return static_cast<int>(hw);
}

// Node-wise map over [0, n). Each index writes only its own slot, so the result
// is identical for any thread count; reductions stay serial at call sites.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  int threads = thread_budget();
  if (threads <= 1 || n < 4096) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mindisk
