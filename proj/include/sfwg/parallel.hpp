// Deterministic cell-parallel loop. Results must be written to preassigned
// slots; reductions are performed sequentially by the caller so that output
// is bit-identical for any thread count. SFWG_THREADS caps the pool size.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sfwg {

inline int max_threads() {
  if (const char* env = std::getenv("SFWG_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). fn must only write to indexed slots.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  int nt = std::min(max_threads(), n);
  if (nt <= 1 || n < 32) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace sfwg
