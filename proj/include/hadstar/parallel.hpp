#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace hadstar {

/// Runs f(i) for i in [begin, end) over up to `threads` workers. Callers use
/// this only for pure per-index work writing to disjoint slots, so results do
/// not depend on the schedule.
template <class F>
void parallel_for(int begin, int end, int threads, F&& f) {
  int n = end - begin;
  if (n <= 0) return;
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(threads));
  int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = begin + t * chunk;
    int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (int i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hadstar
