#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace nufs {

/// Process-wide worker count for grid loops. Defaults to 1 so runs are reproducible.
int thread_count();
void set_thread_count(int n);

/// Splits [0, n) into contiguous blocks, one per worker. fn(begin, end) must only write
/// to per-index state, so the result does not depend on the partitioning.
template <typename Fn>
void parallel_for(std::size_t n, Fn &&fn)
{
  std::size_t const workers = std::min<std::size_t>(std::max(1, thread_count()), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  std::size_t const chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t const lo = w * chunk;
    std::size_t const hi = std::min(n, lo + chunk);
    if (lo >= hi) { break; }
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
}

} // namespace nufs
