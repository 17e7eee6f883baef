#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bohr::detail {

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk_index)
/// on worker threads. Chunk boundaries depend only on n and the worker count
/// so callers can reduce per-chunk results in index order.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t min_chunk, Fn&& fn) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::clamp<std::size_t>(n / std::max<std::size_t>(1, min_chunk), 1, hw);
  if (workers == 1) {
    fn(std::size_t{0}, n, std::size_t{0});
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
}

inline std::size_t chunk_count_upper_bound() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace bohr::detail
