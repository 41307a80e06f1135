#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace hsk {

// Global worker ceiling set once by the CLI from --threads; 0 = hardware default.
int max_threads() noexcept;
void set_max_threads(int n) noexcept;

// Static block partition of [begin, end) over at most max_threads() workers.
// f(i) must not depend on scheduling for results to be reproducible; all call
// sites write to disjoint slots indexed by i.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, F&& f) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (count == 0) return;
  int nthreads = max_threads();
  if (nthreads <= 0) nthreads = static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads <= 0) nthreads = 1;
  nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nthreads), count));
  if (nthreads == 1) {
    for (std::size_t i = begin; i < end; ++i) f(i);
    return;
  }
  const std::size_t chunk = (count + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    const std::size_t lo = begin + chunk * static_cast<std::size_t>(t);
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hsk
