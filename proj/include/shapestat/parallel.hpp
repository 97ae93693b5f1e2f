#pragma once

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace shapestat {

// Worker cap: SHAPESTAT_THREADS env var, 0 or unset = all available cores.
int max_threads();

// Runs fn(i) for i in [0, n). Work items must be independent; results must be
// written to preallocated per-index slots so that aggregate outputs do not
// depend on the thread count. `threads <= 1` is the serial reference path.
template <class F>
void parallel_for(std::size_t n, F&& fn, int threads) {
#if defined(_OPENMP)
  if (threads > 1 && n > 1) {
    std::int64_t m = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < m; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <class F>
void parallel_for(std::size_t n, F&& fn) {
  parallel_for(n, fn, max_threads());
}

// Order-fixed compensated sum over a per-index buffer; gives the same result
// whatever thread count produced the buffer.
double kahan_sum(const double* values, std::size_t n);

}  // namespace shapestat
