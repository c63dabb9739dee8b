#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP-parallel inner kernels. Reductions go through a scratch buffer that
// is summed in index order, so results are bit-identical for any thread count
// (and identical to the serial reference in reference.hpp).
namespace siglab::kernels {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Body>
void parallel_for(std::ptrdiff_t n, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#endif
}

template <class Term>
double ordered_sum(std::ptrdiff_t n, Term&& term) {
  std::vector<double> buf(static_cast<std::size_t>(n));
  parallel_for(n, [&](std::ptrdiff_t i) { buf[static_cast<std::size_t>(i)] = term(i); });
  double s = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) s += buf[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace siglab::kernels
