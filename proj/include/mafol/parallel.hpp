#pragma once

// Index-parallel loop driver. Every grid/sample scan in the library goes
// through for_each_index so that the serial path stays available as the
// reference the OpenMP path is tested against. Results must be written to
// per-index slots; the iteration order then does not affect the output.

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mafol {

enum class Execution { Serial, Parallel };

template <class Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  // Exceptions may not cross the OpenMP region boundary; keep the one from
  // the lowest index so the error reported matches the serial path.
  std::exception_ptr first;
  std::size_t first_index = count;
  std::mutex mu;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(mu);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mafol
