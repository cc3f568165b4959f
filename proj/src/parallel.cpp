#include "tsagg/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tsagg {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body) {
  jobs = resolve_jobs(jobs);
  if (jobs == 1) {
    // Serial reference path: identical semantics, no thread machinery.
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    if (first_error) continue;  // drain remaining iterations cheaply
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(tsagg_parallel_for_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace tsagg
