#pragma once

#include <cstddef>
#include <functional>

namespace tsagg {

// True when the library was compiled with OpenMP.
bool openmp_enabled();

// Resolve a --jobs value: 0 means "use all hardware threads", anything else
// is taken literally.  Always at least 1.
int resolve_jobs(int jobs);

// Runs body(0) .. body(n-1) on `jobs` threads.  jobs == 1 takes a plain
// serial loop (the reference path used by tests and the benchmark); jobs > 1
// uses an OpenMP parallel-for with dynamic scheduling.  Iterations must be
// independent.  The first exception thrown by any iteration is rethrown on
// the calling thread once all iterations have finished or been abandoned.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace tsagg
