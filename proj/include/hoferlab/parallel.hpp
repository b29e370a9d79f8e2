#pragma once

#include <cstddef>
#include <functional>

namespace hoferlab::par {

// Worker count: HOFERLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency.  Read on every call so tests can flip it.
int thread_count();

// Run body(0) .. body(n-1) across thread_count() workers in contiguous
// chunks.  The first exception thrown by any worker is rethrown here.
// Callers that want deterministic output should write into preallocated
// slots indexed by the argument; the schedule never reorders results then.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hoferlab::par
