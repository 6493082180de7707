#pragma once

#include <cstddef>
#include <functional>

namespace gibbs {

/// Upper bound on worker threads used for data-parallel loops.  Defaults to
/// the GIBBS_THREADS environment variable, else the hardware concurrency.
unsigned max_threads();
void set_max_threads(unsigned n);

/// Runs body(i) for i in [0, n), splitting the range into contiguous chunks
/// over at most max_threads() threads.  Iterations must be independent.
/// The first exception thrown by any chunk is rethrown after all joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gibbs
