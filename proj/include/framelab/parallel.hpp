#pragma once

#include <cstddef>
#include <functional>

namespace framelab {

/// Worker count used by parallel_for. Defaults to 1.
void set_threads(unsigned n);
unsigned threads();

/// Calls body(i) for every i in [0, n), split into contiguous chunks across
/// threads(). Each index is handled exactly once; callers write results into
/// per-index slots and reduce afterwards in index order, which keeps results
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace framelab
