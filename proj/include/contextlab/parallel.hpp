#ifndef CONTEXTLAB_PARALLEL_HPP
#define CONTEXTLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace contextlab {

/// Worker cap: CONTEXTLAB_THREADS when set (minimum 1), else the hardware
/// concurrency.
std::size_t max_threads();

/// Runs fn(0..n-1), possibly concurrently. Callers write to disjoint
/// per-index slots, so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace contextlab

#endif
