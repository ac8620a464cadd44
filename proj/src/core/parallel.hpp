#pragma once

#include <cstddef>
#include <functional>

namespace shearwave {

/// Thread cap: SHEARWAVE_THREADS when set (>= 1), hardware concurrency
/// otherwise.
std::size_t thread_cap();

/// Static-partition parallel loop over [0, n). Each index writes only its own
/// output slot, so results are identical regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace shearwave
