#pragma once

#include <cstddef>
#include <functional>

namespace gp {

/// Worker count: GP_THREADS if set (>= 1), else hardware concurrency.
[[nodiscard]] unsigned thread_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous
/// static blocks, so any per-index output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace gp
