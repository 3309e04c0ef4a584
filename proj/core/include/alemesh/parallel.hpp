#pragma once

#include <cstddef>
#include <functional>

namespace alemesh {

/// Worker count: ALE_MESH_THREADS if set and positive, hardware concurrency otherwise.
unsigned thread_count();

/// Calls fn(begin, end) over contiguous chunks of [0, n). Work items must be
/// independent; chunk boundaries depend only on n and the thread count, so any
/// per-item result is identical to a serial run. Small ranges run inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace alemesh
