#pragma once

#include <cstddef>
#include <functional>

namespace scargeo {

/// Worker count from SCARGEO_THREADS; falls back to hardware concurrency.
unsigned thread_count();

/// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on each.
/// Chunks never overlap, so results do not depend on the thread count as long
/// as `body` only writes to its own range.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace scargeo
