#pragma once

#include <cstddef>
#include <functional>

namespace wlab {

/// Worker count used by the data-parallel loops. Defaults to the
/// WLAB_THREADS environment variable, else the hardware concurrency.
std::size_t thread_count();

/// Caps the worker count; 0 restores the default.
void set_thread_count(std::size_t n);

/// Runs body(lo, hi) over [0, n) split into contiguous chunks of at most
/// `grain` items. Chunk boundaries depend only on (n, grain), never on the
/// thread count, so per-chunk results are schedule independent.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wlab
