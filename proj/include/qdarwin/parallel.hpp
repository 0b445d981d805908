#pragma once

#include <cstddef>
#include <functional>

namespace qdarwin {

/// Worker count used when a caller passes 0. Read from QDARWIN_THREADS
/// (0 or unset = hardware concurrency).
std::size_t default_thread_count();

/// Calls body(i) for every i in [0, n), split into contiguous blocks over
/// `threads` workers (0 = default_thread_count()). body must only write to
/// per-index storage. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace qdarwin
