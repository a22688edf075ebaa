#pragma once

#include <cstddef>
#include <functional>

namespace wpcn {

/// Worker count: `requested` if nonzero, else hardware concurrency, capped by
/// the WPCN_SELECT_THREADS environment variable when set. Always >= 1.
unsigned resolve_workers(unsigned requested = 0);

/// Calls body(i) for i in [0, n) on up to `workers` threads. Items are handed
/// out dynamically; callers write results by index so output order never
/// depends on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace wpcn
