#pragma once
#include <cstddef>
#include <functional>

namespace floquet {

// Runs body(i) for i in [0, count) on a small thread pool. Results must be
// written to per-index slots so the output order does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace floquet
