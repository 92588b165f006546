#pragma once

#include <cstddef>
#include <functional>

namespace grr {

// Runs fn(i) for i in [0,n) on up to `jobs` threads and returns the number
// of indices where fn returned true. The result does not depend on the
// scheduling, so reports stay deterministic under any parallelism degree.
long long parallel_count(std::size_t n, int jobs,
                         const std::function<bool(std::size_t)>& fn);

}  // namespace grr
