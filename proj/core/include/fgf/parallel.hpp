#pragma once

#include <cstddef>
#include <functional>

namespace fgf {

/// Worker count: FGF_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t thread_count();

/// Runs task(0..count-1) on up to thread_count() threads. Tasks must write to
/// disjoint outputs; results then do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace fgf
