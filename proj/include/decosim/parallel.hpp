#pragma once

#include <cstddef>
#include <functional>

namespace decosim {

/// True when DECOSIM_NO_PARALLEL=1 is set in the environment.
bool parallel_disabled();

/// Runs fn(0..n-1), possibly on several threads. Each index must write
/// only its own output slot; callers reduce in fixed index order
/// afterwards, so results are identical with and without threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace decosim
