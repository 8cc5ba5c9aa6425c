#pragma once

#include <cstddef>
#include <functional>

namespace digraphon {

/// Worker count: DIGRAPHON_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (0 or unset means auto).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers. Results must
/// be written to per-index slots; exceptions are rethrown on the caller
/// (first index wins, so failures are deterministic).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace digraphon
