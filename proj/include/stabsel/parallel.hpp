#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace stabsel {

/// Worker count from the STABSEL_WORKERS environment variable, falling back to
/// std::thread::hardware_concurrency() (at least 1).
std::size_t default_workers();

/**
 * Runs body(i) for i in [0, count) on up to `workers` threads.
 *
 * Indices are handed out dynamically, so callers must write results into
 * per-index slots. If any body throws, the exception from the lowest failing
 * index is rethrown after all threads have joined.
 */
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace stabsel
