#pragma once

#include <cstddef>
#include <functional>

namespace dyson {

/// Worker cap: DYSON_THREADS if set to a positive integer, else hardware concurrency.
[[nodiscard]] std::size_t worker_count();

/// Runs task(i) for i in [0, count) on up to worker_count() threads. Tasks must
/// write only to their own slot; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace dyson
