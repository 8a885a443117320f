#pragma once

#include <cstddef>
#include <functional>

namespace soagdd {

/// Worker count for internal parallel loops. Reads SOAGDD_THREADS on every
/// call; unset, empty or 0 means std::thread::hardware_concurrency().
int thread_count();

/// Runs body(i) for every i in [0, n). Each index is processed exactly once;
/// callers write results into index-owned slots so output never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace soagdd
