#pragma once

#include <cstdint>
#include <functional>

namespace lapoly {

// Worker count resolved from LAPOLY_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Splits [0, count) into contiguous chunks, one worker per chunk. The body
// must not touch indices outside its chunk; chunk boundaries never split a
// reduction, so results do not depend on the worker count.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

} // namespace lapoly
