#include "lapoly/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lapoly {

int worker_count() {
  const char* env = std::getenv("LAPOLY_THREADS");
  long requested = 0;
  if (env && *env) {
    char* end = nullptr;
    requested = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || requested < 0)
      throw std::invalid_argument("LAPOLY_THREADS must be a nonnegative integer");
  }
  if (requested == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    requested = hw ? static_cast<long>(hw) : 1;
  }
  return static_cast<int>(std::min(requested, 256L));
}

void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (count <= 0)
    return;
  const int workers = std::min<std::int64_t>(worker_count(), count);
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::exception_ptr failure;
  std::mutex guard;
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = std::int64_t(w) * chunk;
    const std::int64_t end = std::min(begin + chunk, count);
    if (begin >= end)
      break;
    threads.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace lapoly
