#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperdet::detail {

// Runs body(worker, task) for task in [0, tasks) on `jobs` threads. Tasks are
// claimed in order from a shared counter; callers write results into
// per-task slots so the reduction order never depends on scheduling.
template <class Body>
void parallel_tasks(std::size_t tasks, int jobs, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || tasks <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(std::size_t{0}, t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, tasks); ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = next++; t < tasks; t = next++) body(w, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hyperdet::detail
