// Copyright 2026 hubcd contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small work-stealing-free parallel loop. Thread count comes from the
// HUBCD_THREADS environment variable (default: hardware concurrency).
// Numeric results must be accumulated per index and reduced in index order
// so outputs do not depend on the thread count.

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hubcd {

inline int env_thread_count() {
  if (const char* s = std::getenv("HUBCD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Invokes fn(i) for i in [0, n) across up to n_threads threads. The first
// exception thrown by fn is rethrown on the caller after all threads stop.
template <class F>
void parallel_for(std::int64_t n, F&& fn, int n_threads = env_thread_count()) {
  if (n <= 0) return;
  if (n_threads > n) n_threads = static_cast<int>(n);
  if (n_threads <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        next.store(n, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads - 1));
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Mean of fn(i) over i in [0, n); reduction runs in index order after the
// parallel phase, so the result is identical for any thread count.
template <class F>
double parallel_mean(std::int64_t n, F&& fn,
                     int n_threads = env_thread_count()) {
  if (n <= 0) throw std::invalid_argument("parallel_mean: n must be positive");
  std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
  parallel_for(
      n, [&](std::int64_t i) { vals[static_cast<std::size_t>(i)] = fn(i); },
      n_threads);
  double acc = 0.0;
  for (const double v : vals) acc += v;
  return acc / static_cast<double>(n);
}

}  // namespace hubcd
