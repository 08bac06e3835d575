// Copyright 2026 The JointDamage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal helper shared by the library sources.

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace jointdamage {

// Runs body(begin, end) over [0, n) split into contiguous chunks. Each chunk
// writes only its own slice of the output, so the result does not depend on
// the split. With num_threads == 0 the thread count is capped so that each
// chunk holds at least min_per_thread items.
template <typename Body>
void ParallelFor(size_t n, unsigned num_threads, size_t min_per_thread, Body&& body) {
  unsigned threads = num_threads != 0 ? num_threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  if (num_threads == 0) {
    threads = static_cast<unsigned>(
        std::min<size_t>(threads, std::max<size_t>(1, n / min_per_thread)));
  }
  if (threads <= 1 || n < 2) {
    body(size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const size_t begin = std::min(n, t * chunk);
    const size_t end = std::min(n, begin + chunk);
    if (begin == end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace jointdamage
