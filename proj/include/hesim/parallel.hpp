/*
 * Copyright 2026 The hesim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HESIM_PARALLEL_HPP
#define HESIM_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

#include "hesim/common.hpp"

namespace hesim {

/// Intra-run parallelism cap: HESIM_THREADS if set, otherwise the hardware
/// concurrency (at least 1).
inline unsigned max_threads() {
  if (const char* env = std::getenv("HESIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count) on up to max_threads() workers. Cells must
/// be independent; results should be written to pre-sized slots so output
/// order does not depend on scheduling.
template <typename Fn>
void parallel_for_cells(size_t count, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<size_t>(max_threads(), count));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([count, workers, w, &fn] {
      for (size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace hesim

#endif  // HESIM_PARALLEL_HPP
