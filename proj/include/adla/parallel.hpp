// Copyright 2026 The ADLA Authors
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

#ifndef ADLA_PARALLEL_HPP
#define ADLA_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace adla {

// Worker count for column- and trace-parallel loops. 0 means "resolve":
// ADLA_THREADS if set, otherwise the hardware concurrency.
struct Parallelism {
  unsigned threads = 0;
};

unsigned resolve_threads(Parallelism par);

// Calls body(begin, end, worker) on disjoint contiguous chunks covering
// [0, count). Chunk boundaries depend only on `count` and `grain`, never on
// the thread count, so any per-chunk state seeded from the chunk index gives
// thread-count independent results.
void parallel_for(std::size_t count, std::size_t grain, Parallelism par,
                  const std::function<void(std::size_t, std::size_t,
                                           unsigned)>& body);

}  // namespace adla

#endif  // ADLA_PARALLEL_HPP
