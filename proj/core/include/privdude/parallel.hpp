// Copyright 2026 The PrivDude Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDUDE_PARALLEL_HPP
#define PRIVDUDE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace privdude {

// Worker count: PRIVDUDE_THREADS if set and positive, else all hardware
// threads. Read once per call so tests can flip the variable.
int thread_count();

// Runs fn(i) for i in [0, n). Work is split in fixed index blocks; results
// must be written to disjoint slots so the outcome is independent of the
// thread count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace privdude

#endif  // PRIVDUDE_PARALLEL_HPP
