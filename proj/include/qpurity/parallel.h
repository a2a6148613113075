// Copyright 2026 The qpurity Authors
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

#ifndef QPURITY_PARALLEL_H
#define QPURITY_PARALLEL_H

#include <cstddef>
#include <functional>

namespace qpurity {

/// Worker count used when a caller passes 0: hardware concurrency, at least 1.
unsigned default_threads();

/// Splits [0, count) into contiguous chunks whose boundaries are multiples of
/// `align` and runs body(begin, end) on up to `threads` workers. Exceptions
/// thrown by a worker are rethrown on the calling thread.
void parallel_chunks(std::size_t count, unsigned threads, std::size_t align,
                     const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace qpurity

#endif
