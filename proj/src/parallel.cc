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

#include "qpurity/parallel.h"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qpurity {

unsigned default_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t count, unsigned threads, std::size_t align,
                     const std::function<void(std::size_t, std::size_t)> &body) {
    if (count == 0) {
        return;
    }
    if (threads == 0) {
        threads = default_threads();
    }
    align = std::max<std::size_t>(align, 1);
    std::size_t units = (count + align - 1) / align;
    std::size_t workers = std::min<std::size_t>(threads, units);
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = std::min(count, units * w / workers * align);
        std::size_t end = std::min(count, units * (w + 1) / workers * align);
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace qpurity
