// Copyright 2026 The qmpe authors
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

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace qmpe {

/// Sets the worker-thread cap for parallel_for (0 restores the hardware
/// default).  Outputs never depend on this value: workers only write to
/// per-index slots and all reductions happen sequentially afterwards.
void set_max_threads(int k);
int max_threads();

namespace detail {
int effective_threads(std::size_t n);
} // namespace detail

/// Runs fn(i) for i in [0, n) on a transient worker pool.  fn must confine
/// its writes to state owned by index i.  The first exception thrown by any
/// worker is rethrown on the calling thread.
template <class F> void parallel_for(std::size_t n, F &&fn) {
    const int n_threads = detail::effective_threads(n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace qmpe
