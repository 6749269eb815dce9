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

#include "qmpe/parallel.hpp"

#include <algorithm>

namespace qmpe {

namespace {
std::atomic<int> g_max_threads{0};
} // namespace

void set_max_threads(int k) { g_max_threads.store(k < 0 ? 0 : k); }

int max_threads() {
    const int k = g_max_threads.load();
    if (k > 0) {
        return k;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
int effective_threads(std::size_t n) {
    if (n < 2) {
        return 1;
    }
    return static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n));
}
} // namespace detail

} // namespace qmpe
