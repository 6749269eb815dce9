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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qmpe {

/// SplitMix64 finalizer, used as the mixing step for substream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream key from a master seed and a counter path
/// (e.g. {record index, purpose tag}).  The key depends only on the path,
/// so parallel consumers get identical streams regardless of scheduling.
inline std::uint64_t substream_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t k = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t p : path) {
        k = splitmix64(k ^ splitmix64(p + 0x9e3779b97f4a7c15ULL));
    }
    return k;
}

inline std::mt19937_64 substream(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
    return std::mt19937_64(substream_key(seed, path));
}

} // namespace qmpe
