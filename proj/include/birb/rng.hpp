// Copyright 2026 The BiRB Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace birb {

using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_label(std::string_view label) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
        h = (h ^ c) * 0x100000001B3ULL;
    }
    return h;
}

/// Seed of a named substream. Substreams with distinct (label, ids) are
/// statistically independent and do not depend on scheduling order.
inline uint64_t substream_seed(uint64_t seed, std::string_view label, std::initializer_list<uint64_t> ids = {}) {
    uint64_t h = splitmix64(seed ^ hash_label(label));
    for (uint64_t id : ids) {
        h = splitmix64(h ^ splitmix64(id + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

inline Rng substream(uint64_t seed, std::string_view label, std::initializer_list<uint64_t> ids = {}) {
    return Rng(substream_seed(seed, label, ids));
}

inline bool coin(Rng &rng) {
    return (rng() >> 63) != 0;
}

inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound).
inline uint64_t uniform_below(Rng &rng, uint64_t bound) {
    return std::uniform_int_distribution<uint64_t>(0, bound - 1)(rng);
}

}  // namespace birb
