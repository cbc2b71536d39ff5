// Copyright 2026 The cslheat Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace cslheat {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream seed derived from (root seed, counter). Streams are fixed by
/// their counter, so parallel consumers (trajectories, paths) get the
/// same numbers regardless of scheduling order.
inline std::uint64_t derive_stream(std::uint64_t root_seed, std::uint64_t counter) {
    return splitmix64(splitmix64(root_seed) ^ splitmix64(counter + 0x243f6a8885a308d3ULL));
}

inline std::mt19937_64 derived_engine(std::uint64_t root_seed, std::uint64_t counter) {
    return std::mt19937_64(derive_stream(root_seed, counter));
}

} // namespace cslheat
