// Copyright 2026 The LQAS Authors
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
#include <random>
#include <string_view>

namespace lqas {

using Rng = std::mt19937_64;

/// Derives an independent sub-stream seed from a root seed and a stream name.
/// Changing the seed of one named stream leaves every other stream fixed.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t root,
                                                  std::string_view stream,
                                                  std::uint64_t index = 0) {
    // FNV-1a over the name, then a splitmix64 finaliser over the mix.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = root ^ h ^ (index * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

[[nodiscard]] inline Rng make_rng(std::uint64_t root, std::string_view stream,
                                  std::uint64_t index = 0) {
    return Rng{derive_seed(root, stream, index)};
}

} // namespace lqas
