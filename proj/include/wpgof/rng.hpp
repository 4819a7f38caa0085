// Copyright 2026 The wpgof Authors
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
#include <random>

namespace wpgof {

using Engine = std::mt19937_64;

/// Identifies one reproducible random stream.
///
/// A handle is a plain value: the same (seed, stream) pair always yields an
/// engine producing the same sequence, so work items can create their own
/// engines on any thread. `derive` maps a handle and a child index to a new
/// stream; children of distinct indices are statistically independent.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngHandle derive(std::uint64_t index) const noexcept;

  Engine engine() const;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline RngHandle RngHandle::derive(std::uint64_t index) const noexcept {
  return {seed, mix64(stream ^ mix64(index + 0x632be59bd9b4e019ULL))};
}

inline Engine RngHandle::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) built from the top 53 bits of one engine output.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace wpgof
