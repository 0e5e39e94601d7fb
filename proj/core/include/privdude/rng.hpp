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

#ifndef PRIVDUDE_RNG_HPP
#define PRIVDUDE_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace privdude {

// SplitMix64 finalizer. Used both as the generator step and to derive
// substream keys.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Counter-based random stream. Streams are derived from a master seed and a
// purpose path (module tag, iteration, agent/constraint index, ...), so a
// draw depends only on (seed, path, position) and never on worker scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path) {
    std::uint64_t key = mix64(seed ^ 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t p : path) {
      key = mix64(key ^ mix64(p + 0x9E3779B97F4A7C15ULL));
    }
    return RngStream(key);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in the open interval (0, 1). 53 mantissa bits, offset by
  // half an ulp so 0 and 1 are never returned (log-safe).
  double next_unit() {
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Purpose tags for substream derivation. Values are arbitrary but fixed:
// changing them changes every seeded result.
namespace stream_tag {
inline constexpr std::uint64_t kGradient = 1;         // solver gradient noise
inline constexpr std::uint64_t kRounding = 2;         // per-agent vertex draws
inline constexpr std::uint64_t kSparseThreshold = 3;  // sparse vector init
inline constexpr std::uint64_t kSparseQuery = 4;      // sparse vector queries
inline constexpr std::uint64_t kGenerate = 5;         // instance generators
inline constexpr std::uint64_t kTrial = 6;            // sweep / test trials
}  // namespace stream_tag

}  // namespace privdude

#endif  // PRIVDUDE_RNG_HPP
