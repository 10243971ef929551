/*
 * Copyright 2026 The halton-l2 Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

namespace halton {

// Counter-based generator: draw(i) depends only on (seed, stream, i), so any
// index range can be sampled independently and in any order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound > 0. Uses the multiply-high map,
  /// bias is below 2^-64 * bound.
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * bound) >> 64);
  }

  CounterRng split(std::uint64_t stream) const noexcept { return CounterRng(key_, stream); }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

// Sequential adaptor for code that just wants "the next draw".
class RngStream {
 public:
  explicit RngStream(CounterRng rng) noexcept : rng_(rng) {}
  std::uint64_t bits() noexcept { return rng_.bits(next_++); }
  double uniform() noexcept { return rng_.uniform(next_++); }
  std::uint64_t below(std::uint64_t bound) noexcept { return rng_.below(next_++, bound); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace halton
