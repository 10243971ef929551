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

#include "halton/reduce.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace halton {

namespace {

constexpr std::size_t kLeaf = 16;

double tree_sum(const double* v, std::size_t n) {
  if (n <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(v, half) + tree_sum(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return tree_sum(values.data(), values.size()); }

std::vector<double> run_blocks(std::size_t blocks, const std::function<double(std::size_t)>& block,
                               unsigned threads) {
  std::vector<double> partial(blocks, 0.0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) partial[b] = block(b);
    return partial;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) partial[b] = block(b);
      });
    }
  }
  return partial;
}

double deterministic_block_sum(std::size_t blocks, const std::function<double(std::size_t)>& block,
                               unsigned threads) {
  const std::vector<double> partial = run_blocks(blocks, block, threads);
  return pairwise_sum(partial);
}

}  // namespace halton
