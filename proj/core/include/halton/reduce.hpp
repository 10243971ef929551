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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace halton {

/// Pairwise (tree) summation. The tree shape depends only on values.size().
double pairwise_sum(std::span<const double> values);

/// Evaluates block(b) for b in [0, blocks) on up to `threads` workers and
/// returns the results indexed by block. Results do not depend on the worker
/// count or scheduling. threads == 0 picks hardware_concurrency().
std::vector<double> run_blocks(std::size_t blocks, const std::function<double(std::size_t)>& block,
                               unsigned threads = 0);

/// Fixed-shape parallel reduction: sum of block(b) over all blocks, combined
/// with pairwise_sum. Run-to-run identical for any thread count.
double deterministic_block_sum(std::size_t blocks, const std::function<double(std::size_t)>& block,
                               unsigned threads = 0);

}  // namespace halton
