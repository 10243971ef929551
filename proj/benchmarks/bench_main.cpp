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

#include <benchmark/benchmark.h>

#include "halton/discrepancy.hpp"
#include "halton/fourier.hpp"
#include "halton/padic.hpp"
#include "halton/radical.hpp"

using namespace halton;

namespace {

const BasisPair k23{Base(2), Base(3)};

void BM_RadicalInverseExact(benchmark::State& state) {
  std::uint64_t k = 1'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(radical_inverse(k++, Base(3)));
}
BENCHMARK(BM_RadicalInverseExact);

void BM_RadicalInverseFloat(benchmark::State& state) {
  std::uint64_t k = 1'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(radical_inverse_f64(k++, Base(3)));
}
BENCHMARK(BM_RadicalInverseFloat);

void BM_WarnockExact(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const PointSet set = point_set(PointSetKind::halton, k23.as_vector(), 0, n);
  for (auto _ : state) benchmark::DoNotOptimize(l2_discrepancy_squared_exact(set));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WarnockExact)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_WarnockFloat(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const FloatPointSet set = halton_f64(k23.as_vector(), 0, n);
  for (auto _ : state) benchmark::DoNotOptimize(l2_discrepancy_squared_f64(set, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WarnockFloat)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oNSquared);

void BM_StarDiscrepancy2d(benchmark::State& state) {
  const PointSet set = point_set(PointSetKind::halton, k23.as_vector(), 0, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(star_discrepancy(set));
}
BENCHMARK(BM_StarDiscrepancy2d)->Arg(16)->Arg(64);

void BM_Lemma2Decomposition(benchmark::State& state) {
  const RationalPoint x{Rational(5, 7), Rational(3, 11)};
  for (auto _ : state) benchmark::DoNotOptimize(lemma2_decomposition(x, 1'000'000, 1000, k23));
}
BENCHMARK(BM_Lemma2Decomposition);

void BM_Lemma3Sum(benchmark::State& state) {
  const RationalPoint x{Rational(5, 7), Rational(3, 11)};
  const TruncIndex r(static_cast<unsigned>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(lemma3_sum(x, r, 12345, 1000, k23));
}
BENCHMARK(BM_Lemma3Sum)->DenseRange(2, 8, 2);

void BM_CorollaryScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(corollary_scan(2, 3, 20, static_cast<std::uint32_t>(state.range(0)), false, 1));
}
BENCHMARK(BM_CorollaryScan)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
