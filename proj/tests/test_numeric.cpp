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

#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "halton/numeric.hpp"
#include "halton/reduce.hpp"
#include "halton/rng.hpp"

using namespace halton;

TEST(Numeric, ModFloorAndSignedResidue) {
  EXPECT_EQ(mod_floor(BigInt(-7), BigInt(3)), 2);
  EXPECT_EQ(mod_floor(BigInt(7), BigInt(3)), 1);
  // Window for M = 4 is [-1, 2].
  for (int a = -10; a <= 10; ++a) {
    const BigInt r = signed_residue(BigInt(a), BigInt(4));
    EXPECT_GE(r, -1);
    EXPECT_LE(r, 2);
    EXPECT_EQ(mod_floor(BigInt(a) - r, BigInt(4)), 0);
  }
  EXPECT_EQ(signed_residue(BigInt(5), BigInt(1)), 0);
}

TEST(Numeric, RationalText) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational(" 6/8 "), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Numeric, ToDoubleOfHugeRational) {
  const Rational q(ipow(3, 400) + 1, ipow(3, 401));
  EXPECT_NEAR(to_double(q), 1.0 / 3.0, 1e-16);
  EXPECT_EQ(bit_length(BigInt(8)), 4u);
  EXPECT_EQ(bit_length(BigInt(0)), 0u);
  EXPECT_THROW(to_int64(ipow(2, 64)), std::overflow_error);
  EXPECT_EQ(to_int64(from_int64(-5)), -5);
}

TEST(Rng, CounterBasedAndReproducible) {
  const CounterRng a(42, 0);
  const CounterRng b(42, 0);
  const CounterRng c(42, 1);
  for (std::uint64_t k = 0; k < 100; ++k) {
    EXPECT_EQ(a.bits(k), b.bits(k));
    const double u = a.uniform(k);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(a.below(k, 7), 7u);
  }
  EXPECT_NE(a.bits(0), c.bits(0));
  RngStream s(a);
  EXPECT_EQ(s.bits(), a.bits(0));
  EXPECT_EQ(s.bits(), a.bits(1));
}

TEST(Reduce, PairwiseSumMatchesExactForIntegers) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 999.0 * 1000.0 / 2.0);
  EXPECT_EQ(pairwise_sum(std::span<const double>{}), 0.0);
}

TEST(Reduce, BlockSumIndependentOfThreadCount) {
  auto block = [](std::size_t b) { return std::sin(static_cast<double>(b)) * 1e-3 + 1.0 / (b + 1.0); };
  const double one = deterministic_block_sum(997, block, 1);
  for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(deterministic_block_sum(997, block, t), one);
  const auto rows = run_blocks(5, [](std::size_t b) { return static_cast<double>(b * b); }, 4);
  EXPECT_EQ(rows, (std::vector<double>{0, 1, 4, 9, 16}));
}
