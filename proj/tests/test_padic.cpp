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
#include <sstream>

#include "halton/padic.hpp"
#include "halton/rng.hpp"

using namespace halton;

TEST(Padic, OrdExamples) {
  EXPECT_EQ(PadicRational(12).ord(2), 2);
  EXPECT_EQ(PadicRational(2, 9).ord(3), -2);
  for (std::uint32_t p : {2u, 3u, 5u, 101u}) EXPECT_EQ(PadicRational(1).ord(p), 0);
  EXPECT_FALSE(PadicRational(0).ord(5).has_value());
  EXPECT_THROW(PadicRational(4).ord(6), std::invalid_argument);
  EXPECT_EQ(PadicRational(BigInt(-48), BigInt(-10)).num(), 24);
}

TEST(Padic, OrdIsMultiplicative) {
  RngStream rng(CounterRng(8, 0));
  for (int trial = 0; trial < 1000; ++trial) {
    auto draw = [&] {
      const long a = static_cast<long>(rng.below(2000000)) - 1000000;
      const long b = 1 + static_cast<long>(rng.below(1000000));
      return PadicRational(BigInt(a == 0 ? 1 : a), BigInt(b));
    };
    const PadicRational g1 = draw();
    const PadicRational g2 = draw();
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) EXPECT_EQ(*(g1 * g2).ord(p), *g1.ord(p) + *g2.ord(p));
  }
}

TEST(Padic, WeilHeight) {
  EXPECT_EQ(weil_height(PadicRational(1)), 0.0);
  EXPECT_NEAR(weil_height(PadicRational(3, 2)), std::log(3.0), 1e-15);
  EXPECT_NEAR(weil_height(PadicRational(1, 7)), std::log(7.0), 1e-15);
  EXPECT_EQ(weil_height(PadicRational(1, 7)), weil_height(PadicRational(7)));
  EXPECT_NEAR(weil_height(PadicRational(ipow(3, 1000))), 1000 * std::log(3.0), 1e-9);
  EXPECT_THROW(weil_height(PadicRational(0)), std::invalid_argument);
}

TEST(Padic, XiOrdExamples) {
  EXPECT_EQ(xi_ord({2, 3, 1, 1, 2}), 3);
  EXPECT_EQ(xi_ord({2, 3, 1, 1, 1}), 1);
  EXPECT_EQ(xi_ord({3, 2, 1, 1, 6}), 2);
  EXPECT_FALSE(xi_ord({2, 3, 5, 5, 0}).has_value());
  EXPECT_THROW(xi_ord({2, 3, 2, 1, 4}), std::invalid_argument);
  // Agrees with the valuation of the rational Xi itself.
  for (std::int64_t l1 : {-12, -3, 1, 6, 20}) {
    for (std::int64_t l2 : {-6, 2, 7, 12}) {
      for (std::uint32_t b = 0; b < 30; ++b) {
        const LinFormInstance inst{2, 3, l1, l2, b};
        if (PadicRational(l1).ord(2) != PadicRational(l2).ord(2)) continue;
        const auto v = xi_ord(inst);
        ASSERT_TRUE(v.has_value());
        EXPECT_EQ(*v, *xi_value(inst).ord(2));
      }
    }
  }
}

TEST(Padic, LteOracleAgreesWithDirectValuation) {
  for (auto [p, q] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}, {7u, 3u}, {2u, 5u}, {3u, 7u}}) {
    for (std::uint32_t b = 1; b <= 200; ++b) {
      EXPECT_EQ(lte_ord(p, q, b), *xi_ord({p, q, 1, 1, b})) << p << " " << q << " " << b;
    }
  }
}

TEST(Padic, ScanReportsAndMonotone) {
  const ScanReport small = corollary_scan(2, 3, 10, 50, true, 2);
  EXPECT_GT(small.instances, 0u);
  EXPECT_EQ(small.rows.size(), small.instances);
  EXPECT_EQ(small.lte_mismatches, 0u);
  EXPECT_GT(small.lte_checked, 0u);
  EXPECT_TRUE(std::isfinite(small.max_ratio));
  // Xi = 0 exactly when l1 p'^b = l2, which includes every l1 = l2, b = 0.
  std::uint64_t zeros = 0;
  for (long l1 = -10; l1 <= 10; ++l1) {
    for (long l2 = -10; l2 <= 10; ++l2) {
      if (l1 == 0 || l2 == 0) continue;
      for (long b = 0, pw = 1; b <= 50 && std::abs(l1) * pw <= 10; ++b, pw *= 3) zeros += (l1 * pw == l2) ? 1 : 0;
    }
  }
  EXPECT_EQ(small.degenerate, zeros);
  EXPECT_GE(small.degenerate, 20u);
  const ScanReport big = corollary_scan(2, 3, 12, 60);
  EXPECT_GE(big.max_ratio, small.max_ratio);
  EXPECT_GE(big.max_ord, small.max_ord);
  // Brute force over the kept rows.
  double best = 0;
  for (const ScanRow& r : small.rows) {
    const auto v = xi_ord({2, 3, r.l1, r.l2, r.b});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, r.ord);
    best = std::max(best, r.ratio);
  }
  EXPECT_EQ(best, small.max_ratio);
  // Thread count does not change the report.
  const ScanReport one = corollary_scan(3, 2, 10, 40, false, 1);
  const ScanReport many = corollary_scan(3, 2, 10, 40, false, 4);
  EXPECT_EQ(one.max_ratio, many.max_ratio);
  EXPECT_EQ(one.instances, many.instances);
  std::ostringstream os;
  write_scan_csv(os, small);
  EXPECT_EQ(os.str().substr(0, 18), "l1,l2,b,ord,ratio\n");
}
