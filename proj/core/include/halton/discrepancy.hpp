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
#include <span>
#include <string_view>
#include <vector>

#include "halton/numeric.hpp"
#include "halton/radical.hpp"
#include "halton/residue.hpp"

namespace halton {

enum class Mode { exact, fast };

std::string_view to_string(Mode mode);
/// "exact" or "float".
Mode parse_mode(std::string_view name);

/// Exact point counts at or below this size default to exact arithmetic.
inline constexpr std::uint64_t kExactModeLimit = std::uint64_t{1} << 12;

inline Mode default_mode(std::uint64_t count) { return count <= kExactModeLimit ? Mode::exact : Mode::fast; }

struct DiscrepancyValue {
  Mode mode = Mode::exact;
  Rational exact;      // meaningful in exact mode
  double approx = 0.0; // always filled

  static DiscrepancyValue from_exact(Rational value);
  static DiscrepancyValue from_float(double value);
};

/// #{n : beta_n in [0, x)} for half-open anchored boxes.
std::uint64_t count_in_box(const RationalPoint& x, const PointSet& set);

/// D(x, P) = #{n : beta_n in [0,x)} - N x_1 ... x_s, with x_i in (0, 1].
DiscrepancyValue local_discrepancy(const RationalPoint& x, const PointSet& set);
double local_discrepancy_f64(std::span<const double> x, const FloatPointSet& set);

/// Integral of D(x)^2 over the unit cube via Warnock's pair-sum identity.
/// Exact mode returns an exact rational; fast mode reduces with a fixed
/// block tree, so results do not depend on the thread count.
DiscrepancyValue l2_discrepancy_squared(const PointSet& set, Mode mode = Mode::exact, unsigned threads = 0);
Rational l2_discrepancy_squared_exact(const PointSet& set);
double l2_discrepancy_squared_f64(const FloatPointSet& set, unsigned threads = 0);

/// sup over (0,1]^s of |D(x)| for s in {1, 2}, exact. Throws for s >= 3.
DiscrepancyValue star_discrepancy(const PointSet& set);

/// [x]_r: keep the first r base-p digits. [1]_r = 1.
Rational truncate(const Rational& x, Base p, unsigned r);
RationalPoint truncate(const RationalPoint& x, TruncIndex r, const BasisPair& bases);

/// n = floor(log2 N) + 1, independent of the bases.
unsigned truncation_depth(std::uint64_t count);

/// D([x]_(n,n), (H_2(k))_{k=Q}^{Q+N-1}).
Rational truncated_discrepancy(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                               const BasisPair& bases);

/// Local discrepancy of the Halton points Q..Q+N-1 at corner x, x_i in [0, 1].
Rational halton_local_discrepancy(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                                  const BasisPair& bases);

/// #{k in [Q, Q+N) : k = a (mod P)}.
BigInt count_congruent(const BigInt& a, const BigInt& modulus, const BigInt& start, std::uint64_t count);

/// The elementary-box term of the truncated discrepancy for depth pair r:
///   sum_{b1 < x_{1,r1}} sum_{b2 < x_{2,r2}} sum_{k=Q}^{Q+N-1} (delta_P(k - X_{r,b}) - 1/P).
/// Empty (zero) when either digit x_{i,r_i} vanishes.
Rational lemma2_term(const RationalPoint& x, TruncIndex r, const BigInt& start, std::uint64_t count,
                     const BasisPair& bases);

/// All terms for r in [1,n]^2 at once, n = truncation_depth(N).
struct Lemma2Decomposition {
  unsigned depth = 0;
  std::vector<Rational> terms;  // row-major: (r1 - 1) * depth + (r2 - 1)
  Rational total;
  Rational max_abs;

  const Rational& term(unsigned r1, unsigned r2) const { return terms[(r1 - 1) * depth + (r2 - 1)]; }
};

Lemma2Decomposition lemma2_decomposition(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                                         const BasisPair& bases);

/// The same terms for explicit digit vectors (length >= depth each). Used by
/// the grid enumerations where every digit cell is visited.
std::vector<Rational> lemma2_terms_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                                               unsigned depth, const BigInt& start, std::uint64_t count,
                                               const BasisPair& bases);

}  // namespace halton
