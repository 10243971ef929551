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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "halton/numeric.hpp"
#include "halton/radical.hpp"

namespace halton {

/// Truncation depths (r1, r2). Zero is allowed and means "modulus 1".
class TruncIndex {
 public:
  static constexpr unsigned kMaxDepth = 4096;

  TruncIndex(unsigned r1, unsigned r2);

  unsigned r1() const noexcept { return r_[0]; }
  unsigned r2() const noexcept { return r_[1]; }
  unsigned operator[](std::size_t i) const noexcept { return r_[i]; }

  friend bool operator==(const TruncIndex&, const TruncIndex&) = default;
  friend auto operator<=>(const TruncIndex&, const TruncIndex&) = default;

 private:
  std::array<unsigned, 2> r_;
};

/// P = p1^r1 p2^r2 together with the CRT inverses
///   p2^r2 M1 = 1 (mod p1^r1),  p1^r1 M2 = 1 (mod p2^r2),  M_i in [0, p_i^r_i).
struct ResidueData {
  BasisPair bases;
  TruncIndex r;
  BigInt modulus;
  std::array<BigInt, 2> prime_power;
  std::array<BigInt, 2> inverse;

  /// P / p_i^{r_i}, i.e. the cofactor multiplying M_i.
  BigInt cofactor(std::size_t i) const { return prime_power[1 - i]; }
  std::string to_string() const;
};

ResidueData crt_inverses(const BasisPair& bases, TruncIndex r);

/// Inverse of a modulo m by the extended Euclidean algorithm, in [0, m).
/// Modulus 1 yields 0. Throws std::domain_error if gcd(a, m) != 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// First `depth` base-p digits x_1..x_depth of x in [0, 1]. The point x = 1
/// is encoded as the single leading digit p followed by zeros, so that
/// sum_j x_j p^{-j} reproduces it and [1]_r = 1 for every r >= 1.
std::vector<std::uint32_t> leading_digits(const Rational& x, Base p, unsigned depth);

/// sum_{j <= digits.size()} digits[j-1] p^{j-1}.
BigInt digit_index(std::span<const std::uint32_t> digits, Base p);

/// X_r in [0, P): the residue class of k for which [H(k)]_r = [x]_r.
BigInt x_residue(const RationalPoint& x, const ResidueData& rd);

/// X_{r,b} in [0, P): as x_residue but with the r_i-th digit replaced by b_i.
/// Requires b_i <= x_{i,r_i}.
BigInt x_residue_b(const RationalPoint& x, const ResidueData& rd, std::array<std::uint32_t, 2> b);

/// X_r and X_{r,b} from precomputed digit prefixes (both coordinates, at
/// least r_i digits each). Used by the sweeps to avoid recomputing digits.
BigInt x_residue_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                             const ResidueData& rd);
BigInt x_residue_b_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                               const ResidueData& rd, std::array<std::uint32_t, 2> b);

/// H_2(k) in [y1, y1 + p1^-s1) x [y2, y2 + p2^-s2), decided by the single
/// congruence k = p2^s2 M1 k1 + p1^s1 M2 k2 (mod p1^s1 p2^s2). The corner y
/// must have exactly s_i-digit expansions (denominator dividing p_i^{s_i});
/// anything else is rejected rather than truncated.
bool membership_test(const BigInt& k, const RationalPoint& y, TruncIndex s, const BasisPair& bases);

/// The complete residue system I_M = [-floor((M-1)/2), floor(M/2)].
class SignedResidueSet {
 public:
  explicit SignedResidueSet(BigInt modulus);

  const BigInt& modulus() const noexcept { return modulus_; }
  const BigInt& lo() const noexcept { return lo_; }
  const BigInt& hi() const noexcept { return hi_; }
  const BigInt& size() const noexcept { return modulus_; }
  bool contains(const BigInt& a) const { return a >= lo_ && a <= hi_; }
  /// The unique element congruent to a.
  BigInt reduce(const BigInt& a) const { return signed_residue(a, modulus_); }
  /// Materialized elements in increasing order; refuses moduli above 10^7.
  std::vector<std::int64_t> elements() const;
  /// Same, without 0 (the set I*_M).
  std::vector<std::int64_t> nonzero_elements() const;

 private:
  BigInt modulus_;
  BigInt lo_;
  BigInt hi_;
};

SignedResidueSet signed_residues(const BigInt& modulus);

/// 1 if M divides a, else 0.
int delta(const BigInt& modulus, const BigInt& a);

}  // namespace halton
