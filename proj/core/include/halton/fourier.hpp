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
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "halton/numeric.hpp"
#include "halton/radical.hpp"
#include "halton/residue.hpp"

namespace halton {

using Complex = std::complex<double>;

/// sin(pi num/den) and cos(pi num/den), the argument reduced exactly first.
double sin_pi(const BigInt& num, const BigInt& den);
double cos_pi(const BigInt& num, const BigInt& den);

/// e(num/den) = exp(2 pi i num/den), the phase reduced exactly modulo 1 first,
/// so the error is a few ulps no matter how large num is.
Complex unit_root(const BigInt& num, const BigInt& den);
Complex unit_root(const Rational& t);

/// |(1/M) sum_{k=0}^{R-1} e(mk/M)| for m not divisible by M.
double dirichlet_kernel(const BigInt& m, const BigInt& length, const BigInt& modulus);

/// phi_{r,Q,N,m} = (1/P) sum_{k=Q}^{Q+N-1} e(mk/P), closed form. m must lie
/// in I*_P (std::invalid_argument otherwise).
Complex phi_coefficient(const ResidueData& rd, const BigInt& start, std::uint64_t count, const BigInt& m);
Complex phi_coefficient(TruncIndex r, const BigInt& start, std::uint64_t count, const BigInt& m,
                        const BasisPair& bases);

/// sum_{b=0}^{digit-1} e(-m M_i (b - digit) / p_i).
Complex psi_tilde(const ResidueData& rd, std::size_t i, const BigInt& m, std::uint32_t digit);
/// psi_r(m, x) as the product of the two psi_tilde factors at the digits x_{i,r_i}.
Complex psi_factor(const ResidueData& rd, const BigInt& m, std::array<std::uint32_t, 2> top_digits);
Complex psi_factor(TruncIndex r, const BigInt& m, const RationalPoint& x, const BasisPair& bases);

struct FourierTerm {
  BigInt m;
  Complex phi;
  Complex psi;
  Rational phase;  // -m X_r / P reduced into [0, 1)
};

/// All terms m in I*_P of the exponential-sum form of lemma2_term. Refuses
/// moduli above kMaxFourierModulus.
inline constexpr std::uint64_t kMaxFourierModulus = 10'000'000;

std::vector<FourierTerm> fourier_terms(const RationalPoint& x, TruncIndex r, const BigInt& start,
                                       std::uint64_t count, const BasisPair& bases);

/// sum_{m in I*_P} phi psi e(-m X_r / P); equals lemma2_term up to rounding.
Complex lemma3_sum(const RationalPoint& x, TruncIndex r, const BigInt& start, std::uint64_t count,
                   const BasisPair& bases);

void write_fourier_csv(std::ostream& os, const std::vector<FourierTerm>& terms);

// ---------------------------------------------------------------------------
// Pairs of depth pairs and their digit-split coefficients.

/// (r_1, r_2) with r_j = (r_{1,j}, r_{2,j}).
struct DepthPairs {
  TruncIndex first;
  TruncIndex second;

  const TruncIndex& operator[](std::size_t j) const noexcept { return j == 0 ? first : second; }
  /// r_{i,j} for coordinate i and pair j (both 0-based).
  unsigned depth(std::size_t i, std::size_t j) const noexcept { return (*this)[j][i]; }
  unsigned r_plus(std::size_t i) const noexcept { return std::max(depth(i, 0), depth(i, 1)); }
  unsigned r_minus(std::size_t i) const noexcept { return std::min(depth(i, 0), depth(i, 1)); }
  /// {k_{i,1}, k_{i,2}} as 0-based pair indices: the pair attaining r^-_i,
  /// then the one attaining r^+_i; (0, 1) on ties.
  std::array<int, 2> order(std::size_t i) const noexcept {
    return depth(i, 0) <= depth(i, 1) ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
  }
  /// Modulus of the signed window holding the coefficient of pair j in
  /// coordinate i: p^{r^-} for the shallower pair, p^{r^+ - r^-} for the other.
  std::uint64_t window_exponent(std::size_t i, std::size_t j) const noexcept {
    return order(i)[0] == static_cast<int>(j) ? r_minus(i) : r_plus(i) - r_minus(i);
  }
};

/// hat_m[i] in [0, p_i^{r_i^+}) and the coefficients mm[i][j] (pair index j)
/// with  hat_m_i = sum_j mm[i][j] p_i^{r_i^+ - r_{i,j}}  (mod p_i^{r_i^+}).
template <class Int>
struct BasicDigitSplit {
  std::array<Int, 2> hat_m;
  std::array<std::array<Int, 2>, 2> mm;
  std::array<std::array<int, 2>, 2> order;
};

using DigitSplit = BasicDigitSplit<BigInt>;
using SmallDigitSplit = BasicDigitSplit<std::int64_t>;

/// M_{i, r_j} for both coordinates i and both pairs j: inverse[i][j].
template <class Int>
using PairInverses = std::array<std::array<Int, 2>, 2>;

PairInverses<BigInt> pair_inverses(const DepthPairs& pairs, const BasisPair& bases);
PairInverses<std::int64_t> small_pair_inverses(const DepthPairs& pairs, const BasisPair& bases);

/// The unique split of a residue h mod p^{r_hi} into (low, high) with
/// h = low p^{r_hi - r_lo} + high, low in I_{p^{r_lo}}, high in I_{p^{r_hi - r_lo}}.
std::array<BigInt, 2> split_residue(const BigInt& h, std::uint32_t p, unsigned r_lo, unsigned r_hi);
std::array<std::int64_t, 2> split_residue(std::int64_t h, std::uint32_t p, unsigned r_lo, unsigned r_hi);

DigitSplit digit_split(const BigInt& m1, const BigInt& m2, const DepthPairs& pairs, const BasisPair& bases);
SmallDigitSplit small_digit_split(std::int64_t m1, std::int64_t m2, const DepthPairs& pairs, const BasisPair& bases,
                                  const PairInverses<std::int64_t>& inverse);

/// tilde m_i = sum_j (mm_j + m_j M_{i,r_j}) p_i^{r_i^+ - r_{i,j}}.
BigInt tilde_m(const BigInt& m1, const BigInt& m2, const std::array<BigInt, 2>& mm, const DepthPairs& pairs,
               const BasisPair& bases, std::size_t i);
std::int64_t small_tilde_m(std::int64_t m1, std::int64_t m2, const std::array<std::int64_t, 2>& mm,
                           const DepthPairs& pairs, const BasisPair& bases, const PairInverses<std::int64_t>& inverse,
                           std::size_t i);

// ---------------------------------------------------------------------------
// Partitions of [1,n]^4.

struct Thresholds {
  BigInt v;   // cut-off for U: max(r1, r2) > v
  BigInt vv;  // split of U^2: r^+_i - r^-_i > vv
};

/// v = p1^4 p2^4 floor(log2(n)^4), vv = floor(log2(n)^3). These are
/// astronomically large for any computable n; override them for experiments.
Thresholds default_thresholds(const BasisPair& bases, unsigned n);

bool in_u(TruncIndex r, const Thresholds& t);

struct PartitionLabel {
  int lambda1 = 0;
  int lambda2 = 0;
  friend bool operator==(const PartitionLabel&, const PartitionLabel&) = default;
};

/// The cell U_{lambda} containing (r_1, r_2), or nullopt if either pair lies outside U.
std::optional<PartitionLabel> partition_label(const DepthPairs& pairs, const Thresholds& t);

/// All (r_1, r_2) in ([1,n]^2)^2 with the given label.
std::vector<DepthPairs> partition_cell(PartitionLabel label, unsigned n, const Thresholds& t);

// ---------------------------------------------------------------------------
// Tiny-scale evaluations of the second-moment bounds. The cost is exponential
// in n; both refuse n above kTinyDepthCap or (p1 p2)^n above kTinyGridCap.

inline constexpr unsigned kTinyDepthCap = 4;
inline constexpr std::uint64_t kTinyGridCap = 1296;

struct Lemma4Sides {
  Rational lhs_exact;  // |int sum_{cell} D_{r_1} D_{r_2} dx|
  double lhs = 0.0;
  double rhs = 0.0;    // sum 1/(mbar_1 mbar_2) prod 1/mmbar
  std::size_t pairs = 0;
};

Lemma4Sides lemma4_sides(PartitionLabel label, std::uint64_t count, const BigInt& start, const BasisPair& bases,
                         unsigned n, const Thresholds& t);

struct Lemma5Sums {
  double star = 0.0;   // window-restricted sum
  double sharp = 0.0;  // unrestricted sum; star plus a nonnegative remainder
  std::size_t pairs = 0;
};

/// m_cap replaces n^10 as the bound on |m_j| and |mm_{i,j}|; the sums do not
/// depend on N except through n.
Lemma5Sums lemma5_sums(PartitionLabel label, const BasisPair& bases, unsigned n, const Thresholds& t,
                       std::int64_t m_cap);

std::int64_t default_m_cap(unsigned n);

}  // namespace halton
