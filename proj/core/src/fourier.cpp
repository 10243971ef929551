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

#include "halton/fourier.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <stdexcept>
#include <string>

#include "halton/discrepancy.hpp"

namespace halton {

// ---------------------------------------------------------------------------
// Trigonometry with exact argument reduction.

double sin_pi(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw std::invalid_argument("sin_pi: denominator must be positive");
  BigInt t = mod_floor(num, 2 * den);  // argument in [0, 2)
  double sign = 1.0;
  if (t >= den) {
    t -= den;
    sign = -1.0;
  }
  if (2 * t > den) t = den - t;  // now in [0, 1/2]
  return sign * std::sin(std::numbers::pi * to_double(Rational(t, den)));
}

double cos_pi(const BigInt& num, const BigInt& den) { return sin_pi(2 * num + den, 2 * den); }

Complex unit_root(const BigInt& num, const BigInt& den) {
  const BigInt twice = 2 * num;
  return {cos_pi(twice, den), sin_pi(twice, den)};
}

Complex unit_root(const Rational& t) { return unit_root(t.get_num(), t.get_den()); }

double dirichlet_kernel(const BigInt& m, const BigInt& length, const BigInt& modulus) {
  if (delta(modulus, m) == 1) throw std::invalid_argument("dirichlet_kernel: m is divisible by the modulus");
  const double num = sin_pi(m * length, modulus);
  const double den = sin_pi(m, modulus);
  return std::abs(num / (to_double(modulus) * den));
}

// ---------------------------------------------------------------------------
// Fourier coefficients.

namespace {

void require_nonzero_signed(const BigInt& m, const BigInt& modulus) {
  if (m == 0 || !SignedResidueSet(modulus).contains(m)) {
    throw std::invalid_argument("m = " + m.get_str() + " is not in I*_" + modulus.get_str());
  }
}

}  // namespace

Complex phi_coefficient(const ResidueData& rd, const BigInt& start, std::uint64_t count, const BigInt& m) {
  require_nonzero_signed(m, rd.modulus);
  const BigInt n = from_uint64(count);
  // sum_{k=Q}^{Q+N-1} e(mk/P) = e(m(2Q + N - 1)/(2P)) sin(pi m N/P) / sin(pi m/P)
  const Complex rotation = unit_root(m * (2 * start + n - 1), 2 * rd.modulus);
  const double ratio = sin_pi(m * n, rd.modulus) / sin_pi(m, rd.modulus);
  return rotation * (ratio / to_double(rd.modulus));
}

Complex phi_coefficient(TruncIndex r, const BigInt& start, std::uint64_t count, const BigInt& m,
                        const BasisPair& bases) {
  return phi_coefficient(crt_inverses(bases, r), start, count, m);
}

Complex psi_tilde(const ResidueData& rd, std::size_t i, const BigInt& m, std::uint32_t digit) {
  const std::uint32_t p = rd.bases.p(i);
  const BigInt step = mod_floor(-m * rd.inverse[i], BigInt(p));
  Complex acc{0.0, 0.0};
  for (std::uint32_t b = 0; b < digit; ++b) {
    const BigInt shift = BigInt(b) - BigInt(digit);
    acc += unit_root(step * shift, BigInt(p));
  }
  return acc;
}

Complex psi_factor(const ResidueData& rd, const BigInt& m, std::array<std::uint32_t, 2> top_digits) {
  return psi_tilde(rd, 0, m, top_digits[0]) * psi_tilde(rd, 1, m, top_digits[1]);
}

Complex psi_factor(TruncIndex r, const BigInt& m, const RationalPoint& x, const BasisPair& bases) {
  if (x.dim() != 2 || r.r1() == 0 || r.r2() == 0) throw std::invalid_argument("psi_factor: needs s = 2, r_i >= 1");
  const ResidueData rd = crt_inverses(bases, r);
  const auto d1 = leading_digits(x[0], bases[0], r.r1());
  const auto d2 = leading_digits(x[1], bases[1], r.r2());
  return psi_factor(rd, m, {d1.back(), d2.back()});
}

std::vector<FourierTerm> fourier_terms(const RationalPoint& x, TruncIndex r, const BigInt& start,
                                       std::uint64_t count, const BasisPair& bases) {
  if (x.dim() != 2 || r.r1() == 0 || r.r2() == 0) throw std::invalid_argument("fourier_terms: needs s = 2, r_i >= 1");
  const ResidueData rd = crt_inverses(bases, r);
  if (rd.modulus > kMaxFourierModulus) throw std::length_error("fourier_terms: modulus too large to enumerate");
  const auto d1 = leading_digits(x[0], bases[0], r.r1());
  const auto d2 = leading_digits(x[1], bases[1], r.r2());
  const BigInt residue = x_residue_from_digits(d1, d2, rd);
  const std::array<std::uint32_t, 2> top{d1.back(), d2.back()};

  std::vector<FourierTerm> out;
  for (std::int64_t mi : SignedResidueSet(rd.modulus).nonzero_elements()) {
    const BigInt m = from_int64(mi);
    FourierTerm t;
    t.phi = phi_coefficient(rd, start, count, m);
    t.psi = psi_factor(rd, m, top);
    t.phase = Rational(mod_floor(-m * residue, rd.modulus), rd.modulus);
    t.phase.canonicalize();
    t.m = m;
    out.push_back(std::move(t));
  }
  return out;
}

Complex lemma3_sum(const RationalPoint& x, TruncIndex r, const BigInt& start, std::uint64_t count,
                   const BasisPair& bases) {
  if (x.dim() != 2 || r.r1() == 0 || r.r2() == 0) throw std::invalid_argument("lemma3_sum: needs s = 2, r_i >= 1");
  const ResidueData rd = crt_inverses(bases, r);
  if (rd.modulus > kMaxFourierModulus) throw std::length_error("lemma3_sum: modulus too large to enumerate");
  const auto d1 = leading_digits(x[0], bases[0], r.r1());
  const auto d2 = leading_digits(x[1], bases[1], r.r2());
  const std::array<std::uint32_t, 2> top{d1.back(), d2.back()};
  if (top[0] == 0 || top[1] == 0) return {0.0, 0.0};
  const BigInt residue = x_residue_from_digits(d1, d2, rd);

  Complex acc{0.0, 0.0};
  for (std::int64_t mi : SignedResidueSet(rd.modulus).nonzero_elements()) {
    const BigInt m = from_int64(mi);
    acc += phi_coefficient(rd, start, count, m) * psi_factor(rd, m, top) * unit_root(-m * residue, rd.modulus);
  }
  return acc;
}

void write_fourier_csv(std::ostream& os, const std::vector<FourierTerm>& terms) {
  os << "m,phi_re,phi_im,psi_re,psi_im,phase\n";
  os << std::setprecision(17);
  for (const FourierTerm& t : terms) {
    os << t.m << ',' << t.phi.real() << ',' << t.phi.imag() << ',' << t.psi.real() << ',' << t.psi.imag() << ','
       << to_string(t.phase) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Digit split.

namespace {

std::int64_t mod_floor_i(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t signed_residue_i(std::int64_t a, std::int64_t m) {
  const std::int64_t r = mod_floor_i(a, m);
  return r > m / 2 ? r - m : r;
}

std::int64_t ipow_i(std::uint32_t p, unsigned e) {
  std::int64_t out = 1;
  for (unsigned k = 0; k < e; ++k) {
    if (out > (std::int64_t{1} << 62) / p) throw std::overflow_error("small digit split: modulus overflow");
    out *= p;
  }
  return out;
}

template <class Int>
Int power(std::uint32_t p, unsigned e) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return ipow(p, e);
  } else {
    return ipow_i(p, e);
  }
}

template <class Int>
Int modp(const Int& a, const Int& m) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return mod_floor(a, m);
  } else {
    return mod_floor_i(a, m);
  }
}

template <class Int>
Int signed_modp(const Int& a, const Int& m) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return signed_residue(a, m);
  } else {
    return signed_residue_i(a, m);
  }
}

template <class Int>
std::array<Int, 2> split_residue_impl(const Int& h, std::uint32_t p, unsigned r_lo, unsigned r_hi) {
  if (r_lo > r_hi) throw std::invalid_argument("split_residue: r_lo > r_hi");
  const Int gap = power<Int>(p, r_hi - r_lo);
  const Int low_mod = power<Int>(p, r_lo);
  const Int hh = modp<Int>(h, gap * low_mod);
  Int high = signed_modp<Int>(hh, gap);
  Int low = signed_modp<Int>(Int((hh - high) / gap), low_mod);
  return {low, high};
}

template <class Int>
BasicDigitSplit<Int> split_impl(const Int& m1, const Int& m2, const DepthPairs& pairs, const BasisPair& bases,
                                const PairInverses<Int>& inverse) {
  BasicDigitSplit<Int> out;
  const std::array<Int, 2> m{m1, m2};
  for (std::size_t i = 0; i < 2; ++i) {
    const std::uint32_t p = bases.p(i);
    const unsigned rp = pairs.r_plus(i);
    const Int modulus = power<Int>(p, rp);
    Int acc = 0;
    for (std::size_t j = 0; j < 2; ++j) {
      const unsigned r = pairs.depth(i, j);
      // m_j only matters modulo p^{r_{i,j}} here.
      const Int mj = modp<Int>(m[j], power<Int>(p, r));
      acc += mj * inverse[i][j] * power<Int>(p, rp - r);
    }
    out.hat_m[i] = modp<Int>(Int(-acc), modulus);
    out.order[i] = pairs.order(i);
    const auto [low, high] = split_residue_impl<Int>(out.hat_m[i], p, pairs.r_minus(i), rp);
    out.mm[i][out.order[i][0]] = low;
    out.mm[i][out.order[i][1]] = high;
  }
  return out;
}

template <class Int>
Int tilde_impl(const Int& m1, const Int& m2, const std::array<Int, 2>& mm, const DepthPairs& pairs,
               const BasisPair& bases, const PairInverses<Int>& inverse, std::size_t i) {
  const std::uint32_t p = bases.p(i);
  const unsigned rp = pairs.r_plus(i);
  const std::array<Int, 2> m{m1, m2};
  Int acc = 0;
  for (std::size_t j = 0; j < 2; ++j) acc += (mm[j] + m[j] * inverse[i][j]) * power<Int>(p, rp - pairs.depth(i, j));
  return acc;
}

void require_positive_depths(const DepthPairs& pairs) {
  for (std::size_t j = 0; j < 2; ++j) {
    if (pairs[j].r1() == 0 || pairs[j].r2() == 0) throw std::invalid_argument("depth pairs need r_{i,j} >= 1");
  }
}

}  // namespace

PairInverses<BigInt> pair_inverses(const DepthPairs& pairs, const BasisPair& bases) {
  PairInverses<BigInt> out;
  for (std::size_t j = 0; j < 2; ++j) {
    const ResidueData rd = crt_inverses(bases, pairs[j]);
    for (std::size_t i = 0; i < 2; ++i) out[i][j] = rd.inverse[i];
  }
  return out;
}

PairInverses<std::int64_t> small_pair_inverses(const DepthPairs& pairs, const BasisPair& bases) {
  const PairInverses<BigInt> big = pair_inverses(pairs, bases);
  PairInverses<std::int64_t> out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out[i][j] = to_int64(big[i][j]);
  }
  return out;
}

std::array<BigInt, 2> split_residue(const BigInt& h, std::uint32_t p, unsigned r_lo, unsigned r_hi) {
  return split_residue_impl<BigInt>(h, p, r_lo, r_hi);
}

std::array<std::int64_t, 2> split_residue(std::int64_t h, std::uint32_t p, unsigned r_lo, unsigned r_hi) {
  return split_residue_impl<std::int64_t>(h, p, r_lo, r_hi);
}

DigitSplit digit_split(const BigInt& m1, const BigInt& m2, const DepthPairs& pairs, const BasisPair& bases) {
  require_positive_depths(pairs);
  return split_impl<BigInt>(m1, m2, pairs, bases, pair_inverses(pairs, bases));
}

SmallDigitSplit small_digit_split(std::int64_t m1, std::int64_t m2, const DepthPairs& pairs, const BasisPair& bases,
                                  const PairInverses<std::int64_t>& inverse) {
  return split_impl<std::int64_t>(m1, m2, pairs, bases, inverse);
}

BigInt tilde_m(const BigInt& m1, const BigInt& m2, const std::array<BigInt, 2>& mm, const DepthPairs& pairs,
               const BasisPair& bases, std::size_t i) {
  require_positive_depths(pairs);
  return tilde_impl<BigInt>(m1, m2, mm, pairs, bases, pair_inverses(pairs, bases), i);
}

std::int64_t small_tilde_m(std::int64_t m1, std::int64_t m2, const std::array<std::int64_t, 2>& mm,
                           const DepthPairs& pairs, const BasisPair& bases, const PairInverses<std::int64_t>& inverse,
                           std::size_t i) {
  return tilde_impl<std::int64_t>(m1, m2, mm, pairs, bases, inverse, i);
}

// ---------------------------------------------------------------------------
// Partitions.

Thresholds default_thresholds(const BasisPair& bases, unsigned n) {
  if (n == 0) throw std::invalid_argument("default_thresholds: n must be >= 1");
  const double lg = std::log2(static_cast<double>(n));
  const BigInt lg4(std::floor(lg * lg * lg * lg));
  const BigInt lg3(std::floor(lg * lg * lg));
  return Thresholds{ipow(bases.p(0), 4) * ipow(bases.p(1), 4) * lg4, lg3};
}

bool in_u(TruncIndex r, const Thresholds& t) { return BigInt(std::max(r.r1(), r.r2())) > t.v; }

std::optional<PartitionLabel> partition_label(const DepthPairs& pairs, const Thresholds& t) {
  if (!in_u(pairs.first, t) || !in_u(pairs.second, t)) return std::nullopt;
  PartitionLabel label;
  label.lambda1 = BigInt(pairs.r_plus(0) - pairs.r_minus(0)) > t.vv ? 1 : 0;
  label.lambda2 = BigInt(pairs.r_plus(1) - pairs.r_minus(1)) > t.vv ? 1 : 0;
  return label;
}

std::vector<DepthPairs> partition_cell(PartitionLabel label, unsigned n, const Thresholds& t) {
  std::vector<DepthPairs> out;
  for (unsigned a = 1; a <= n; ++a) {
    for (unsigned b = 1; b <= n; ++b) {
      for (unsigned c = 1; c <= n; ++c) {
        for (unsigned d = 1; d <= n; ++d) {
          DepthPairs pairs{TruncIndex(a, b), TruncIndex(c, d)};
          const auto got = partition_label(pairs, t);
          if (got && *got == label) out.push_back(pairs);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tiny-scale evaluations.

namespace {

void require_tiny(const BasisPair& bases, unsigned n) {
  if (n == 0 || n > kTinyDepthCap) {
    throw std::invalid_argument("tiny-scale evaluation needs 1 <= n <= " + std::to_string(kTinyDepthCap));
  }
  if (ipow(std::uint64_t{bases.p(0)} * bases.p(1), n) > kTinyGridCap) {
    throw std::invalid_argument("tiny-scale evaluation: (p1 p2)^n exceeds " + std::to_string(kTinyGridCap));
  }
}

std::size_t depth_slot(TruncIndex r, unsigned n) { return (r.r1() - 1) * n + (r.r2() - 1); }

std::vector<std::uint32_t> base_digits(std::uint64_t value, std::uint32_t p, unsigned n) {
  std::vector<std::uint32_t> d(n);
  for (unsigned j = 0; j < n; ++j) {
    d[j] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return d;
}

double inv_bar(std::int64_t v) { return 1.0 / static_cast<double>(std::max<std::int64_t>(1, v < 0 ? -v : v)); }

std::vector<std::int64_t> nonzero_signed(std::int64_t modulus) {
  return SignedResidueSet(from_int64(modulus)).nonzero_elements();
}

}  // namespace

Lemma4Sides lemma4_sides(PartitionLabel label, std::uint64_t count, const BigInt& start, const BasisPair& bases,
                         unsigned n, const Thresholds& t) {
  require_tiny(bases, n);
  Lemma4Sides out;
  const std::vector<DepthPairs> cell = partition_cell(label, n, t);
  out.pairs = cell.size();
  if (cell.empty()) return out;

  // Left side: every D_{r,N} is constant on the p1^-n x p2^-n digit grid, so the
  // integral is the exact average over all grid cells.
  const std::uint64_t cells1 = ipow(bases.p(0), n).get_ui();
  const std::uint64_t cells2 = ipow(bases.p(1), n).get_ui();
  Rational acc = 0;
  for (std::uint64_t c1 = 0; c1 < cells1; ++c1) {
    const auto d1 = base_digits(c1, bases.p(0), n);
    for (std::uint64_t c2 = 0; c2 < cells2; ++c2) {
      const auto d2 = base_digits(c2, bases.p(1), n);
      const std::vector<Rational> terms = lemma2_terms_from_digits(d1, d2, n, start, count, bases);
      for (const DepthPairs& pr : cell) acc += terms[depth_slot(pr.first, n)] * terms[depth_slot(pr.second, n)];
    }
  }
  acc /= Rational(from_uint64(cells1 * cells2));
  out.lhs_exact = abs(acc);
  out.lhs = to_double(out.lhs_exact);

  // Right side: the weight prod_{i,j} 1/mmbar_{i,j} for coordinate i depends on
  // m_j only modulo p_i^{r_{i,j}}, so tabulate it per coordinate.
  long double rhs = 0.0L;
  for (const DepthPairs& pr : cell) {
    const PairInverses<std::int64_t> inverse = small_pair_inverses(pr, bases);
    std::array<std::array<std::int64_t, 2>, 2> q{};  // q[i][j] = p_i^{r_{i,j}}
    std::array<std::vector<double>, 2> weight;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) q[i][j] = ipow_i(bases.p(i), pr.depth(i, j));
      weight[i].assign(static_cast<std::size_t>(q[i][0] * q[i][1]), 0.0);
      for (std::int64_t a = 0; a < q[i][0]; ++a) {
        for (std::int64_t b = 0; b < q[i][1]; ++b) {
          // Coordinate i of the split only sees a mod p_i^{r_{i,1}} and b mod p_i^{r_{i,2}}.
          const SmallDigitSplit sp = small_digit_split(a, b, pr, bases, inverse);
          weight[i][static_cast<std::size_t>(a * q[i][1] + b)] = inv_bar(sp.mm[i][0]) * inv_bar(sp.mm[i][1]);
        }
      }
    }
    const std::int64_t modulus1 = ipow_i(bases.p(0), pr.first.r1()) * ipow_i(bases.p(1), pr.first.r2());
    const std::int64_t modulus2 = ipow_i(bases.p(0), pr.second.r1()) * ipow_i(bases.p(1), pr.second.r2());
    const std::vector<std::int64_t> ms1 = nonzero_signed(modulus1);
    const std::vector<std::int64_t> ms2 = nonzero_signed(modulus2);
    long double pair_sum = 0.0L;
    for (std::int64_t m1 : ms1) {
      const std::int64_t a0 = mod_floor_i(m1, q[0][0]);
      const std::int64_t a1 = mod_floor_i(m1, q[1][0]);
      long double row = 0.0L;
      for (std::int64_t m2 : ms2) {
        const double w0 = weight[0][static_cast<std::size_t>(a0 * q[0][1] + mod_floor_i(m2, q[0][1]))];
        const double w1 = weight[1][static_cast<std::size_t>(a1 * q[1][1] + mod_floor_i(m2, q[1][1]))];
        row += static_cast<long double>(w0 * w1 * inv_bar(m2));
      }
      pair_sum += row * inv_bar(m1);
    }
    rhs += pair_sum;
  }
  out.rhs = static_cast<double>(rhs);
  return out;
}

std::int64_t default_m_cap(unsigned n) {
  std::int64_t v = 1;
  for (int k = 0; k < 10; ++k) {
    v *= n;
    if (v >= 10'000) return 10'000;
  }
  return v;
}

namespace {

// Cyclic convolution over Z/mod.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t m = a.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t s = 0; s < m; ++s) {
    if (a[s] == 0.0) continue;
    for (std::size_t t = 0; t < m; ++t) out[(s + t) % m] += a[s] * b[t];
  }
  return out;
}

}  // namespace

Lemma5Sums lemma5_sums(PartitionLabel label, const BasisPair& bases, unsigned n, const Thresholds& t,
                       std::int64_t m_cap) {
  require_tiny(bases, n);
  if (m_cap < 1) throw std::invalid_argument("lemma5_sums: m_cap must be >= 1");
  Lemma5Sums out;
  const std::vector<DepthPairs> cell = partition_cell(label, n, t);
  out.pairs = cell.size();

  long double star = 0.0L;
  long double rest = 0.0L;
  for (const DepthPairs& pr : cell) {
    const PairInverses<std::int64_t> inverse = small_pair_inverses(pr, bases);

    // Per coordinate: B_in[s] and B_out[s] are the weighted counts of
    // (mm_{i,1}, mm_{i,2}) with sum_j mm_{i,j} p^{r+ - r_{i,j}} = s (mod p^{r+}),
    // split by whether both coefficients lie in their signed windows.
    std::array<std::vector<double>, 2> b_in;
    std::array<std::vector<double>, 2> b_out;
    std::array<std::int64_t, 2> mod_plus{};
    for (std::size_t i = 0; i < 2; ++i) {
      const std::uint32_t p = bases.p(i);
      const unsigned rp = pr.r_plus(i);
      mod_plus[i] = ipow_i(p, rp);
      std::array<std::vector<double>, 2> h_in;
      std::array<std::vector<double>, 2> h_out;
      for (std::size_t j = 0; j < 2; ++j) {
        h_in[j].assign(static_cast<std::size_t>(mod_plus[i]), 0.0);
        h_out[j].assign(static_cast<std::size_t>(mod_plus[i]), 0.0);
        const std::int64_t scale = ipow_i(p, rp - pr.depth(i, j));
        const std::int64_t window = ipow_i(p, static_cast<unsigned>(pr.window_exponent(i, j)));
        const std::int64_t lo = -((window - 1) / 2);
        const std::int64_t hi = window / 2;
        for (std::int64_t v = -m_cap; v <= m_cap; ++v) {
          const auto slot = static_cast<std::size_t>(mod_floor_i(mod_floor_i(v, mod_plus[i]) * scale, mod_plus[i]));
          (v >= lo && v <= hi ? h_in[j] : h_out[j])[slot] += inv_bar(v);
        }
      }
      b_in[i] = convolve(h_in[0], h_in[1]);
      const std::vector<double> x1 = convolve(h_in[0], h_out[1]);
      const std::vector<double> x2 = convolve(h_out[0], h_in[1]);
      const std::vector<double> x3 = convolve(h_out[0], h_out[1]);
      b_out[i].resize(x1.size());
      for (std::size_t s = 0; s < x1.size(); ++s) b_out[i][s] = x1[s] + x2[s] + x3[s];
    }

    // Weighted counts of m_j by residue modulo P_{r_j}.
    std::array<std::int64_t, 2> modulus{};
    std::array<std::vector<double>, 2> g;
    for (std::size_t j = 0; j < 2; ++j) {
      modulus[j] = ipow_i(bases.p(0), pr[j].r1()) * ipow_i(bases.p(1), pr[j].r2());
      g[j].assign(static_cast<std::size_t>(modulus[j]), 0.0);
      for (std::int64_t v = 1; v <= m_cap; ++v) {
        g[j][static_cast<std::size_t>(mod_floor_i(v, modulus[j]))] += inv_bar(v);
        g[j][static_cast<std::size_t>(mod_floor_i(-v, modulus[j]))] += inv_bar(v);
      }
    }

    std::array<std::array<std::int64_t, 2>, 2> coef{};  // M_{i,j} p_i^{r+ - r_{i,j}} mod p_i^{r+}
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        coef[i][j] = mod_floor_i(inverse[i][j] * ipow_i(bases.p(i), pr.r_plus(i) - pr.depth(i, j)), mod_plus[i]);
      }
    }

    for (std::int64_t r1 = 0; r1 < modulus[0]; ++r1) {
      const double g1 = g[0][static_cast<std::size_t>(r1)];
      if (g1 == 0.0) continue;
      const std::int64_t c10 = mod_floor_i(r1 % mod_plus[0] * coef[0][0], mod_plus[0]);
      const std::int64_t c20 = mod_floor_i(r1 % mod_plus[1] * coef[1][0], mod_plus[1]);
      long double row_in = 0.0L;
      long double row_out = 0.0L;
      for (std::int64_t r2 = 0; r2 < modulus[1]; ++r2) {
        const double g2 = g[1][static_cast<std::size_t>(r2)];
        if (g2 == 0.0) continue;
        // delta_{p^{r+}}(tilde m) asks for sum_j mm p^{..} = -c (mod p^{r+}).
        const std::int64_t c1 = mod_floor_i(c10 + r2 % mod_plus[0] * coef[0][1], mod_plus[0]);
        const std::int64_t c2 = mod_floor_i(c20 + r2 % mod_plus[1] * coef[1][1], mod_plus[1]);
        const auto s1 = static_cast<std::size_t>(mod_floor_i(-c1, mod_plus[0]));
        const auto s2 = static_cast<std::size_t>(mod_floor_i(-c2, mod_plus[1]));
        const double in1 = b_in[0][s1];
        const double in2 = b_in[1][s2];
        const double out1 = b_out[0][s1];
        const double out2 = b_out[1][s2];
        row_in += static_cast<long double>(g2 * in1 * in2);
        row_out += static_cast<long double>(g2 * (in1 * out2 + out1 * in2 + out1 * out2));
      }
      star += g1 * row_in;
      rest += g1 * row_out;
    }
  }
  out.star = static_cast<double>(star);
  out.sharp = static_cast<double>(star + rest);
  return out;
}

}  // namespace halton
