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

#include "halton/residue.hpp"

#include <sstream>
#include <stdexcept>

namespace halton {

TruncIndex::TruncIndex(unsigned r1, unsigned r2) : r_{r1, r2} {
  if (r1 > kMaxDepth || r2 > kMaxDepth) {
    throw std::invalid_argument("truncation depth exceeds " + std::to_string(kMaxDepth));
  }
}

std::string ResidueData::to_string() const {
  std::ostringstream os;
  os << "bases=(" << bases.p(0) << "," << bases.p(1) << ") r=(" << r.r1() << "," << r.r2() << ") P=" << modulus
     << " M1=" << inverse[0] << " M2=" << inverse[1];
  return os.str();
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  if (m <= 0) throw std::domain_error("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  // Extended Euclid on (a mod m, m), tracking only the coefficient of a.
  BigInt r0 = m;
  BigInt r1 = mod_floor(a, m);
  BigInt t0 = 0;
  BigInt t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: " + a.get_str() + " is not invertible mod " + m.get_str());
  return mod_floor(t0, m);
}

ResidueData crt_inverses(const BasisPair& bases, TruncIndex r) {
  std::array<BigInt, 2> pw{ipow(bases.p(0), r.r1()), ipow(bases.p(1), r.r2())};
  BigInt modulus = pw[0] * pw[1];
  std::array<BigInt, 2> inv{mod_inverse(pw[1], pw[0]), mod_inverse(pw[0], pw[1])};
  return ResidueData{bases, r, std::move(modulus), std::move(pw), std::move(inv)};
}

std::vector<std::uint32_t> leading_digits(const Rational& x, Base p, unsigned depth) {
  if (x < 0 || x > 1) throw std::invalid_argument("leading_digits: x = " + to_string(x) + " outside [0,1]");
  std::vector<std::uint32_t> out(depth, 0);
  if (depth == 0) return out;
  if (x == 1) {
    out[0] = p.value();
    return out;
  }
  // floor(x p^depth) written in base p gives the digits, most significant first.
  BigInt scaled = floor(Rational(x * Rational(ipow(p.value(), depth))));
  for (unsigned j = depth; j-- > 0;) {
    out[j] = static_cast<std::uint32_t>(mpz_fdiv_q_ui(scaled.get_mpz_t(), scaled.get_mpz_t(), p.value()));
  }
  return out;
}

BigInt digit_index(std::span<const std::uint32_t> digits, Base p) {
  BigInt acc = 0;
  for (std::size_t j = digits.size(); j-- > 0;) acc = acc * p.value() + digits[j];
  return acc;
}

namespace {

std::span<const std::uint32_t> prefix(std::span<const std::uint32_t> d, unsigned r) {
  if (d.size() < r) throw std::invalid_argument("digit prefix shorter than truncation depth");
  return d.first(r);
}

}  // namespace

BigInt x_residue_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                             const ResidueData& rd) {
  const BigInt x1 = digit_index(prefix(d1, rd.r.r1()), rd.bases[0]);
  const BigInt x2 = digit_index(prefix(d2, rd.r.r2()), rd.bases[1]);
  return mod_floor(rd.cofactor(0) * rd.inverse[0] * x1 + rd.cofactor(1) * rd.inverse[1] * x2, rd.modulus);
}

BigInt x_residue_b_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                               const ResidueData& rd, std::array<std::uint32_t, 2> b) {
  const std::array<std::span<const std::uint32_t>, 2> d{prefix(d1, rd.r.r1()), prefix(d2, rd.r.r2())};
  BigInt acc = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    const unsigned r = rd.r[i];
    if (r == 0) continue;  // modulus 1: no digits, M_i = 0
    if (b[i] > d[i][r - 1]) {
      throw std::invalid_argument("x_residue_b: b_" + std::to_string(i + 1) + " exceeds the digit x_{i,r_i}");
    }
    BigInt part = digit_index(d[i].first(r - 1), rd.bases[i]);
    part += BigInt(b[i]) * ipow(rd.bases.p(i), r - 1);
    acc += rd.inverse[i] * rd.cofactor(i) * part;
  }
  return mod_floor(acc, rd.modulus);
}

BigInt x_residue(const RationalPoint& x, const ResidueData& rd) {
  if (x.dim() != 2) throw std::invalid_argument("x_residue: point must be two-dimensional");
  return x_residue_from_digits(leading_digits(x[0], rd.bases[0], rd.r.r1()),
                               leading_digits(x[1], rd.bases[1], rd.r.r2()), rd);
}

BigInt x_residue_b(const RationalPoint& x, const ResidueData& rd, std::array<std::uint32_t, 2> b) {
  if (x.dim() != 2) throw std::invalid_argument("x_residue_b: point must be two-dimensional");
  return x_residue_b_from_digits(leading_digits(x[0], rd.bases[0], rd.r.r1()),
                                 leading_digits(x[1], rd.bases[1], rd.r.r2()), rd, b);
}

bool membership_test(const BigInt& k, const RationalPoint& y, TruncIndex s, const BasisPair& bases) {
  if (y.dim() != 2) throw std::invalid_argument("membership_test: corner must be two-dimensional");
  const ResidueData rd = crt_inverses(bases, s);
  std::array<BigInt, 2> ki;
  for (std::size_t i = 0; i < 2; ++i) {
    if (y[i] < 0 || y[i] >= 1) throw std::invalid_argument("membership_test: corner outside [0,1)");
    const Rational scaled = y[i] * Rational(rd.prime_power[i]);
    if (scaled.get_den() != 1) {
      throw std::invalid_argument("membership_test: y_" + std::to_string(i + 1) + " = " + to_string(y[i]) +
                                  " has more than " + std::to_string(s[i]) + " base-" +
                                  std::to_string(bases.p(i)) + " digits");
    }
    ki[i] = digit_index(leading_digits(y[i], bases[i], s[i]), bases[i]);
  }
  const BigInt target = rd.cofactor(0) * rd.inverse[0] * ki[0] + rd.cofactor(1) * rd.inverse[1] * ki[1];
  return mod_floor(k - target, rd.modulus) == 0;
}

SignedResidueSet::SignedResidueSet(BigInt modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 1) throw std::invalid_argument("signed residue set needs M >= 1");
  BigInt half_below;
  BigInt m1 = modulus_ - 1;
  mpz_fdiv_q_2exp(half_below.get_mpz_t(), m1.get_mpz_t(), 1);
  lo_ = -half_below;
  mpz_fdiv_q_2exp(hi_.get_mpz_t(), modulus_.get_mpz_t(), 1);
}

std::vector<std::int64_t> SignedResidueSet::elements() const {
  if (modulus_ > 10'000'000) throw std::length_error("signed residue set too large to materialize");
  std::vector<std::int64_t> out;
  for (std::int64_t a = to_int64(lo_); a <= to_int64(hi_); ++a) out.push_back(a);
  return out;
}

std::vector<std::int64_t> SignedResidueSet::nonzero_elements() const {
  std::vector<std::int64_t> out = elements();
  std::erase(out, 0);
  return out;
}

SignedResidueSet signed_residues(const BigInt& modulus) { return SignedResidueSet(modulus); }

int delta(const BigInt& modulus, const BigInt& a) {
  if (modulus < 1) throw std::invalid_argument("delta: modulus must be >= 1");
  return mpz_divisible_p(a.get_mpz_t(), modulus.get_mpz_t()) ? 1 : 0;
}

}  // namespace halton
