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

#include "halton/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace halton {

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt ipow(unsigned long base, unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

BigInt signed_residue(const BigInt& a, const BigInt& m) {
  BigInt r = mod_floor(a, m);
  BigInt hi;
  mpz_fdiv_q_2exp(hi.get_mpz_t(), m.get_mpz_t(), 1);  // floor(m/2)
  if (r > hi) r -= m;
  return r;
}

BigInt floor(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

unsigned long bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return BigInt(buf, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_integer(s, text));
  } else {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    q = Rational(num, den);
    q.canonicalize();
  }
  return q;
}

double to_double(const Rational& q) {
  // Round to nearest: a 65-66 bit truncated quotient with a sticky low bit,
  // converted once through a 128-bit integer.
  if (q == 0) return 0.0;
  const BigInt num = abs(q.get_num());
  const BigInt& den = q.get_den();
  const long shift = 65 + static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  BigInt top = num;
  BigInt bottom = den;
  if (shift >= 0) {
    mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(shift));
  } else {
    mpz_mul_2exp(bottom.get_mpz_t(), bottom.get_mpz_t(), static_cast<unsigned long>(-shift));
  }
  BigInt quot;
  BigInt rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
  if (rem != 0) mpz_setbit(quot.get_mpz_t(), 0);
  unsigned __int128 wide = 0;
  mpz_export(&wide, nullptr, -1, sizeof wide, 0, 0, quot.get_mpz_t());
  const double mag = std::ldexp(static_cast<double>(wide), static_cast<int>(-shift));
  return q < 0 ? -mag : mag;
}

double to_double(const BigInt& n) { return n.get_d(); }

std::int64_t to_int64(const BigInt& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  return static_cast<std::int64_t>(n.get_si());
}

std::uint64_t to_uint64(const BigInt& n) {
  if (!n.fits_ulong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  return static_cast<std::uint64_t>(n.get_ui());
}

BigInt from_uint64(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == 8, "LP64 expected");
  return BigInt(static_cast<unsigned long>(v));
}

BigInt from_int64(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace halton
