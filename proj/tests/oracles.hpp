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

// Reference computations used by the unit and acceptance tests. Everything
// here is deliberately naive and shares no code path with the library beyond
// the number types.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "halton/numeric.hpp"
#include "halton/radical.hpp"

namespace oracle {

using halton::BigInt;
using halton::Rational;

inline std::uint64_t upow(std::uint64_t p, unsigned e) {
  std::uint64_t v = 1;
  while (e-- > 0) v *= p;
  return v;
}

// Digit reversal by repeated division.
inline Rational reverse_digits(std::uint64_t n, std::uint32_t p) {
  Rational acc = 0;
  Rational scale(1, p);
  while (n > 0) {
    acc += Rational(static_cast<long>(n % p)) * scale;
    scale /= p;
    n /= p;
  }
  acc.canonicalize();
  return acc;
}

inline double reverse_digits_f64(std::uint64_t n, std::uint32_t p) {
  double acc = 0;
  double scale = 1.0 / p;
  while (n > 0) {
    acc += static_cast<double>(n % p) * scale;
    scale /= p;
    n /= p;
  }
  return acc;
}

// floor(phi_p(k) p^r): the first r base-p digits of k reversed into an integer.
inline std::uint64_t cell_index(std::uint64_t k, std::uint32_t p, unsigned r) {
  std::uint64_t v = 0;
  for (unsigned j = 0; j < r; ++j) {
    v = v * p + k % p;
    k /= p;
  }
  return v;
}

// First r digits of x in base p, most significant first. x = 1 is written as
// the digit p followed by zeros.
inline std::vector<std::uint64_t> digits_of(const Rational& x, std::uint32_t p, unsigned r) {
  std::vector<std::uint64_t> d(r, 0);
  if (r == 0) return d;
  if (x == 1) {
    d[0] = p;
    return d;
  }
  Rational y = x;
  for (unsigned j = 0; j < r; ++j) {
    y *= p;
    const BigInt f = halton::floor(y);
    d[j] = f.get_ui();
    y -= Rational(f);
  }
  return d;
}

// Sum over the elementary boxes attached to depth pair r of
// (#{k in [Q, Q+N) : H(k) in box} - N / P), by direct counting.
inline Rational box_term(const std::array<Rational, 2>& x, std::array<unsigned, 2> r, std::uint64_t start,
                         std::uint64_t count, std::array<std::uint32_t, 2> p) {
  std::array<std::uint64_t, 2> prefix{};
  std::array<std::uint64_t, 2> top{};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto d = digits_of(x[i], p[i], r[i]);
    for (unsigned j = 0; j + 1 < r[i]; ++j) prefix[i] = prefix[i] * p[i] + d[j];
    prefix[i] *= p[i];
    top[i] = d[r[i] - 1];
  }
  if (top[0] == 0 || top[1] == 0) return 0;
  long hits = 0;
  for (std::uint64_t k = start; k < start + count; ++k) {
    bool in = true;
    for (std::size_t i = 0; i < 2 && in; ++i) {
      const std::uint64_t c = cell_index(k, p[i], r[i]);
      in = c >= prefix[i] && c < prefix[i] + top[i];
    }
    hits += in ? 1 : 0;
  }
  const BigInt modulus = halton::ipow(p[0], r[0]) * halton::ipow(p[1], r[1]);
  Rational out = Rational(hits) - Rational(BigInt(BigInt(top[0] * top[1]) * halton::from_uint64(count)), modulus);
  out.canonicalize();
  return out;
}

// Integral of D(x)^2 over [0,1]^s, cell by cell on the grid spanned by the
// point coordinates. On each open cell the count is constant.
inline Rational piecewise_l2(const std::vector<std::vector<Rational>>& points) {
  const std::size_t s = points.front().size();
  std::vector<std::vector<Rational>> grid(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::set<Rational> g{Rational(0), Rational(1)};
    for (const auto& x : points) g.insert(x[i]);
    grid[i].assign(g.begin(), g.end());
  }
  const Rational n(static_cast<long>(points.size()));
  Rational total = 0;
  std::vector<std::size_t> cell(s, 0);
  while (true) {
    Rational vol = 1, m1 = 1, m2 = 1;
    for (std::size_t i = 0; i < s; ++i) {
      const Rational& a = grid[i][cell[i]];
      const Rational& b = grid[i][cell[i] + 1];
      vol *= b - a;
      m1 *= (b * b - a * a) / 2;
      m2 *= (b * b * b - a * a * a) / 3;
    }
    long c = 0;
    for (const auto& x : points) {
      bool in = true;
      for (std::size_t i = 0; i < s && in; ++i) in = x[i] <= grid[i][cell[i]];
      c += in ? 1 : 0;
    }
    total += Rational(c * c) * vol - 2 * Rational(c) * n * m1 + n * n * m2;
    std::size_t i = 0;
    for (; i < s; ++i) {
      if (++cell[i] + 1 < grid[i].size()) break;
      cell[i] = 0;
    }
    if (i == s) break;
  }
  total.canonicalize();
  return total;
}

// Plain double Warnock sum over row-major points, no blocking.
inline double warnock_f64(const std::vector<double>& coords, std::size_t dim) {
  const std::size_t n = coords.size() / dim;
  long double pairs = 0;
  long double single = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const double* x = &coords[a * dim];
    long double s1 = 1;
    for (std::size_t i = 0; i < dim; ++i) s1 *= (1.0L - x[i] * x[i]) / 2;
    single += s1;
    for (std::size_t b = 0; b < n; ++b) {
      const double* y = &coords[b * dim];
      long double t = 1;
      for (std::size_t i = 0; i < dim; ++i) t *= 1.0L - std::max(x[i], y[i]);
      pairs += t;
    }
  }
  const long double nn = static_cast<long double>(n);
  return static_cast<double>(pairs - 2 * nn * single + nn * nn * std::pow(3.0L, -static_cast<long double>(dim)));
}

// Exponent of p in v != 0 by repeated division.
inline long naive_ord(BigInt v, std::uint32_t p) {
  long e = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

}  // namespace oracle
