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

#include "halton/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "halton/reduce.hpp"

namespace halton {

std::string_view to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Mode parse_mode(std::string_view name) {
  if (name == "exact") return Mode::exact;
  if (name == "float" || name == "fast") return Mode::fast;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

DiscrepancyValue DiscrepancyValue::from_exact(Rational value) {
  DiscrepancyValue out;
  out.mode = Mode::exact;
  out.approx = to_double(value);
  out.exact = std::move(value);
  return out;
}

DiscrepancyValue DiscrepancyValue::from_float(double value) {
  DiscrepancyValue out;
  out.mode = Mode::fast;
  out.approx = value;
  return out;
}

namespace {

void require_corner(const RationalPoint& x, std::size_t dim) {
  if (x.dim() != dim) throw std::invalid_argument("corner dimension does not match the point set");
  for (const Rational& c : x.coords()) {
    if (c <= 0 || c > 1) throw std::invalid_argument("corner coordinates must lie in (0,1], got " + to_string(c));
  }
}

bool strictly_below(const RationalPoint& pt, const RationalPoint& x) {
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (pt[i] >= x[i]) return false;
  }
  return true;
}

Rational volume(const RationalPoint& x) {
  Rational v = 1;
  for (const Rational& c : x.coords()) v *= c;
  return v;
}

}  // namespace

std::uint64_t count_in_box(const RationalPoint& x, const PointSet& set) {
  std::uint64_t hits = 0;
  for (const RationalPoint& pt : set.points()) hits += strictly_below(pt, x) ? 1 : 0;
  return hits;
}

DiscrepancyValue local_discrepancy(const RationalPoint& x, const PointSet& set) {
  require_corner(x, set.dim());
  Rational d = Rational(from_uint64(count_in_box(x, set))) - Rational(from_uint64(set.count())) * volume(x);
  return DiscrepancyValue::from_exact(std::move(d));
}

double local_discrepancy_f64(std::span<const double> x, const FloatPointSet& set) {
  if (x.size() != set.dim) throw std::invalid_argument("corner dimension does not match the point set");
  std::uint64_t hits = 0;
  const std::size_t n = set.count();
  for (std::size_t k = 0; k < n; ++k) {
    const auto pt = set.point(k);
    bool inside = true;
    for (std::size_t i = 0; i < set.dim && inside; ++i) inside = pt[i] < x[i];
    hits += inside ? 1 : 0;
  }
  double vol = 1.0;
  for (double c : x) vol *= c;
  return static_cast<double>(hits) - static_cast<double>(n) * vol;
}

// ---------------------------------------------------------------------------
// Warnock pair sum
//
//   int D^2 = sum_{k,l} prod_i (1 - max(x_ki, x_li))
//             - 2N sum_k prod_i (1 - x_ki^2)/2 + N^2 3^-s.
//
// Exact mode scales coordinate i by the common denominator L_i so that every
// factor is an integer; the accumulation stays in 128-bit integers whenever
// the bounds allow and falls back to GMP otherwise.

namespace {

using u128 = unsigned __int128;

BigInt from_u128(u128 v) {
  return (from_uint64(static_cast<std::uint64_t>(v >> 64)) << 64) + from_uint64(static_cast<std::uint64_t>(v));
}

struct ScaledPoints {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<BigInt> denom;  // L_i
  std::vector<BigInt> coord;  // row-major x_ki * L_i
};

ScaledPoints scale(const PointSet& set) {
  ScaledPoints sp;
  sp.count = set.count();
  sp.dim = set.dim();
  sp.denom.assign(sp.dim, 1);
  for (const RationalPoint& pt : set.points()) {
    for (std::size_t i = 0; i < sp.dim; ++i) {
      mpz_lcm(sp.denom[i].get_mpz_t(), sp.denom[i].get_mpz_t(), pt[i].get_den_mpz_t());
    }
  }
  sp.coord.reserve(sp.count * sp.dim);
  for (const RationalPoint& pt : set.points()) {
    for (std::size_t i = 0; i < sp.dim; ++i) sp.coord.push_back(pt[i].get_num() * (sp.denom[i] / pt[i].get_den()));
  }
  return sp;
}

// Returns (S1, S2) with S1 = sum_{k,l} prod (L - max), S2 = sum_k prod (L^2 - a^2).
std::pair<BigInt, BigInt> warnock_sums_u128(const ScaledPoints& sp) {
  const std::size_t n = sp.count;
  const std::size_t s = sp.dim;
  std::vector<std::uint64_t> L(s);
  std::vector<std::uint64_t> a(n * s);
  for (std::size_t i = 0; i < s; ++i) L[i] = to_uint64(sp.denom[i]);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = to_uint64(sp.coord[j]);

  u128 diag = 0;
  u128 off = 0;
  u128 s2 = 0;
  if (s == 2) {
    const std::uint64_t L0 = L[0];
    const std::uint64_t L1 = L[1];
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t xk = a[2 * k];
      const std::uint64_t yk = a[2 * k + 1];
      diag += static_cast<u128>(L0 - xk) * (L1 - yk);
      s2 += (static_cast<u128>(L0) * L0 - static_cast<u128>(xk) * xk) *
            (static_cast<u128>(L1) * L1 - static_cast<u128>(yk) * yk);
      u128 row = 0;
      for (std::size_t l = k + 1; l < n; ++l) {
        const std::uint64_t mx = std::max(xk, a[2 * l]);
        const std::uint64_t my = std::max(yk, a[2 * l + 1]);
        row += static_cast<u128>(L0 - mx) * (L1 - my);
      }
      off += row;
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      u128 d = 1;
      u128 q = 1;
      for (std::size_t i = 0; i < s; ++i) {
        const std::uint64_t x = a[k * s + i];
        d *= (L[i] - x);
        q *= static_cast<u128>(L[i]) * L[i] - static_cast<u128>(x) * x;
      }
      diag += d;
      s2 += q;
      for (std::size_t l = k + 1; l < n; ++l) {
        u128 t = 1;
        for (std::size_t i = 0; i < s; ++i) t *= (L[i] - std::max(a[k * s + i], a[l * s + i]));
        off += t;
      }
    }
  }
  return {from_u128(diag) + 2 * from_u128(off), from_u128(s2)};
}

std::pair<BigInt, BigInt> warnock_sums_mpz(const ScaledPoints& sp) {
  const std::size_t n = sp.count;
  const std::size_t s = sp.dim;
  BigInt diag = 0;
  BigInt off = 0;
  BigInt s2 = 0;
  BigInt t;
  for (std::size_t k = 0; k < n; ++k) {
    BigInt d = 1;
    BigInt q = 1;
    for (std::size_t i = 0; i < s; ++i) {
      const BigInt& x = sp.coord[k * s + i];
      d *= sp.denom[i] - x;
      q *= sp.denom[i] * sp.denom[i] - x * x;
    }
    diag += d;
    s2 += q;
    for (std::size_t l = k + 1; l < n; ++l) {
      t = 1;
      for (std::size_t i = 0; i < s; ++i) {
        const BigInt& x = sp.coord[k * s + i];
        const BigInt& y = sp.coord[l * s + i];
        t *= sp.denom[i] - (x > y ? x : y);
      }
      off += t;
    }
  }
  return {diag + 2 * off, s2};
}

}  // namespace

Rational l2_discrepancy_squared_exact(const PointSet& set) {
  if (set.count() == 0) throw std::invalid_argument("L2 discrepancy needs N >= 1");
  const ScaledPoints sp = scale(set);
  const std::size_t s = sp.dim;
  const BigInt n = from_uint64(sp.count);

  BigInt prod_l = 1;
  bool narrow = true;
  for (const BigInt& L : sp.denom) {
    prod_l *= L;
    narrow = narrow && bit_length(L) <= 62;
  }
  const BigInt limit = BigInt(1) << 125;
  narrow = narrow && n * n * prod_l < limit && n * prod_l * prod_l < limit;
  for (std::size_t i = 0; narrow && i < s; ++i) narrow = bit_length(sp.denom[i] * sp.denom[i]) <= 126;

  const auto [s1, s2] = narrow ? warnock_sums_u128(sp) : warnock_sums_mpz(sp);

  Rational first(s1, prod_l);
  Rational second(2 * n * s2, (BigInt(1) << s) * prod_l * prod_l);
  Rational third(n * n, ipow(3, s));
  first.canonicalize();
  second.canonicalize();
  third.canonicalize();
  Rational out = first - second + third;
  out.canonicalize();
  return out;
}

double l2_discrepancy_squared_f64(const FloatPointSet& set, unsigned threads) {
  const std::size_t n = set.count();
  const std::size_t s = set.dim;
  if (n == 0) throw std::invalid_argument("L2 discrepancy needs N >= 1");

  // Centered kernel K(x,y) = prod(1 - max) - g(x) - g(y) + 3^-s with
  // g(x) = prod (1 - x_i^2)/2. Each row sum integrates to zero against the
  // uniform measure, so row sums stay O(discrepancy) instead of O(N).
  std::vector<double> g(n);
  double third = 1.0;
  for (std::size_t i = 0; i < s; ++i) third /= 3.0;
  for (std::size_t k = 0; k < n; ++k) {
    double v = 1.0;
    for (std::size_t i = 0; i < s; ++i) v *= 0.5 * (1.0 - set.coords[k * s + i] * set.coords[k * s + i]);
    g[k] = v;
  }
  const double* c = set.coords.data();
  const double* gp = g.data();

  constexpr std::size_t kRowsPerBlock = 32;
  const std::size_t blocks = (n + kRowsPerBlock - 1) / kRowsPerBlock;
  auto block = [&](std::size_t b) {
    std::vector<double> terms(n);
    std::vector<double> rows;
    const std::size_t lo = b * kRowsPerBlock;
    const std::size_t hi = std::min(n, lo + kRowsPerBlock);
    for (std::size_t k = lo; k < hi; ++k) {
      const double shift = third - gp[k];
      if (s == 2) {
        const double xk = c[2 * k];
        const double yk = c[2 * k + 1];
        for (std::size_t l = 0; l < n; ++l) {
          terms[l] = (1.0 - std::max(xk, c[2 * l])) * (1.0 - std::max(yk, c[2 * l + 1])) - gp[l] + shift;
        }
      } else {
        for (std::size_t l = 0; l < n; ++l) {
          double t = 1.0;
          for (std::size_t i = 0; i < s; ++i) t *= 1.0 - std::max(c[k * s + i], c[l * s + i]);
          terms[l] = t - gp[l] + shift;
        }
      }
      rows.push_back(pairwise_sum(terms));
    }
    return pairwise_sum(rows);
  };
  return deterministic_block_sum(blocks, block, threads);
}

DiscrepancyValue l2_discrepancy_squared(const PointSet& set, Mode mode, unsigned threads) {
  if (mode == Mode::exact) return DiscrepancyValue::from_exact(l2_discrepancy_squared_exact(set));
  return DiscrepancyValue::from_float(l2_discrepancy_squared_f64(to_float(set), threads));
}

// ---------------------------------------------------------------------------
// Star discrepancy (s <= 2). The count #{beta < x} is constant on the cells
// (c_j, c_{j+1}] x (d_l, d_{l+1}] of the grid spanned by 0, 1 and the point
// coordinates; on such a cell N x1 x2 sweeps (N c_j d_l, N c_{j+1} d_{l+1}], so
// the supremum of |D| over the cell is the larger of the two corner gaps, the
// lower one approached from the open side.

namespace {

std::vector<Rational> grid_axis(const PointSet& set, std::size_t i) {
  std::vector<Rational> axis{Rational(0), Rational(1)};
  for (const RationalPoint& pt : set.points()) axis.push_back(pt[i]);
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  return axis;
}

std::size_t axis_index(const std::vector<Rational>& axis, const Rational& v) {
  return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
}

}  // namespace

DiscrepancyValue star_discrepancy(const PointSet& set) {
  const std::size_t s = set.dim();
  if (s == 0 || s > 2) throw std::invalid_argument("star discrepancy is implemented for s in {1, 2} only");
  if (set.count() == 0) throw std::invalid_argument("star discrepancy needs N >= 1");
  const Rational n(from_uint64(set.count()));

  Rational best = 0;
  auto consider = [&best](const Rational& v) {
    const Rational a = abs(v);
    if (a > best) best = a;
  };

  if (s == 1) {
    const std::vector<Rational> c = grid_axis(set, 0);
    std::vector<std::uint64_t> at(c.size(), 0);
    for (const RationalPoint& pt : set.points()) ++at[axis_index(c, pt[0])];
    std::uint64_t below = 0;  // #{beta <= c_j}
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
      below += at[j];
      const Rational k(from_uint64(below));
      consider(k - n * c[j]);
      consider(k - n * c[j + 1]);
    }
    return DiscrepancyValue::from_exact(best);
  }

  const std::vector<Rational> c = grid_axis(set, 0);
  const std::vector<Rational> d = grid_axis(set, 1);
  const std::size_t w = d.size();
  // cum[j][l] = #{beta : beta_1 <= c_j, beta_2 <= d_l}
  std::vector<std::uint64_t> cum(c.size() * w, 0);
  for (const RationalPoint& pt : set.points()) ++cum[axis_index(c, pt[0]) * w + axis_index(d, pt[1])];
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t l = 0; l < w; ++l) {
      std::uint64_t v = cum[j * w + l];
      if (j > 0) v += cum[(j - 1) * w + l];
      if (l > 0) v += cum[j * w + l - 1];
      if (j > 0 && l > 0) v -= cum[(j - 1) * w + l - 1];
      cum[j * w + l] = v;
    }
  }
  for (std::size_t j = 0; j + 1 < c.size(); ++j) {
    const Rational nc_lo = n * c[j];
    const Rational nc_hi = n * c[j + 1];
    for (std::size_t l = 0; l + 1 < w; ++l) {
      const Rational k(from_uint64(cum[j * w + l]));
      consider(k - nc_lo * d[l]);
      consider(k - nc_hi * d[l + 1]);
    }
  }
  return DiscrepancyValue::from_exact(best);
}

// ---------------------------------------------------------------------------
// Truncation and the elementary-box decomposition.

Rational truncate(const Rational& x, Base p, unsigned r) {
  if (x < 0 || x > 1) throw std::invalid_argument("truncate: x = " + to_string(x) + " outside [0,1]");
  if (x == 1) return x;
  const BigInt scale = ipow(p.value(), r);
  Rational out(floor(Rational(x * Rational(scale))), scale);
  out.canonicalize();
  return out;
}

RationalPoint truncate(const RationalPoint& x, TruncIndex r, const BasisPair& bases) {
  if (x.dim() != 2) throw std::invalid_argument("truncate: point must be two-dimensional");
  return RationalPoint{truncate(x[0], bases[0], r.r1()), truncate(x[1], bases[1], r.r2())};
}

unsigned truncation_depth(std::uint64_t count) {
  if (count == 0) throw std::invalid_argument("truncation depth needs N >= 1");
  return static_cast<unsigned>(std::bit_width(count));
}

Rational halton_local_discrepancy(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                                  const BasisPair& bases) {
  if (x.dim() != 2) throw std::invalid_argument("corner must be two-dimensional");
  std::uint64_t hits = 0;
  BigInt k = start;
  const bool narrow = BigInt(start + from_uint64(count)).fits_ulong_p();
  for (std::uint64_t j = 0; j < count; ++j, ++k) {
    bool inside = true;
    for (std::size_t i = 0; i < 2 && inside; ++i) {
      const Rational phi = narrow ? radical_inverse(to_uint64(k), bases[i]) : radical_inverse(k, bases[i]);
      inside = phi < x[i];
    }
    hits += inside ? 1 : 0;
  }
  Rational out = Rational(from_uint64(hits)) - Rational(from_uint64(count)) * x[0] * x[1];
  out.canonicalize();
  return out;
}

Rational truncated_discrepancy(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                               const BasisPair& bases) {
  const unsigned n = truncation_depth(count);
  return halton_local_discrepancy(truncate(x, TruncIndex(n, n), bases), start, count, bases);
}

BigInt count_congruent(const BigInt& a, const BigInt& modulus, const BigInt& start, std::uint64_t count) {
  // floor((Q + N - 1 - a)/P) - floor((Q - 1 - a)/P)
  BigInt hi;
  BigInt lo;
  const BigInt top = start + from_uint64(count) - 1 - a;
  const BigInt bottom = start - 1 - a;
  mpz_fdiv_q(hi.get_mpz_t(), top.get_mpz_t(), modulus.get_mpz_t());
  mpz_fdiv_q(lo.get_mpz_t(), bottom.get_mpz_t(), modulus.get_mpz_t());
  return hi - lo;
}

namespace {

Rational term_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                          const ResidueData& rd, const BigInt& start, std::uint64_t count) {
  const std::uint32_t top1 = d1[rd.r.r1() - 1];
  const std::uint32_t top2 = d2[rd.r.r2() - 1];
  if (top1 == 0 || top2 == 0) return 0;
  BigInt hits = 0;
  for (std::uint32_t b1 = 0; b1 < top1; ++b1) {
    for (std::uint32_t b2 = 0; b2 < top2; ++b2) {
      hits += count_congruent(x_residue_b_from_digits(d1, d2, rd, {b1, b2}), rd.modulus, start, count);
    }
  }
  const BigInt cells = BigInt(top1) * top2;
  Rational out = Rational(hits) - Rational(cells * from_uint64(count), rd.modulus);
  out.canonicalize();
  return out;
}

}  // namespace

Rational lemma2_term(const RationalPoint& x, TruncIndex r, const BigInt& start, std::uint64_t count,
                     const BasisPair& bases) {
  if (x.dim() != 2) throw std::invalid_argument("lemma2_term: point must be two-dimensional");
  if (r.r1() == 0 || r.r2() == 0) throw std::invalid_argument("lemma2_term: depths must be >= 1");
  const ResidueData rd = crt_inverses(bases, r);
  return term_from_digits(leading_digits(x[0], bases[0], r.r1()), leading_digits(x[1], bases[1], r.r2()), rd,
                          start, count);
}

std::vector<Rational> lemma2_terms_from_digits(std::span<const std::uint32_t> d1, std::span<const std::uint32_t> d2,
                                               unsigned depth, const BigInt& start, std::uint64_t count,
                                               const BasisPair& bases) {
  std::vector<Rational> terms;
  terms.reserve(static_cast<std::size_t>(depth) * depth);
  for (unsigned r1 = 1; r1 <= depth; ++r1) {
    for (unsigned r2 = 1; r2 <= depth; ++r2) {
      terms.push_back(term_from_digits(d1, d2, crt_inverses(bases, TruncIndex(r1, r2)), start, count));
    }
  }
  return terms;
}

Lemma2Decomposition lemma2_decomposition(const RationalPoint& x, const BigInt& start, std::uint64_t count,
                                         const BasisPair& bases) {
  if (x.dim() != 2) throw std::invalid_argument("lemma2_decomposition: point must be two-dimensional");
  Lemma2Decomposition out;
  out.depth = truncation_depth(count);
  const auto d1 = leading_digits(x[0], bases[0], out.depth);
  const auto d2 = leading_digits(x[1], bases[1], out.depth);
  out.terms = lemma2_terms_from_digits(d1, d2, out.depth, start, count, bases);
  out.total = 0;
  out.max_abs = 0;
  for (const Rational& t : out.terms) {
    out.total += t;
    if (abs(t) > out.max_abs) out.max_abs = abs(t);
  }
  return out;
}

}  // namespace halton
