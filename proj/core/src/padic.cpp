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

#include "halton/padic.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "halton/reduce.hpp"

namespace halton {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("valuation needs a prime, got " + std::to_string(p));
}

}  // namespace

PadicRational::PadicRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("PadicRational: zero denominator");
  value_ = Rational(num, den);
  value_.canonicalize();
}

PadicRational::PadicRational(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

long ord_int(const BigInt& n, std::uint32_t p) {
  if (n == 0) throw std::invalid_argument("ord_int: zero has no finite valuation");
  require_prime(p);
  if (p == 2) return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
  BigInt rest;
  BigInt prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

std::optional<long> PadicRational::ord(std::uint32_t p) const {
  require_prime(p);
  if (is_zero()) return std::nullopt;
  const auto hit = cache_.find(p);
  if (hit != cache_.end()) return hit->second;
  // Lowest terms: at most one of num, den is divisible by p.
  const long v = ord_int(num(), p) - ord_int(den(), p);
  cache_.emplace(p, v);
  return v;
}

std::optional<long> ord(const PadicRational& g, std::uint32_t p) { return g.ord(p); }

double weil_height(const PadicRational& g) {
  if (g.is_zero()) throw std::invalid_argument("weil_height: zero has no height");
  const BigInt a = abs(g.num());
  const BigInt& b = g.den();
  const BigInt& top = a > b ? a : b;
  // log of a big integer without overflow: mantissa and binary exponent.
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, top.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

namespace {

void check_instance(const LinFormInstance& inst) {
  require_prime(inst.p);
  if (inst.p_other < 2 || std::gcd(inst.p, inst.p_other) != 1) {
    throw std::invalid_argument("xi_ord: p and p_other must be coprime");
  }
  if (inst.l1 == 0 || inst.l2 == 0) throw std::invalid_argument("xi_ord: l1, l2 must be nonzero");
  if (ord_int(from_int64(inst.l1), inst.p) != ord_int(from_int64(inst.l2), inst.p)) {
    throw std::invalid_argument("xi_ord: ord_p(l1/l2) != 0");
  }
}

}  // namespace

PadicRational xi_value(const LinFormInstance& inst) {
  if (inst.l2 == 0) throw std::invalid_argument("xi_value: l2 must be nonzero");
  Rational ratio(from_int64(inst.l1), from_int64(inst.l2));
  ratio.canonicalize();
  return PadicRational(Rational(ratio * Rational(ipow(inst.p_other, inst.b)) - 1));
}

std::optional<long> xi_ord(const LinFormInstance& inst) {
  check_instance(inst);
  const BigInt numer = from_int64(inst.l1) * ipow(inst.p_other, inst.b) - from_int64(inst.l2);
  if (numer == 0) return std::nullopt;
  return ord_int(numer, inst.p) - ord_int(from_int64(inst.l2), inst.p);
}

long lte_ord(std::uint32_t p, std::uint32_t p_other, std::uint32_t b) {
  require_prime(p);
  if (b == 0) throw std::invalid_argument("lte_ord: b must be >= 1");
  if (p_other % p == 0) throw std::invalid_argument("lte_ord: p divides p_other");
  const BigInt q(p_other);
  if (p == 2) {
    const long base = ord_int(q - 1, 2);
    if (b % 2 == 1) return base;
    return base + ord_int(q + 1, 2) + ord_int(BigInt(b), 2) - 1;
  }
  // t = multiplicative order of p_other mod p; p | p_other^k - 1 iff t | k.
  std::uint32_t t = 1;
  std::uint64_t acc = p_other % p;
  while (acc != 1) {
    acc = acc * (p_other % p) % p;
    ++t;
  }
  if (b % t != 0) return 0;
  return ord_int(ipow(q, t) - 1, p) + ord_int(BigInt(b / t), p);
}

namespace {

struct BlockResult {
  std::uint64_t instances = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t lte_checked = 0;
  std::uint64_t lte_mismatches = 0;
  long max_ord = 0;
  double max_ratio = 0.0;
  ScanRow argmax;
  bool has_max = false;
  std::vector<ScanRow> rows;
};

}  // namespace

ScanReport corollary_scan(std::uint32_t p, std::uint32_t p_other, std::int64_t l_max, std::uint32_t b_max,
                          bool keep_rows, unsigned threads) {
  require_prime(p);
  if (p_other < 2 || std::gcd(p, p_other) != 1) throw std::invalid_argument("corollary_scan: bases not coprime");
  if (l_max < 1) throw std::invalid_argument("corollary_scan: l_max must be >= 1");

  std::vector<std::int64_t> ls;
  for (std::int64_t l = -l_max; l <= l_max; ++l) {
    if (l != 0) ls.push_back(l);
  }
  std::vector<long> l_ord(ls.size());
  for (std::size_t k = 0; k < ls.size(); ++k) l_ord[k] = ord_int(from_int64(ls[k]), p);
  std::vector<BigInt> powers(b_max + 1);
  powers[0] = 1;
  for (std::uint32_t b = 1; b <= b_max; ++b) powers[b] = powers[b - 1] * p_other;
  std::vector<double> log_b(b_max + 1);
  for (std::uint32_t b = 0; b <= b_max; ++b) log_b[b] = std::log2(std::max<double>(b, 3.0));
  std::vector<long> lte(b_max + 1, 0);
  for (std::uint32_t b = 1; b <= b_max; ++b) lte[b] = lte_ord(p, p_other, b);

  // One block per l1; blocks are merged in order afterwards.
  std::vector<BlockResult> blocks(ls.size());
  run_blocks(
      ls.size(),
      [&](std::size_t i1) {
        BlockResult& out = blocks[i1];
        const std::int64_t l1 = ls[i1];
        BigInt value;
        for (std::size_t i2 = 0; i2 < ls.size(); ++i2) {
          if (l_ord[i1] != l_ord[i2]) continue;
          const std::int64_t l2 = ls[i2];
          const double log_l = std::log2(std::max<double>({static_cast<double>(std::abs(l1)),
                                                           static_cast<double>(std::abs(l2)), 3.0}));
          for (std::uint32_t b = 0; b <= b_max; ++b) {
            mpz_mul_si(value.get_mpz_t(), powers[b].get_mpz_t(), l1);
            if (l2 >= 0) {
              mpz_sub_ui(value.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(l2));
            } else {
              mpz_add_ui(value.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(-l2));
            }
            if (value == 0) {
              ++out.degenerate;
              continue;
            }
            ++out.instances;
            const long v = ord_int(value, p) - l_ord[i2];
            if (l1 == l2 && b >= 1) {
              ++out.lte_checked;
              if (v != lte[b]) ++out.lte_mismatches;
            }
            const ScanRow row{l1, l2, b, v, static_cast<double>(v) / (log_l * log_b[b])};
            if (!out.has_max || row.ratio > out.max_ratio) {
              out.max_ratio = row.ratio;
              out.argmax = row;
              out.has_max = true;
            }
            out.max_ord = std::max(out.max_ord, v);
            if (keep_rows) out.rows.push_back(row);
          }
        }
        return 0.0;
      },
      threads);

  ScanReport report;
  report.p = p;
  report.p_other = p_other;
  report.l_max = l_max;
  report.b_max = b_max;
  bool has_max = false;
  for (BlockResult& blk : blocks) {
    report.instances += blk.instances;
    report.degenerate += blk.degenerate;
    report.lte_checked += blk.lte_checked;
    report.lte_mismatches += blk.lte_mismatches;
    report.max_ord = std::max(report.max_ord, blk.max_ord);
    if (blk.has_max && (!has_max || blk.max_ratio > report.max_ratio)) {
      report.max_ratio = blk.max_ratio;
      report.argmax = blk.argmax;
      has_max = true;
    }
    if (keep_rows) report.rows.insert(report.rows.end(), blk.rows.begin(), blk.rows.end());
  }
  return report;
}

void write_scan_csv(std::ostream& os, const ScanReport& report) {
  os << "l1,l2,b,ord,ratio\n" << std::setprecision(17);
  for (const ScanRow& r : report.rows) os << r.l1 << ',' << r.l2 << ',' << r.b << ',' << r.ord << ',' << r.ratio << '\n';
}

}  // namespace halton
