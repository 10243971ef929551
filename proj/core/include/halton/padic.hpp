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

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "halton/numeric.hpp"

namespace halton {

/// A reduced rational with memoized valuations.
class PadicRational {
 public:
  PadicRational(const BigInt& num, const BigInt& den = 1);
  explicit PadicRational(Rational value);
  template <std::integral T>
  PadicRational(T value) : PadicRational(from_int64(static_cast<std::int64_t>(value))) {}

  const BigInt& num() const noexcept { return value_.get_num(); }
  const BigInt& den() const noexcept { return value_.get_den(); }
  const Rational& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  /// ord_p, or nullopt for zero. p must be prime (std::invalid_argument otherwise).
  std::optional<long> ord(std::uint32_t p) const;

  friend PadicRational operator*(const PadicRational& a, const PadicRational& b) {
    return PadicRational(Rational(a.value_ * b.value_));
  }

 private:
  Rational value_;
  mutable std::map<std::uint32_t, long> cache_;
};

/// Exponent of p in n != 0.
long ord_int(const BigInt& n, std::uint32_t p);
std::optional<long> ord(const PadicRational& g, std::uint32_t p);

/// log max(|a|, |b|) for g = a/b in lowest terms. Rejects zero.
double weil_height(const PadicRational& g);

struct LinFormInstance {
  std::uint32_t p = 2;        // valuation prime
  std::uint32_t p_other = 3;  // the other base
  std::int64_t l1 = 1;
  std::int64_t l2 = 1;
  std::uint32_t b = 0;
};

/// Xi = (l1/l2) p_other^b - 1.
PadicRational xi_value(const LinFormInstance& inst);

/// ord_p(Xi) = ord_p(l1 p_other^b - l2) - ord_p(l2). nullopt when Xi = 0.
/// Throws std::invalid_argument if ord_p(l1/l2) != 0 or l_i = 0.
std::optional<long> xi_ord(const LinFormInstance& inst);

/// Independent lifting-the-exponent value of ord_p(p_other^b - 1), b >= 1.
long lte_ord(std::uint32_t p, std::uint32_t p_other, std::uint32_t b);

struct ScanRow {
  std::int64_t l1 = 0;
  std::int64_t l2 = 0;
  std::uint32_t b = 0;
  long ord = 0;
  double ratio = 0.0;
};

struct ScanReport {
  std::uint32_t p = 2;
  std::uint32_t p_other = 3;
  std::int64_t l_max = 0;
  std::uint32_t b_max = 0;
  std::uint64_t instances = 0;  // valid (l1, l2, b) with Xi != 0
  std::uint64_t degenerate = 0; // Xi = 0, excluded
  std::uint64_t lte_checked = 0;
  std::uint64_t lte_mismatches = 0;
  long max_ord = 0;
  double max_ratio = 0.0;
  ScanRow argmax;
  std::vector<ScanRow> rows;  // filled only when requested
};

/// All l1, l2 in [-l_max, l_max] \ {0} with ord_p(l1/l2) = 0 and b in [0, b_max].
/// ratio = ord / (log2 max(|l1|,|l2|,3) * log2 max(b,3)). Instances with
/// l1 = l2, b >= 1 are checked against lte_ord.
ScanReport corollary_scan(std::uint32_t p, std::uint32_t p_other, std::int64_t l_max, std::uint32_t b_max,
                          bool keep_rows = false, unsigned threads = 0);

void write_scan_csv(std::ostream& os, const ScanReport& report);

bool is_prime(std::uint64_t n);

}  // namespace halton
