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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "halton/numeric.hpp"

namespace halton {

/// Integer radix >= 2.
class Base {
 public:
  explicit Base(std::uint32_t value);

  std::uint32_t value() const noexcept { return value_; }
  bool is_prime() const noexcept;

  friend bool operator==(Base, Base) = default;

 private:
  std::uint32_t value_;
};

/// Two coprime bases (p1, p2). The decomposition machinery is two-dimensional
/// and only ever sees bases through this type.
class BasisPair {
 public:
  BasisPair(Base first, Base second);

  Base first() const noexcept { return first_; }
  Base second() const noexcept { return second_; }
  /// i in {0, 1}.
  Base operator[](std::size_t i) const noexcept { return i == 0 ? first_ : second_; }
  std::uint32_t p(std::size_t i) const noexcept { return (*this)[i].value(); }
  /// Both bases prime. The p-adic code needs this, the generators do not.
  bool primes() const noexcept { return primes_; }
  std::vector<Base> as_vector() const { return {first_, second_}; }

 private:
  Base first_;
  Base second_;
  bool primes_;
};

/// Throws std::invalid_argument unless the bases are pairwise coprime.
void require_pairwise_coprime(std::span<const Base> bases);

/// First `count` primes, as bases.
std::vector<Base> first_prime_bases(std::size_t count);

/// Base-p digits, least significant first. Empty for value 0.
struct DigitVector {
  Base base;
  std::vector<std::uint32_t> digits;
  BigInt value;
};

DigitVector digits(const BigInt& n, Base p);

Rational radical_inverse(const BigInt& n, Base p);
Rational radical_inverse(std::uint64_t n, Base p);
/// Correctly rounded whenever the exact denominator is below 2^53.
double radical_inverse_f64(std::uint64_t n, Base p);

class RationalPoint {
 public:
  RationalPoint() = default;
  explicit RationalPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  RationalPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }
  bool in_unit_cube() const;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;

 private:
  std::vector<Rational> coords_;
};

RationalPoint halton_point(const BigInt& n, std::span<const Base> bases);

enum class PointSetKind { halton, hammersley, van_der_corput, explicit_points };

std::string_view to_string(PointSetKind kind);
PointSetKind parse_point_set_kind(std::string_view name);

inline constexpr std::size_t kDefaultEagerCap = std::size_t{1} << 22;

/// Immutable ordered point set with its generation metadata.
class PointSet {
 public:
  PointSet(PointSetKind kind, std::vector<Base> bases, BigInt start, std::vector<RationalPoint> points);

  static PointSet from_points(std::vector<RationalPoint> points);

  PointSetKind kind() const noexcept { return kind_; }
  std::span<const Base> bases() const noexcept { return bases_; }
  const BigInt& start() const noexcept { return start_; }
  std::size_t count() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const RationalPoint> points() const noexcept { return points_; }
  const RationalPoint& operator[](std::size_t k) const { return points_[k]; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  PointSetKind kind_;
  std::vector<Base> bases_;
  BigInt start_;
  std::size_t dim_ = 0;
  std::vector<RationalPoint> points_;
};

/// Eager enumeration. hammersley requires start == 0 and appends n/N as the
/// last coordinate; van_der_corput takes exactly one base. Throws
/// std::length_error above eager_cap (use HaltonStream instead).
PointSet point_set(PointSetKind kind, std::vector<Base> bases, const BigInt& start, std::uint64_t count,
                   std::size_t eager_cap = kDefaultEagerCap);

/// Lazy Halton enumeration for counts beyond the eager cap.
class HaltonStream {
 public:
  HaltonStream(std::vector<Base> bases, BigInt start, std::uint64_t count);

  bool done() const noexcept { return emitted_ == count_; }
  std::uint64_t remaining() const noexcept { return count_ - emitted_; }
  RationalPoint next();

 private:
  std::vector<Base> bases_;
  BigInt index_;
  std::uint64_t count_;
  std::uint64_t emitted_ = 0;
};

/// Row-major float64 view of a point set.
struct FloatPointSet {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t count() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t k) const { return {coords.data() + k * dim, dim}; }
};

FloatPointSet to_float(const PointSet& set);
FloatPointSet halton_f64(std::span<const Base> bases, std::uint64_t start, std::uint64_t count);
FloatPointSet hammersley_f64(std::span<const Base> bases, std::uint64_t count);

}  // namespace halton
