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

#include "halton/radical.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace halton {

namespace {

using u128 = unsigned __int128;

BigInt from_u128(u128 v) {
  BigInt hi = from_uint64(static_cast<std::uint64_t>(v >> 64));
  BigInt lo = from_uint64(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

Base::Base(std::uint32_t value) : value_(value) {
  if (value < 2) throw std::invalid_argument("base must be >= 2, got " + std::to_string(value));
}

bool Base::is_prime() const noexcept { return is_prime_u32(value_); }

BasisPair::BasisPair(Base first, Base second)
    : first_(first), second_(second), primes_(first.is_prime() && second.is_prime()) {
  if (std::gcd(first.value(), second.value()) != 1) {
    throw std::invalid_argument("bases " + std::to_string(first.value()) + " and " +
                                std::to_string(second.value()) + " are not coprime");
  }
}

void require_pairwise_coprime(std::span<const Base> bases) {
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      if (std::gcd(bases[i].value(), bases[j].value()) != 1) {
        throw std::invalid_argument("bases " + std::to_string(bases[i].value()) + " and " +
                                    std::to_string(bases[j].value()) + " are not coprime");
      }
    }
  }
}

std::vector<Base> first_prime_bases(std::size_t count) {
  std::vector<Base> out;
  for (std::uint32_t n = 2; out.size() < count; ++n) {
    if (is_prime_u32(n)) out.emplace_back(n);
  }
  return out;
}

DigitVector digits(const BigInt& n, Base p) {
  if (n < 0) throw std::invalid_argument("digits: negative input " + n.get_str());
  DigitVector out{p, {}, n};
  BigInt rest = n;
  while (rest != 0) {
    const unsigned long d = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p.value());
    out.digits.push_back(static_cast<std::uint32_t>(d));
  }
  return out;
}

Rational radical_inverse(const BigInt& n, Base p) {
  const DigitVector dv = digits(n, p);
  BigInt num = 0;
  for (std::uint32_t d : dv.digits) num = num * p.value() + d;
  Rational q(num, ipow(p.value(), dv.digits.size()));
  q.canonicalize();
  return q;
}

Rational radical_inverse(std::uint64_t n, Base p) {
  // n < 2^64 and p < 2^32 keep the reversed numerator and p^len below 2^96.
  u128 num = 0;
  u128 den = 1;
  const std::uint64_t base = p.value();
  while (n != 0) {
    num = num * base + n % base;
    den *= base;
    n /= base;
  }
  Rational q(from_u128(num), from_u128(den));
  q.canonicalize();
  return q;
}

double radical_inverse_f64(std::uint64_t n, Base p) {
  u128 num = 0;
  u128 den = 1;
  const std::uint64_t base = p.value();
  while (n != 0) {
    num = num * base + n % base;
    den *= base;
    n /= base;
  }
  if (den < (u128{1} << 64)) {
    return static_cast<double>(static_cast<std::uint64_t>(num)) /
           static_cast<double>(static_cast<std::uint64_t>(den));
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

bool RationalPoint::in_unit_cube() const {
  for (const Rational& c : coords_) {
    if (c < 0 || c >= 1) return false;
  }
  return true;
}

RationalPoint halton_point(const BigInt& n, std::span<const Base> bases) {
  require_pairwise_coprime(bases);
  std::vector<Rational> coords;
  coords.reserve(bases.size());
  for (Base b : bases) coords.push_back(radical_inverse(n, b));
  return RationalPoint(std::move(coords));
}

std::string_view to_string(PointSetKind kind) {
  switch (kind) {
    case PointSetKind::halton: return "halton";
    case PointSetKind::hammersley: return "hammersley";
    case PointSetKind::van_der_corput: return "van_der_corput";
    case PointSetKind::explicit_points: return "explicit";
  }
  return "explicit";
}

PointSetKind parse_point_set_kind(std::string_view name) {
  if (name == "halton") return PointSetKind::halton;
  if (name == "hammersley") return PointSetKind::hammersley;
  if (name == "van_der_corput" || name == "vdc") return PointSetKind::van_der_corput;
  if (name == "explicit") return PointSetKind::explicit_points;
  throw std::invalid_argument("unknown point set kind: " + std::string(name));
}

PointSet::PointSet(PointSetKind kind, std::vector<Base> bases, BigInt start, std::vector<RationalPoint> points)
    : kind_(kind), bases_(std::move(bases)), start_(std::move(start)), points_(std::move(points)) {
  if (start_ < 0) throw std::invalid_argument("point set start index must be >= 0");
  if (!points_.empty()) dim_ = points_.front().dim();
  for (const RationalPoint& pt : points_) {
    if (pt.dim() != dim_) throw std::invalid_argument("point set has mixed dimensions");
    if (!pt.in_unit_cube()) throw std::invalid_argument("point set coordinates must lie in [0,1)");
  }
}

PointSet PointSet::from_points(std::vector<RationalPoint> points) {
  return PointSet(PointSetKind::explicit_points, {}, 0, std::move(points));
}

PointSet point_set(PointSetKind kind, std::vector<Base> bases, const BigInt& start, std::uint64_t count,
                   std::size_t eager_cap) {
  if (count == 0) throw std::invalid_argument("point set needs N >= 1");
  if (count > eager_cap) {
    throw std::length_error("N = " + std::to_string(count) + " exceeds the eager cap " +
                            std::to_string(eager_cap) + "; use HaltonStream");
  }
  require_pairwise_coprime(bases);
  std::vector<RationalPoint> points;
  points.reserve(count);
  switch (kind) {
    case PointSetKind::van_der_corput:
      if (bases.size() != 1) throw std::invalid_argument("van der Corput takes exactly one base");
      [[fallthrough]];
    case PointSetKind::halton: {
      if (bases.empty()) throw std::invalid_argument("halton needs at least one base");
      BigInt n = start;
      for (std::uint64_t k = 0; k < count; ++k, ++n) points.push_back(halton_point(n, bases));
      break;
    }
    case PointSetKind::hammersley: {
      if (start != 0) throw std::invalid_argument("hammersley sets start at index 0");
      for (std::uint64_t k = 0; k < count; ++k) {
        std::vector<Rational> coords;
        coords.reserve(bases.size() + 1);
        for (Base b : bases) coords.push_back(radical_inverse(k, b));
        Rational last(from_uint64(k), from_uint64(count));
        last.canonicalize();
        coords.push_back(std::move(last));
        points.emplace_back(std::move(coords));
      }
      break;
    }
    case PointSetKind::explicit_points:
      throw std::invalid_argument("explicit point sets are built with PointSet::from_points");
  }
  return PointSet(kind, std::move(bases), start, std::move(points));
}

HaltonStream::HaltonStream(std::vector<Base> bases, BigInt start, std::uint64_t count)
    : bases_(std::move(bases)), index_(std::move(start)), count_(count) {
  require_pairwise_coprime(bases_);
  if (index_ < 0) throw std::invalid_argument("start index must be >= 0");
}

RationalPoint HaltonStream::next() {
  if (done()) throw std::out_of_range("HaltonStream exhausted");
  RationalPoint pt = halton_point(index_, bases_);
  ++index_;
  ++emitted_;
  return pt;
}

FloatPointSet to_float(const PointSet& set) {
  FloatPointSet out;
  out.dim = set.dim();
  out.coords.reserve(set.count() * set.dim());
  for (const RationalPoint& pt : set.points()) {
    for (const Rational& c : pt.coords()) out.coords.push_back(to_double(c));
  }
  return out;
}

FloatPointSet halton_f64(std::span<const Base> bases, std::uint64_t start, std::uint64_t count) {
  require_pairwise_coprime(bases);
  FloatPointSet out;
  out.dim = bases.size();
  out.coords.resize(count * out.dim);
  for (std::uint64_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < out.dim; ++i) {
      out.coords[k * out.dim + i] = radical_inverse_f64(start + k, bases[i]);
    }
  }
  return out;
}

FloatPointSet hammersley_f64(std::span<const Base> bases, std::uint64_t count) {
  require_pairwise_coprime(bases);
  FloatPointSet out;
  out.dim = bases.size() + 1;
  out.coords.resize(count * out.dim);
  for (std::uint64_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < bases.size(); ++i) out.coords[k * out.dim + i] = radical_inverse_f64(k, bases[i]);
    out.coords[k * out.dim + bases.size()] = static_cast<double>(k) / static_cast<double>(count);
  }
  return out;
}

}  // namespace halton
