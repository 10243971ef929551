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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace halton {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt ipow(const BigInt& base, unsigned long exponent);
BigInt ipow(unsigned long base, unsigned long exponent);

/// Least nonnegative residue of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

/// Representative of a in the signed window [-floor((m-1)/2), floor(m/2)].
BigInt signed_residue(const BigInt& a, const BigInt& m);

BigInt floor(const Rational& q);

/// Number of bits of n > 0, i.e. floor(log2 n) + 1. Zero for n = 0.
unsigned long bit_length(const BigInt& n);

/// Always "num/den", also for integers ("3/1", "0/1").
std::string to_string(const Rational& q);

/// Accepts "a/b", "a" and surrounding blanks. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);
double to_double(const BigInt& n);

/// Lossless conversion; throws std::overflow_error if n does not fit.
std::int64_t to_int64(const BigInt& n);
std::uint64_t to_uint64(const BigInt& n);
BigInt from_uint64(std::uint64_t v);
BigInt from_int64(std::int64_t v);

}  // namespace halton
