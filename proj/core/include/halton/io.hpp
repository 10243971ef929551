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

#include <filesystem>
#include <istream>
#include <ostream>

#include "halton/radical.hpp"

namespace halton {

/// Exact CSV: a "# kind=... bases=... start=... count=..." line, a header
/// x1,...,xs, then one row of num/den cells per point.
void write_points_csv(std::ostream& os, const PointSet& set);
PointSet read_points_csv(std::istream& is);

/// Binary float64: "HALTONF8", u32 dim, u64 count, row-major little-endian doubles.
void write_points_binary(std::ostream& os, const FloatPointSet& set);
FloatPointSet read_points_binary(std::istream& is);

/// File variants; failures throw std::runtime_error naming the path.
void save_points_csv(const std::filesystem::path& path, const PointSet& set);
PointSet load_points_csv(const std::filesystem::path& path);

}  // namespace halton
