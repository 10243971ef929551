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

#include "halton/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace halton {

namespace {

constexpr char kMagic[8] = {'H', 'A', 'L', 'T', 'O', 'N', 'F', '8'};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string meta_value(const std::string& meta, const std::string& key) {
  const std::string needle = key + "=";
  for (const std::string& tok : split(meta.substr(1), ' ')) {
    if (tok.rfind(needle, 0) == 0) return tok.substr(needle.size());
  }
  throw std::invalid_argument("point CSV: metadata lacks " + key);
}

}  // namespace

void write_points_csv(std::ostream& os, const PointSet& set) {
  os << "# kind=" << to_string(set.kind()) << " bases=";
  for (std::size_t i = 0; i < set.bases().size(); ++i) os << (i ? "," : "") << set.bases()[i].value();
  os << " start=" << set.start() << " count=" << set.count() << '\n';
  for (std::size_t i = 0; i < set.dim(); ++i) os << (i ? "," : "") << 'x' << i + 1;
  os << '\n';
  for (const RationalPoint& x : set.points()) {
    for (std::size_t i = 0; i < x.dim(); ++i) os << (i ? "," : "") << to_string(x[i]);
    os << '\n';
  }
}

PointSet read_points_csv(std::istream& is) {
  std::string meta;
  std::string header;
  if (!std::getline(is, meta) || meta.empty() || meta[0] != '#') {
    throw std::invalid_argument("point CSV: missing metadata line");
  }
  if (!std::getline(is, header)) throw std::invalid_argument("point CSV: missing header");
  const std::size_t dim = split(header, ',').size();

  const PointSetKind kind = parse_point_set_kind(meta_value(meta, "kind"));
  std::vector<Base> bases;
  const std::string base_text = meta_value(meta, "bases");
  if (!base_text.empty()) {
    for (const std::string& b : split(base_text, ',')) bases.emplace_back(static_cast<std::uint32_t>(std::stoul(b)));
  }
  const BigInt start(meta_value(meta, "start"));
  const std::size_t count = std::stoull(meta_value(meta, "count"));

  std::vector<RationalPoint> points;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<Rational> coords;
    for (const std::string& cell : split(line, ',')) coords.push_back(parse_rational(cell));
    if (coords.size() != dim) {
      throw std::invalid_argument("point CSV: row " + std::to_string(points.size() + 1) + " has " +
                                  std::to_string(coords.size()) + " cells, header has " + std::to_string(dim));
    }
    points.emplace_back(std::move(coords));
  }
  if (points.size() != count) throw std::invalid_argument("point CSV: count does not match the row count");
  if (kind == PointSetKind::explicit_points) return PointSet::from_points(std::move(points));
  return PointSet(kind, std::move(bases), start, std::move(points));
}

void write_points_binary(std::ostream& os, const FloatPointSet& set) {
  static_assert(std::endian::native == std::endian::little, "binary point format assumes little-endian");
  const auto dim = static_cast<std::uint32_t>(set.dim);
  const auto count = static_cast<std::uint64_t>(set.count());
  os.write(kMagic, sizeof kMagic);
  os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  os.write(reinterpret_cast<const char*>(&count), sizeof count);
  os.write(reinterpret_cast<const char*>(set.coords.data()),
           static_cast<std::streamsize>(set.coords.size() * sizeof(double)));
}

FloatPointSet read_points_binary(std::istream& is) {
  char magic[8];
  std::uint32_t dim = 0;
  std::uint64_t count = 0;
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::invalid_argument("binary points: bad magic");
  is.read(reinterpret_cast<char*>(&dim), sizeof dim);
  is.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!is) throw std::invalid_argument("binary points: truncated header");
  FloatPointSet out;
  out.dim = dim;
  out.coords.resize(static_cast<std::size_t>(dim * count));
  is.read(reinterpret_cast<char*>(out.coords.data()), static_cast<std::streamsize>(out.coords.size() * sizeof(double)));
  if (!is) throw std::invalid_argument("binary points: truncated body");
  return out;
}

void save_points_csv(const std::filesystem::path& path, const PointSet& set) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_points_csv(os, set);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

PointSet load_points_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_points_csv(is);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace halton
