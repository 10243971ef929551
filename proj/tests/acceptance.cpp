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

// Acceptance run: one PASS/FAIL line per criterion. Every tolerance and time
// limit is pinned below. `--only k` runs a single criterion.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "halton/discrepancy.hpp"
#include "halton/fourier.hpp"
#include "halton/padic.hpp"
#include "halton/radical.hpp"
#include "halton/residue.hpp"
#include "halton/rng.hpp"
#include "oracles.hpp"

using namespace halton;

namespace {

// Pinned thresholds.
constexpr double kLimitMembership = 1.0;     // seconds
constexpr double kLimitDecomposition = 30.0;
constexpr double kLimitFourier = 60.0;
constexpr double kLimitWarnock = 30.0;
constexpr double kLimitDigitSplit = 60.0;
constexpr double kLimitSecondMoment = 120.0;
constexpr double kLimitScaling = 600.0;
constexpr double kLimitPadic = 60.0;
constexpr double kLimitClt = 300.0;

constexpr long kTruncationGap = 2;           // |SD - D| <= 2
constexpr double kFourierTolerance = 1e-8;   // times P
constexpr double kSecondMomentConstant = 0.02;
constexpr double kSlopeTolerance = 0.02;     // times the mean ratio
constexpr double kSqrtLogFloor = 0.25;
constexpr double kSignificant = 1e-10;       // "10 significant digits"
constexpr double kOracleRelative = 1e-9;
constexpr double kKsBound = 0.1;

constexpr std::uint64_t kSeed = 20260415;

const BasisPair k23{Base(2), Base(3)};
const std::array<std::uint32_t, 2> kP{2, 3};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// x in (0, 1] with a random denominator; x = 1 now and then.
Rational random_unit(const CounterRng& rng, std::uint64_t counter) {
  if (rng.below(counter, 25) == 0) return 1;
  const std::uint64_t den = 2 + rng.below(counter + (1ULL << 40), 1'000'000);
  Rational q(from_uint64(1 + rng.below(counter + (2ULL << 40), den)), from_uint64(den));
  q.canonicalize();
  return q;
}

unsigned bit_width_of(std::uint64_t n) {
  unsigned w = 0;
  while (n > 0) {
    ++w;
    n >>= 1;
  }
  return w;
}

// ---------------------------------------------------------------------------

Outcome membership() {
  const TruncIndex s(2, 2);
  std::uint64_t cases = 0, violations = 0;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 9; ++b) {
      const RationalPoint y{Rational(static_cast<long>(a), 4), Rational(static_cast<long>(b), 9)};
      for (std::uint64_t k = 0; k < 180; ++k) {
        const bool in = oracle::cell_index(k, 2, 2) == a && oracle::cell_index(k, 3, 2) == b;
        ++cases;
        if (in != membership_test(from_uint64(k), y, s, k23)) ++violations;
      }
    }
  }
  return {cases == 36 * 180 && violations == 0,
          std::to_string(cases) + " cases, " + std::to_string(violations) + " violations"};
}

Outcome decomposition() {
  const CounterRng rng(kSeed, 2);
  std::uint64_t sum_fail = 0, gap_fail = 0, term_fail = 0, oracle_fail = 0;
  Rational max_gap = 0, max_term = 0;
  for (std::uint64_t c = 0; c < 200; ++c) {
    const std::array<Rational, 2> x{random_unit(rng, 8 * c), random_unit(rng, 8 * c + 1)};
    const std::uint64_t start = rng.below(8 * c + 2, 1'000'001);
    const std::uint64_t count = 1 + rng.below(8 * c + 3, 1024);
    const unsigned n = bit_width_of(count);

    const Lemma2Decomposition dec = lemma2_decomposition(RationalPoint{x[0], x[1]}, from_uint64(start), count, k23);
    if (dec.depth != n) ++oracle_fail;

    // Truncated and plain local discrepancy by counting.
    std::array<std::uint64_t, 2> cut{};
    for (std::size_t i = 0; i < 2; ++i) cut[i] = halton::floor(Rational(x[i] * Rational(ipow(kP[i], n)))).get_ui();
    long in_trunc = 0, in_plain = 0;
    for (std::uint64_t k = start; k < start + count; ++k) {
      in_trunc += (oracle::cell_index(k, 2, n) < cut[0] && oracle::cell_index(k, 3, n) < cut[1]) ? 1 : 0;
      in_plain += (oracle::reverse_digits(k, 2) < x[0] && oracle::reverse_digits(k, 3) < x[1]) ? 1 : 0;
    }
    const Rational nn(from_uint64(count));
    Rational sd = Rational(in_trunc) - nn * Rational(BigInt(cut[0] * cut[1]), BigInt(ipow(2, n) * ipow(3, n)));
    Rational d = Rational(in_plain) - nn * x[0] * x[1];
    sd.canonicalize();
    d.canonicalize();

    Rational total = 0;
    for (unsigned r1 = 1; r1 <= n; ++r1) {
      for (unsigned r2 = 1; r2 <= n; ++r2) {
        const Rational& t = dec.term(r1, r2);
        total += t;
        if (t != oracle::box_term(x, {r1, r2}, start, count, kP)) ++oracle_fail;
        if (abs(t) >= 6) ++term_fail;
        max_term = std::max(max_term, Rational(abs(t)));
      }
    }
    if (total != sd || dec.total != sd) ++sum_fail;
    const Rational gap = abs(Rational(sd - d));
    if (gap > kTruncationGap) ++gap_fail;
    max_gap = std::max(max_gap, gap);
  }
  const bool pass = sum_fail + gap_fail + term_fail + oracle_fail == 0;
  return {pass, "200 cases; sum mismatches " + std::to_string(sum_fail) + ", |SD-D|>2: " + std::to_string(gap_fail) +
                    ", |term|>=p1p2: " + std::to_string(term_fail) + ", oracle mismatches " +
                    std::to_string(oracle_fail) + "; max |SD-D| " + fmt(to_double(max_gap)) + ", max |term| " +
                    to_string(max_term)};
}

Outcome fourier_form() {
  std::vector<std::array<unsigned, 2>> depths;
  for (unsigned r1 = 1; r1 < 10; ++r1)
    for (unsigned r2 = 1; r2 < 10; ++r2)
      if (oracle::upow(2, r1) * oracle::upow(3, r2) <= 200) depths.push_back({r1, r2});
  const CounterRng rng(kSeed, 3);
  std::uint64_t cases = 0, violations = 0;
  double worst = 0;
  for (std::uint64_t c = 0; c < 20; ++c) {
    const std::array<Rational, 2> x{random_unit(rng, 8 * c), random_unit(rng, 8 * c + 1)};
    const std::uint64_t start = rng.below(8 * c + 2, 1'000'001);
    const std::uint64_t count = 1 + rng.below(8 * c + 3, 1024);
    for (const auto& r : depths) {
      const double modulus = static_cast<double>(oracle::upow(2, r[0]) * oracle::upow(3, r[1]));
      const Complex s = lemma3_sum(RationalPoint{x[0], x[1]}, TruncIndex(r[0], r[1]), from_uint64(start), count, k23);
      const double dev = std::abs(s - to_double(oracle::box_term(x, r, start, count, kP)));
      ++cases;
      if (!(dev <= kFourierTolerance * modulus)) ++violations;
      worst = std::max(worst, dev / modulus);
    }
  }
  return {violations == 0 && depths.size() == 13,
          std::to_string(depths.size()) + " depth pairs x 20 samples, " + std::to_string(violations) +
              " violations, max dev/P " + fmt(worst)};
}

Outcome warnock() {
  const CounterRng rng(kSeed, 4);
  std::uint64_t mismatches = 0;
  for (std::uint64_t c = 0; c < 50; ++c) {
    const std::size_t dim = 1 + c % 3;
    const std::uint64_t count = 1 + rng.below(64 * c, 8);
    const long den = static_cast<long>(2 + rng.below(64 * c + 1, 11));
    std::vector<std::vector<Rational>> raw;
    std::vector<RationalPoint> pts;
    for (std::uint64_t k = 0; k < count; ++k) {
      std::vector<Rational> x;
      for (std::size_t i = 0; i < dim; ++i) {
        Rational v(static_cast<long>(rng.below(64 * c + 2 + k * dim + i, den)), den);
        v.canonicalize();
        x.push_back(v);
      }
      raw.push_back(x);
      pts.emplace_back(x);
    }
    const PointSet set = PointSet::from_points(pts);
    if (l2_discrepancy_squared(set, Mode::exact).exact != oracle::piecewise_l2(raw)) ++mismatches;
  }
  const PointSet origin = PointSet::from_points({RationalPoint{Rational(0), Rational(0)}});
  const Rational single = l2_discrepancy_squared(origin, Mode::exact).exact;
  const bool closed = single == Rational(11, 18);
  return {mismatches == 0 && closed,
          "50 pooled sets, " + std::to_string(mismatches) + " mismatches; origin point " + to_string(single)};
}

long small_inverse(long a, long m) {
  if (m == 1) return 0;
  for (long v = 1; v < m; ++v)
    if ((a % m) * v % m == 1) return v;
  return -1;
}

bool in_window(std::int64_t v, std::int64_t modulus) { return v >= -((modulus - 1) / 2) && v <= modulus / 2; }

Outcome digit_split_sweep() {
  std::uint64_t combos = 0, checks = 0, hat_fail = 0, rebuild_fail = 0, window_fail = 0, div_fail = 0;
  for (unsigned a1 = 1; oracle::upow(2, a1) <= 729; ++a1)
    for (unsigned a2 = 1; oracle::upow(2, a2) <= 729; ++a2)
      for (unsigned b1 = 1; oracle::upow(3, b1) <= 729; ++b1)
        for (unsigned b2 = 1; oracle::upow(3, b2) <= 729; ++b2) {
          ++combos;
          // r_1 = (a1, b1), r_2 = (a2, b2).
          const DepthPairs pairs{TruncIndex(a1, b1), TruncIndex(a2, b2)};
          const PairInverses<std::int64_t> inv = small_pair_inverses(pairs, k23);
          const std::array<std::array<unsigned, 2>, 2> depth{{{a1, a2}, {b1, b2}}};
          for (std::size_t i = 0; i < 2; ++i) {
            const std::int64_t p = kP[i];
            const std::int64_t q = kP[1 - i];
            const unsigned hi = std::max(depth[i][0], depth[i][1]);
            const unsigned lo = std::min(depth[i][0], depth[i][1]);
            const std::int64_t top = static_cast<std::int64_t>(oracle::upow(p, hi));
            std::array<std::int64_t, 2> mod{}, shift{}, m_inv{};
            for (std::size_t j = 0; j < 2; ++j) {
              mod[j] = static_cast<std::int64_t>(oracle::upow(p, depth[i][j]));
              shift[j] = static_cast<std::int64_t>(oracle::upow(p, hi - depth[i][j]));
              m_inv[j] = small_inverse(static_cast<long>(oracle::upow(q, depth[1 - i][j]) % mod[j]), mod[j]);
            }
            const std::size_t shallow = depth[i][0] <= depth[i][1] ? 0 : 1;
            const std::array<std::int64_t, 2> window{
                shallow == 0 ? static_cast<std::int64_t>(oracle::upow(p, lo))
                             : static_cast<std::int64_t>(oracle::upow(p, hi - lo)),
                shallow == 0 ? static_cast<std::int64_t>(oracle::upow(p, hi - lo))
                             : static_cast<std::int64_t>(oracle::upow(p, lo))};
            for (std::int64_t m1 = 1; m1 <= mod[0]; ++m1) {
              for (std::int64_t m2 = 1; m2 <= mod[1]; ++m2) {
                ++checks;
                const SmallDigitSplit sp = small_digit_split(m1, m2, pairs, k23, inv);
                const std::int64_t hat =
                    ((-(m1 * m_inv[0] % top) * shift[0] - (m2 * m_inv[1] % top) * shift[1]) % top + top) % top;
                if (sp.hat_m[i] != hat) ++hat_fail;
                const std::int64_t rebuilt = sp.mm[i][0] * shift[0] + sp.mm[i][1] * shift[1];
                if (((rebuilt - hat) % top + top) % top != 0) ++rebuild_fail;
                if (!in_window(sp.mm[i][0], window[0]) || !in_window(sp.mm[i][1], window[1])) ++window_fail;
                const std::int64_t tilde = (sp.mm[i][0] + m1 * m_inv[0]) * shift[0] + (sp.mm[i][1] + m2 * m_inv[1]) * shift[1];
                if (tilde % top != 0) ++div_fail;
              }
            }
          }
        }
  const bool pass = combos == 81 * 36 && hat_fail + rebuild_fail + window_fail + div_fail == 0;
  return {pass, std::to_string(combos) + " depth combinations, " + std::to_string(checks) + " sweeps; hat " +
                    std::to_string(hat_fail) + ", reconstruction " + std::to_string(rebuild_fail) + ", window " +
                    std::to_string(window_fail) + ", divisibility " + std::to_string(div_fail) + " failures"};
}

Outcome second_moment() {
  constexpr unsigned n = 2;
  const Thresholds t{BigInt(0), BigInt(0)};
  std::uint64_t instances = 0, four_fail = 0, five_fail = 0, oracle_fail = 0;
  double worst = 0;
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) {
      const PartitionLabel label{l1, l2};
      const Lemma5Sums sums = lemma5_sums(label, k23, n, t, default_m_cap(n));
      const auto cell = partition_cell(label, n, t);
      for (std::uint64_t count : {1u, 2u, 3u}) {
        ++instances;
        const Lemma4Sides sides = lemma4_sides(label, count, 0, k23, n, t);
        Rational acc = 0;
        for (long a = 0; a < 4; ++a) {
          for (long b = 0; b < 9; ++b) {
            const std::array<Rational, 2> x{Rational(a, 4), Rational(b, 9)};
            for (const DepthPairs& pr : cell) {
              acc += oracle::box_term(x, {pr.first.r1(), pr.first.r2()}, 0, count, kP) *
                     oracle::box_term(x, {pr.second.r1(), pr.second.r2()}, 0, count, kP);
            }
          }
        }
        acc /= 36;
        if (abs(acc) != sides.lhs_exact) ++oracle_fail;
        if (!(sides.lhs <= kSecondMomentConstant * sides.rhs)) ++four_fail;
        if (!(sums.star <= sums.sharp)) ++five_fail;
        if (sides.rhs > 0) worst = std::max(worst, sides.lhs / sides.rhs);
      }
    }
  }
  return {four_fail + five_fail + oracle_fail == 0,
          std::to_string(instances) + " instances, C* = " + fmt(kSecondMomentConstant) + ", max lhs/rhs " + fmt(worst) +
              "; bound failures " + std::to_string(four_fail) + ", star>sharp " + std::to_string(five_fail) +
              ", lhs oracle mismatches " + std::to_string(oracle_fail)};
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Outcome scaling() {
  cli::ScalingConfig config;
  config.counts = cli::dyadic_grid(4, 16);
  config.mode = Mode::fast;
  const cli::ScalingReport rep = cli::run_scaling(config);

  std::uint64_t baseline_fail = 0, exact_fail = 0, oracle_fail = 0;
  const auto base = read_csv(std::string(HALTON_TEST_DATA_DIR) + "/scaling_baseline.csv");
  if (base.size() != rep.rows.size()) ++baseline_fail;
  for (std::size_t k = 0; k < std::min(base.size(), rep.rows.size()); ++k) {
    const cli::ScalingRow& r = rep.rows[k];
    if (std::stoull(base[k][0]) != r.count || std::stoull(base[k][1]) != r.start ||
        !close_rel(std::stod(base[k][3]), r.d2, kSignificant))
      ++baseline_fail;
  }

  // Exact rows where both modes run, and an unblocked double oracle.
  cli::ScalingConfig small = config;
  small.counts = cli::dyadic_grid(4, 10);
  small.mode = Mode::exact;
  const cli::ScalingReport ex = cli::run_scaling(small);
  for (const cli::ScalingRow& e : ex.rows) {
    for (const cli::ScalingRow& r : rep.rows)
      if (r.count == e.count && r.start == e.start && !close_rel(r.d2, e.d2, kSignificant)) ++exact_fail;
  }
  for (const cli::ScalingRow& r : rep.rows) {
    if (r.count > 4096) continue;
    std::vector<double> coords;
    for (std::uint64_t k = r.start; k < r.start + r.count; ++k) {
      coords.push_back(oracle::reverse_digits_f64(k, 2));
      coords.push_back(oracle::reverse_digits_f64(k, 3));
    }
    if (!close_rel(r.d2, std::sqrt(oracle::warnock_f64(coords, 2)), kOracleRelative)) ++oracle_fail;
  }

  bool pass = baseline_fail + exact_fail + oracle_fail == 0;
  std::string detail;
  double floor_seen = INFINITY;
  for (const cli::ScalingFit& f : rep.fits) {
    const bool flat = std::abs(f.slope) <= kSlopeTolerance * f.mean_ratio;
    pass = pass && flat && f.min_sqrt_ratio >= kSqrtLogFloor;
    floor_seen = std::min(floor_seen, f.min_sqrt_ratio);
    detail += "Q=" + std::to_string(f.start) + ": slope " + fmt(f.slope) + " vs limit " +
              fmt(kSlopeTolerance * f.mean_ratio) + (flat ? " ok" : " exceeded") + "; ";
  }
  detail += "min D2/sqrt(ln N) " + fmt(floor_seen) + " (floor " + fmt(kSqrtLogFloor) + "); baseline mismatches " +
            std::to_string(baseline_fail) + ", float/exact mismatches " + std::to_string(exact_fail) +
            ", oracle mismatches " + std::to_string(oracle_fail);
  return {pass, detail};
}

Outcome padic() {
  std::uint64_t total = 0, ord_fail = 0, count_fail = 0, lte_fail = 0, lte_checked = 0;
  std::string detail;
  for (auto [p, q] : {std::pair<std::uint32_t, std::uint32_t>{2, 3}, {3, 2}}) {
    const ScanReport s = corollary_scan(p, q, 50, 300, true);
    std::vector<BigInt> pw(301);
    pw[0] = 1;
    for (std::size_t b = 1; b < pw.size(); ++b) pw[b] = pw[b - 1] * q;

    std::uint64_t instances = 0, degenerate = 0;
    for (std::int64_t l1 = -50; l1 <= 50; ++l1) {
      for (std::int64_t l2 = -50; l2 <= 50; ++l2) {
        if (l1 == 0 || l2 == 0) continue;
        if (oracle::naive_ord(from_int64(l1), p) != oracle::naive_ord(from_int64(l2), p)) continue;
        for (std::uint32_t b = 0; b <= 300; ++b) (from_int64(l1) * pw[b] == from_int64(l2) ? degenerate : instances)++;
      }
    }
    if (instances != s.instances || degenerate != s.degenerate || s.rows.size() != s.instances) ++count_fail;

    double max_ratio = 0;
    for (const ScanRow& r : s.rows) {
      const BigInt v = from_int64(r.l1) * pw[r.b] - from_int64(r.l2);
      const long o = oracle::naive_ord(v, p) - oracle::naive_ord(from_int64(r.l2), p);
      const double lbar = std::log2(static_cast<double>(std::max<std::int64_t>({std::abs(r.l1), std::abs(r.l2), 3})));
      const double bbar = std::log2(static_cast<double>(std::max<std::uint32_t>(r.b, 3)));
      const double ratio = o / (lbar * bbar);
      if (o != r.ord || o < 0 || !std::isfinite(r.ratio) || !close_rel(ratio, r.ratio, 1e-12)) ++ord_fail;
      max_ratio = std::max(max_ratio, ratio);
      if (r.l1 == r.l2 && r.b >= 1) {
        ++lte_checked;
        if (lte_ord(p, q, r.b) != o) ++lte_fail;
      }
    }
    if (!std::isfinite(s.max_ratio) || !close_rel(max_ratio, s.max_ratio, 1e-12)) ++ord_fail;
    lte_fail += s.lte_mismatches;
    total += s.instances;
    detail += "(" + std::to_string(p) + "," + std::to_string(q) + "): max ratio " + fmt(s.max_ratio) + " at (" +
              std::to_string(s.argmax.l1) + "," + std::to_string(s.argmax.l2) + "," + std::to_string(s.argmax.b) +
              "); ";
  }
  const bool pass = ord_fail + count_fail + lte_fail == 0 && lte_checked > 0;
  return {pass, detail + std::to_string(total) + " instances, ord mismatches " + std::to_string(ord_fail) +
                    ", count mismatches " + std::to_string(count_fail) + ", LTE " + std::to_string(lte_checked) +
                    " checked / " + std::to_string(lte_fail) + " mismatched"};
}

Outcome clt() {
  cli::CltConfig config;
  config.s = 3;
  config.count = 4096;
  config.samples = 10'000;
  config.seed = kSeed;
  const cli::CltReport rep = cli::run_clt(config);

  std::vector<double> coords;
  for (std::uint64_t k = 0; k < config.count; ++k) {
    for (std::uint32_t p : {2u, 3u, 5u}) coords.push_back(oracle::reverse_digits_f64(k, p));
    coords.push_back(static_cast<double>(k) / static_cast<double>(config.count));
  }
  const double d2 = std::sqrt(oracle::warnock_f64(coords, 4));
  const bool d2_ok = close_rel(d2, rep.d2, kOracleRelative);
  return {rep.ks_defined && rep.ks <= kKsBound && d2_ok,
          "KS " + fmt(rep.ks) + " (bound " + fmt(kKsBound) + "), mean " + fmt(rep.mean) + ", variance " +
              fmt(rep.variance) + ", D2 " + fmt(rep.d2) + (d2_ok ? " matches" : " differs from") + " oracle " +
              fmt(d2)};
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "crt-membership", kLimitMembership, membership},
      {2, "truncated-decomposition", kLimitDecomposition, decomposition},
      {3, "fourier-form", kLimitFourier, fourier_form},
      {4, "warnock", kLimitWarnock, warnock},
      {5, "digit-split", kLimitDigitSplit, digit_split_sweep},
      {6, "second-moment-bounds", kLimitSecondMoment, second_moment},
      {7, "scaling", kLimitScaling, scaling},
      {8, "padic-scan", kLimitPadic, padic},
      {9, "clt", kLimitClt, clt},
  };

  int failed = 0;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs < c.limit;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.2f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.limit, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
