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

#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <stdexcept>

#include "halton/reduce.hpp"
#include "halton/rng.hpp"

namespace halton::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scaling study.

std::vector<std::uint64_t> dyadic_grid(unsigned lo, unsigned hi) {
  if (lo > hi || hi > 40) throw std::invalid_argument("dyadic grid: need lo <= hi <= 40");
  std::vector<std::uint64_t> out;
  for (unsigned j = lo; j <= hi; ++j) out.push_back(std::uint64_t{1} << j);
  return out;
}

double least_squares_slope(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double mean_x = static_cast<double>(n - 1) / 2.0;
  double mean_y = 0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(n);
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (y[i] - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ScalingReport run_scaling(const ScalingConfig& config) {
  if (config.counts.empty()) throw std::invalid_argument("scaling: empty N grid");
  if (!std::is_sorted(config.counts.begin(), config.counts.end())) {
    throw std::invalid_argument("scaling: N grid must be ascending");
  }
  require_pairwise_coprime(config.bases);
  ScalingReport report;
  const auto begin = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count(); };

  for (std::uint64_t start : config.starts) {
    for (std::uint64_t count : config.counts) {
      if (config.budget_seconds > 0 && elapsed() > config.budget_seconds) {
        report.budget_exceeded = true;
        break;
      }
      ScalingRow row;
      row.count = count;
      row.start = start;
      row.mode = config.mode.value_or(default_mode(count));
      const auto t0 = std::chrono::steady_clock::now();
      double squared = 0;
      if (row.mode == Mode::exact) {
        squared = to_double(l2_discrepancy_squared_exact(
            point_set(PointSetKind::halton, config.bases, from_uint64(start), count)));
      } else {
        squared = l2_discrepancy_squared_f64(halton_f64(config.bases, start, count), config.threads);
      }
      const auto t1 = std::chrono::steady_clock::now();
      row.d2 = std::sqrt(std::max(0.0, squared));
      const double ln = std::log(static_cast<double>(count));
      row.d2_over_log = ln > 0 ? row.d2 / ln : 0.0;
      row.d2_over_sqrt_log = ln > 0 ? row.d2 / std::sqrt(ln) : 0.0;
      row.wall_ms = config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
      report.rows.push_back(row);
    }
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const ScalingRow& a, const ScalingRow& b) {
    return a.start != b.start ? a.start < b.start : a.count < b.count;
  });

  for (std::uint64_t start : config.starts) {
    std::vector<double> ratios;
    double min_sqrt = 0;
    for (const ScalingRow& r : report.rows) {
      if (r.start != start || r.count < 2) continue;
      ratios.push_back(r.d2_over_log);
      min_sqrt = ratios.size() == 1 ? r.d2_over_sqrt_log : std::min(min_sqrt, r.d2_over_sqrt_log);
    }
    if (ratios.empty()) continue;
    ScalingFit fit;
    fit.start = start;
    fit.slope = least_squares_slope(ratios);
    double mean = 0;
    for (double v : ratios) mean += v;
    fit.mean_ratio = mean / static_cast<double>(ratios.size());
    fit.min_sqrt_ratio = min_sqrt;
    report.fits.push_back(fit);
  }
  return report;
}

void write_scaling_csv(std::ostream& os, const ScalingReport& report) {
  os << "N,Q,mode,D2,D2_over_logN,D2_over_sqrtlogN,wall_time_ms\n" << std::setprecision(17);
  for (const ScalingRow& r : report.rows) {
    os << r.count << ',' << r.start << ',' << to_string(r.mode) << ',' << r.d2 << ',' << r.d2_over_log << ','
       << r.d2_over_sqrt_log << ',' << r.wall_ms << '\n';
  }
}

json to_json(const ScalingReport& report) {
  json rows = json::array();
  for (const ScalingRow& r : report.rows) {
    rows.push_back({{"N", r.count},
                    {"Q", r.start},
                    {"mode", to_string(r.mode)},
                    {"D2", r.d2},
                    {"D2_over_logN", r.d2_over_log},
                    {"D2_over_sqrtlogN", r.d2_over_sqrt_log},
                    {"wall_time_ms", r.wall_ms}});
  }
  json fits = json::array();
  for (const ScalingFit& f : report.fits) {
    fits.push_back({{"Q", f.start},
                    {"slope", f.slope},
                    {"mean_ratio", f.mean_ratio},
                    {"relative_slope", f.mean_ratio > 0 ? f.slope / f.mean_ratio : 0.0},
                    {"min_D2_over_sqrtlogN", f.min_sqrt_ratio}});
  }
  return {{"schema_version", kSchemaVersion},
          {"log_base", "e"},
          {"rows", rows},
          {"fits", fits},
          {"budget_exceeded", report.budget_exceeded}};
}

// ---------------------------------------------------------------------------
// CLT.

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double ks_normal(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ks_normal: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = normal_cdf(values[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

CltReport run_clt(const CltConfig& config) {
  if (config.s < 1) throw std::invalid_argument("clt: s must be >= 1");
  if (config.count < 1) throw std::invalid_argument("clt: N must be >= 1");
  if (config.bins < 1) throw std::invalid_argument("clt: bins must be >= 1");
  CltReport out;
  out.s = config.s;
  out.count = config.count;
  out.samples = config.samples;
  out.outside_claim = config.s < 3;
  out.d2_method = config.d2_method.value_or(config.count <= kExactModeLimit ? D2Method::warnock
                                                                             : D2Method::monte_carlo);

  const std::vector<Base> bases = first_prime_bases(config.s);
  const FloatPointSet pts = hammersley_f64(bases, config.count);
  const std::size_t dim = pts.dim;

  // Corners in (0,1]^{s+1}, one counter per coordinate.
  const CounterRng rng(config.seed, 0);
  std::vector<double> local(config.samples);
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (config.samples + kBlock - 1) / kBlock;
  run_blocks(
      blocks,
      [&](std::size_t b) {
        std::vector<double> x(dim);
        const std::size_t hi = std::min<std::size_t>(config.samples, (b + 1) * kBlock);
        for (std::size_t k = b * kBlock; k < hi; ++k) {
          for (std::size_t i = 0; i < dim; ++i) x[i] = 1.0 - rng.uniform(k * dim + i);
          local[k] = local_discrepancy_f64(x, pts);
        }
        return 0.0;
      },
      config.threads);

  if (out.d2_method == D2Method::warnock) {
    const double sq = config.count <= kExactModeLimit
                          ? to_double(l2_discrepancy_squared_exact(point_set(PointSetKind::hammersley, bases, 0, config.count)))
                          : l2_discrepancy_squared_f64(pts, config.threads);
    out.d2 = std::sqrt(sq);
  } else {
    if (config.samples == 0) throw std::invalid_argument("clt: Monte Carlo D2 needs samples");
    std::vector<double> squares(local.size());
    for (std::size_t k = 0; k < local.size(); ++k) squares[k] = local[k] * local[k];
    out.d2 = std::sqrt(pairwise_sum(squares) / static_cast<double>(local.size()));
  }

  const double lo = -4.0;
  const double hi = 4.0;
  for (unsigned b = 0; b <= config.bins; ++b) out.bin_edges.push_back(lo + (hi - lo) * b / config.bins);
  out.histogram.assign(config.bins + 2, 0);  // [underflow, bins..., overflow]
  for (double z = lo; z <= hi + 1e-12; z += 0.25) out.ecdf.emplace_back(z, 0.0);
  if (config.samples == 0 || out.d2 == 0) return out;

  std::vector<double> z(local.size());
  for (std::size_t k = 0; k < local.size(); ++k) z[k] = local[k] / out.d2;
  for (double v : z) {
    if (v < lo) {
      ++out.histogram.front();
    } else if (v >= hi) {
      ++out.histogram.back();
    } else {
      const auto slot = static_cast<std::size_t>((v - lo) / (hi - lo) * config.bins);
      ++out.histogram[1 + std::min<std::size_t>(slot, config.bins - 1)];
    }
  }
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  for (auto& [at, frac] : out.ecdf) {
    frac = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), at) - sorted.begin()) / n;
  }
  out.ks_defined = true;
  out.ks = ks_normal(z);
  std::vector<double> abs1(z.size());
  std::vector<double> pow4(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    abs1[k] = std::abs(z[k]);
    pow4[k] = z[k] * z[k] * z[k] * z[k];
  }
  out.mean = pairwise_sum(z) / n;
  std::vector<double> dev(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) dev[k] = (z[k] - out.mean) * (z[k] - out.mean);
  out.variance = pairwise_sum(dev) / n;
  out.moment_ratio_q1 = pairwise_sum(abs1) / n;
  out.moment_ratio_q4 = std::pow(pairwise_sum(pow4) / n, 0.25);
  return out;
}

json to_json(const CltReport& r) {
  json ecdf = json::array();
  for (const auto& [z, f] : r.ecdf) ecdf.push_back({{"z", z}, {"ecdf", f}, {"normal_cdf", normal_cdf(z)}});
  json out = {{"schema_version", kSchemaVersion},
              {"s", r.s},
              {"point_set", "hammersley"},
              {"dimension", r.s + 1},
              {"N", r.count},
              {"samples", r.samples},
              {"outside_claim", r.outside_claim},
              {"d2_method", r.d2_method == D2Method::warnock ? "warnock" : "monte-carlo"},
              {"D2", r.d2},
              {"ks_defined", r.ks_defined},
              {"bin_edges", r.bin_edges},
              {"histogram", {{"underflow", r.histogram.empty() ? 0 : r.histogram.front()},
                             {"counts", r.histogram.size() < 2
                                            ? std::vector<std::uint64_t>{}
                                            : std::vector<std::uint64_t>(r.histogram.begin() + 1, r.histogram.end() - 1)},
                             {"overflow", r.histogram.empty() ? 0 : r.histogram.back()}}},
              {"ecdf", ecdf}};
  if (r.ks_defined) {
    out["ks_distance"] = r.ks;
    out["mean"] = r.mean;
    out["variance"] = r.variance;
    out["moments"] = {{"q1_ratio", r.moment_ratio_q1},
                      {"q1_normal", std::sqrt(2.0 / std::numbers::pi)},
                      {"q4_ratio", r.moment_ratio_q4},
                      {"q4_normal", std::pow(3.0, 0.25)}};
  } else {
    out["ks_distance"] = nullptr;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification suites.

namespace {

// Halton point k, with the first point of a run moved by 1/2 in its first
// coordinate when a fault is injected.
RationalPoint suite_point(const BigInt& k, const BasisPair& bases, bool corrupt) {
  RationalPoint x = halton_point(k, bases.as_vector());
  if (!corrupt) return x;
  Rational shifted = x[0] + Rational(1, 2);
  if (shifted >= 1) shifted -= 1;
  return RationalPoint{shifted, x[1]};
}

bool below(const RationalPoint& p, const RationalPoint& x) { return p[0] < x[0] && p[1] < x[1]; }

Rational random_corner(const CounterRng& rng, std::uint64_t counter) {
  // (u + 1) / 2^53 in (0, 1].
  Rational q(from_uint64((rng.bits(counter) >> 11) + 1), ipow(2, 53));
  q.canonicalize();
  return q;
}

std::string str(const Rational& q) { return to_string(q); }

void require_no_fault(const VerifyConfig& config, const char* suite) {
  if (config.inject_fault) {
    throw std::invalid_argument(std::string("fault injection applies to the lemma1 and lemma2 suites, not ") + suite);
  }
}

Thresholds suite_thresholds(const VerifyConfig& config, unsigned n) {
  Thresholds t = default_thresholds(config.bases, n);
  if (config.v_override) t.v = *config.v_override;
  if (config.vv_override) t.vv = *config.vv_override;
  return t;
}

}  // namespace

VerifyReport verify_lemma1(const VerifyConfig& config) {
  VerifyReport rep;
  rep.suite = "lemma1";
  const TruncIndex s(2, 2);
  const ResidueData rd = crt_inverses(config.bases, s);
  const std::uint64_t span = 5 * to_uint64(rd.modulus);
  std::vector<RationalPoint> pts;
  for (std::uint64_t k = 0; k < span; ++k) pts.push_back(suite_point(from_uint64(k), config.bases, config.inject_fault && k == 1));
  const std::uint64_t q1 = to_uint64(rd.prime_power[0]);
  const std::uint64_t q2 = to_uint64(rd.prime_power[1]);
  std::uint64_t cells = 0;
  for (std::uint64_t a = 0; a < q1; ++a) {
    for (std::uint64_t b = 0; b < q2; ++b) {
      ++cells;
      const RationalPoint y{Rational(from_uint64(a), rd.prime_power[0]), Rational(from_uint64(b), rd.prime_power[1])};
      const RationalPoint y_hi{y[0] + Rational(1, static_cast<long>(q1)), y[1] + Rational(1, static_cast<long>(q2))};
      for (std::uint64_t k = 0; k < span; ++k) {
        ++rep.cases;
        const RationalPoint& p = pts[k];
        const bool in_box = p[0] >= y[0] && p[0] < y_hi[0] && p[1] >= y[1] && p[1] < y_hi[1];
        if (in_box != membership_test(from_uint64(k), y, s, config.bases)) ++rep.violations;
      }
    }
  }
  rep.details = {{"cells", cells}, {"k_range", span}, {"depth", {2, 2}}, {"modulus", rd.modulus.get_str()}};
  return rep;
}

VerifyReport verify_lemma2(const VerifyConfig& config) {
  VerifyReport rep;
  rep.suite = "lemma2";
  const std::uint64_t cases = config.cases ? config.cases : 200;
  const CounterRng rng(config.seed, 2);
  const long bound = static_cast<long>(config.bases.p(0)) * config.bases.p(1);
  std::uint64_t identity_failures = 0;
  std::uint64_t approx_failures = 0;
  std::uint64_t term_failures = 0;
  Rational max_gap = 0;
  Rational max_term = 0;
  for (std::uint64_t c = 0; c < cases; ++c) {
    const RationalPoint x{random_corner(rng, 5 * c), random_corner(rng, 5 * c + 1)};
    const BigInt start = from_uint64(rng.below(5 * c + 2, 1'000'001));
    const std::uint64_t count = 1 + rng.below(5 * c + 3, 1024);
    const Lemma2Decomposition dec = lemma2_decomposition(x, start, count, config.bases);
    const RationalPoint xt = truncate(x, TruncIndex(dec.depth, dec.depth), config.bases);
    long in_x = 0;
    long in_xt = 0;
    BigInt k = start;
    for (std::uint64_t j = 0; j < count; ++j, ++k) {
      const RationalPoint p = suite_point(k, config.bases, config.inject_fault && j == 0);
      in_x += below(p, x) ? 1 : 0;
      in_xt += below(p, xt) ? 1 : 0;
    }
    const Rational n(from_uint64(count));
    const Rational sd = Rational(in_xt) - n * xt[0] * xt[1];
    const Rational d = Rational(in_x) - n * x[0] * x[1];
    const Rational gap = abs(Rational(sd - d));
    ++rep.cases;
    bool bad = false;
    if (dec.total != sd) {
      ++identity_failures;
      bad = true;
    }
    if (gap > 2) {
      ++approx_failures;
      bad = true;
    }
    if (dec.max_abs >= bound) {
      ++term_failures;
      bad = true;
    }
    rep.violations += bad ? 1 : 0;
    max_gap = std::max(max_gap, gap);
    max_term = std::max(max_term, dec.max_abs);
  }
  rep.details = {{"seed", config.seed},
                 {"identity_failures", identity_failures},
                 {"approximation_failures", approx_failures},
                 {"term_bound_failures", term_failures},
                 {"max_abs_SD_minus_D", str(max_gap)},
                 {"max_abs_term", str(max_term)},
                 {"term_bound", bound}};
  return rep;
}

VerifyReport verify_lemma3(const VerifyConfig& config) {
  require_no_fault(config, "lemma3");
  VerifyReport rep;
  rep.suite = "lemma3";
  const std::uint64_t cases = config.cases ? config.cases : 20;
  const CounterRng rng(config.seed, 3);
  std::vector<TruncIndex> depths;
  for (unsigned r1 = 1; ipow(config.bases.p(0), r1) * config.bases.p(1) <= 200; ++r1) {
    for (unsigned r2 = 1; ipow(config.bases.p(0), r1) * ipow(config.bases.p(1), r2) <= 200; ++r2) depths.emplace_back(r1, r2);
  }
  double max_scaled = 0;
  double max_abs = 0;
  double max_imag = 0;
  for (std::uint64_t c = 0; c < cases; ++c) {
    const RationalPoint x{random_corner(rng, 4 * c), random_corner(rng, 4 * c + 1)};
    const BigInt start = from_uint64(rng.below(4 * c + 2, 1'000'001));
    const std::uint64_t count = 1 + rng.below(4 * c + 3, 1024);
    for (TruncIndex r : depths) {
      const double modulus = to_double(BigInt(ipow(config.bases.p(0), r.r1()) * ipow(config.bases.p(1), r.r2())));
      const Complex s = lemma3_sum(x, r, start, count, config.bases);
      const double exact = to_double(lemma2_term(x, r, start, count, config.bases));
      const double dev = std::abs(s - exact);
      ++rep.cases;
      if (!(dev <= 1e-8 * modulus)) ++rep.violations;
      max_abs = std::max(max_abs, dev);
      max_scaled = std::max(max_scaled, dev / modulus);
      max_imag = std::max(max_imag, std::abs(s.imag()));
    }
  }
  rep.details = {{"seed", config.seed},
                 {"depth_pairs", depths.size()},
                 {"samples", cases},
                 {"tolerance", "1e-8 * P"},
                 {"max_abs_deviation", max_abs},
                 {"max_deviation_over_P", max_scaled},
                 {"max_abs_imag", max_imag}};
  return rep;
}

VerifyReport verify_lemma45(const VerifyConfig& config) {
  require_no_fault(config, "lemma45");
  VerifyReport rep;
  rep.suite = "lemma45";
  constexpr unsigned n = 2;
  const Thresholds t = suite_thresholds(config, n);
  const double c_star = config.lemma4_constant.value_or(kLemma4Constant);
  const std::int64_t cap = default_m_cap(n);
  json instances = json::array();
  double max_ratio = 0;
  for (int l1 = 0; l1 < 2; ++l1) {
    for (int l2 = 0; l2 < 2; ++l2) {
      const PartitionLabel label{l1, l2};
      const Lemma5Sums sums = lemma5_sums(label, config.bases, n, t, cap);
      const bool five_ok = sums.star <= sums.sharp;
      for (std::uint64_t count : {1u, 2u, 3u}) {
        const Lemma4Sides sides = lemma4_sides(label, count, 0, config.bases, n, t);
        const bool four_ok = sides.lhs <= c_star * sides.rhs;
        if (sides.rhs > 0) max_ratio = std::max(max_ratio, sides.lhs / sides.rhs);
        ++rep.cases;
        if (!four_ok || !five_ok) ++rep.violations;
        instances.push_back({{"lambda", {l1, l2}},
                             {"N", count},
                             {"pairs", sides.pairs},
                             {"lhs", str(sides.lhs_exact)},
                             {"lhs_f64", sides.lhs},
                             {"rhs", sides.rhs},
                             {"lemma4_ok", four_ok},
                             {"D_star", sums.star},
                             {"D_sharp", sums.sharp},
                             {"lemma5_ok", five_ok}});
      }
    }
  }
  rep.details = {{"n", n},
                 {"V", t.v.get_str()},
                 {"VV", t.vv.get_str()},
                 {"m_cap", cap},
                 {"C_star", c_star},
                 {"max_lhs_over_rhs", max_ratio},
                 {"instances", instances}};
  return rep;
}

VerifyReport verify_padic(const VerifyConfig& config) {
  require_no_fault(config, "padic");
  if (!config.bases.primes()) throw std::invalid_argument("padic suite needs prime bases");
  VerifyReport rep;
  rep.suite = "padic";
  json scans = json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const std::uint32_t p = config.bases.p(i);
    const std::uint32_t q = config.bases.p(1 - i);
    const ScanReport s = corollary_scan(p, q, 50, 300, false, config.threads);
    rep.cases += s.instances;
    const bool finite = std::isfinite(s.max_ratio);
    rep.violations += s.lte_mismatches + (finite ? 0 : 1);
    scans.push_back({{"p", p},
                     {"p_other", q},
                     {"l_max", s.l_max},
                     {"b_max", s.b_max},
                     {"instances", s.instances},
                     {"excluded_zero", s.degenerate},
                     {"lte_checked", s.lte_checked},
                     {"lte_mismatches", s.lte_mismatches},
                     {"max_ord", s.max_ord},
                     {"max_ratio", s.max_ratio},
                     {"argmax", {{"l1", s.argmax.l1}, {"l2", s.argmax.l2}, {"b", s.argmax.b}, {"ord", s.argmax.ord}}}});
  }
  rep.details = {{"scans", scans}};
  return rep;
}

VerifyReport run_verify(const std::string& suite, const VerifyConfig& config) {
  if (suite == "lemma1") return verify_lemma1(config);
  if (suite == "lemma2") return verify_lemma2(config);
  if (suite == "lemma3") return verify_lemma3(config);
  if (suite == "lemma45") return verify_lemma45(config);
  if (suite == "padic") return verify_padic(config);
  throw std::invalid_argument("unknown suite '" + suite + "' (lemma1, lemma2, lemma3, lemma45, padic)");
}

json to_json(const VerifyReport& report) {
  return {{"schema_version", kSchemaVersion},
          {"suite", report.suite},
          {"cases", report.cases},
          {"violations", report.violations},
          {"pass", report.pass()},
          {"details", report.details}};
}

}  // namespace halton::cli
