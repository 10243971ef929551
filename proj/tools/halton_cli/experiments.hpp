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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halton/discrepancy.hpp"
#include "halton/fourier.hpp"
#include "halton/padic.hpp"
#include "halton/radical.hpp"

namespace halton::cli {

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Scaling study.

struct ScalingConfig {
  std::vector<Base> bases{Base(2), Base(3)};
  std::vector<std::uint64_t> starts{0, 1'000'000};
  std::vector<std::uint64_t> counts;  // ascending
  std::optional<Mode> mode;           // per-N default when empty
  unsigned threads = 0;
  bool timing = false;
  double budget_seconds = 0;  // 0: unlimited
};

/// N = 2^j for j in [lo, hi].
std::vector<std::uint64_t> dyadic_grid(unsigned lo, unsigned hi);

struct ScalingRow {
  std::uint64_t count = 0;
  std::uint64_t start = 0;
  Mode mode = Mode::fast;
  double d2 = 0;
  double d2_over_log = 0;
  double d2_over_sqrt_log = 0;
  double wall_ms = 0;
};

struct ScalingFit {
  std::uint64_t start = 0;
  double slope = 0;       // least squares of d2_over_log against grid index
  double mean_ratio = 0;  // mean of d2_over_log
  double min_sqrt_ratio = 0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;  // sorted by (start, count)
  std::vector<ScalingFit> fits;
  bool budget_exceeded = false;
};

ScalingReport run_scaling(const ScalingConfig& config);
double least_squares_slope(const std::vector<double>& y);
void write_scaling_csv(std::ostream& os, const ScalingReport& report);
nlohmann::json to_json(const ScalingReport& report);

// ---------------------------------------------------------------------------
// CLT sampling experiment.

enum class D2Method { warnock, monte_carlo };

struct CltConfig {
  unsigned s = 3;  // Halton dimension; the Hammersley set has s + 1 coordinates
  std::uint64_t count = 4096;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned bins = 32;
  std::optional<D2Method> d2_method;  // warnock up to kExactModeLimit points
  unsigned threads = 0;
};

struct CltReport {
  unsigned s = 3;
  std::uint64_t count = 0;
  std::uint64_t samples = 0;
  bool outside_claim = false;  // s < 3
  D2Method d2_method = D2Method::warnock;
  double d2 = 0;
  bool ks_defined = false;
  double ks = 0;
  double mean = 0;
  double variance = 0;
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> histogram;
  std::vector<std::pair<double, double>> ecdf;  // (z, empirical CDF) on a fixed grid
  double moment_ratio_q1 = 0;  // (mean |D|) / D_2, compare kappa_1
  double moment_ratio_q4 = 0;  // (mean D^4)^{1/4} / D_2, compare kappa_4^{1/4}
};

CltReport run_clt(const CltConfig& config);
nlohmann::json to_json(const CltReport& report);
/// Kolmogorov-Smirnov distance of the sample to the standard normal.
double ks_normal(std::vector<double> values);

// ---------------------------------------------------------------------------
// Verification suites.

struct VerifyConfig {
  BasisPair bases{Base(2), Base(3)};
  std::uint64_t seed = 42;
  std::uint64_t cases = 0;  // 0: suite default
  bool inject_fault = false;
  std::optional<BigInt> v_override;
  std::optional<BigInt> vv_override;
  std::optional<double> lemma4_constant;  // C* for lhs <= C* rhs
  unsigned threads = 0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  nlohmann::json details;
  bool pass() const { return violations == 0; }
};

/// Calibrated constant for lemma-4 reporting at n = 2, bases (2,3).
inline constexpr double kLemma4Constant = 0.02;

VerifyReport verify_lemma1(const VerifyConfig& config);
VerifyReport verify_lemma2(const VerifyConfig& config);
VerifyReport verify_lemma3(const VerifyConfig& config);
VerifyReport verify_lemma45(const VerifyConfig& config);
VerifyReport verify_padic(const VerifyConfig& config);
VerifyReport run_verify(const std::string& suite, const VerifyConfig& config);
nlohmann::json to_json(const VerifyReport& report);

}  // namespace halton::cli
