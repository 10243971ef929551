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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "halton/io.hpp"

namespace {

using namespace halton;
using nlohmann::json;

std::vector<Base> to_bases(const std::vector<std::uint32_t>& values) {
  std::vector<Base> out;
  for (std::uint32_t v : values) out.emplace_back(v);
  require_pairwise_coprime(out);
  return out;
}

BasisPair to_pair(const std::vector<std::uint32_t>& values) {
  if (values.size() != 2) throw std::invalid_argument("--bases needs exactly two values here");
  return BasisPair(Base(values[0]), Base(values[1]));
}

// Writes to the path, or stdout when the path is empty.
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write(os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

void emit_json(const std::string& path, const json& j) {
  emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

json value_json(const DiscrepancyValue& v) {
  if (v.mode == Mode::exact) {
    return {{"mode", "exact"}, {"value_num", v.exact.get_num().get_str()}, {"value_den", v.exact.get_den().get_str()},
            {"value_f64", v.approx}};
  }
  return {{"mode", "float"}, {"value_f64", v.approx}};
}

RationalPoint parse_corner(const std::string& text) {
  std::vector<Rational> coords;
  std::size_t from = 0;
  while (from <= text.size()) {
    const std::size_t comma = text.find(',', from);
    coords.push_back(parse_rational(text.substr(from, comma == std::string::npos ? std::string::npos : comma - from)));
    if (comma == std::string::npos) break;
    from = comma + 1;
  }
  return RationalPoint(std::move(coords));
}

struct Common {
  std::vector<std::uint32_t> bases{2, 3};
  std::string q = "0";
  std::uint64_t n = 16;
  std::string mode;
  std::uint64_t seed = 42;
  std::string out;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_n = true) {
  cmd->add_option("--bases", c.bases, "Pairwise coprime bases, comma separated")->delimiter(',');
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  if (with_n) {
    cmd->add_option("--q", c.q, "Start index Q");
    cmd->add_option("--n", c.n, "Point count N");
  }
}

std::optional<Mode> mode_of(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return parse_mode(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Halton sequence discrepancy toolkit"};
  app.require_subcommand(1);

  // generate
  Common gen;
  std::string gen_kind = "halton";
  std::string gen_format = "csv";
  auto* generate = app.add_subcommand("generate", "Write a point set");
  add_common(generate, gen);
  generate->add_option("--kind", gen_kind, "halton | hammersley | van_der_corput")
      ->check(CLI::IsMember({"halton", "hammersley", "van_der_corput"}));
  generate->add_option("--format", gen_format, "csv (exact) | binary (float64)")->check(CLI::IsMember({"csv", "binary"}));

  // discrepancy
  Common dis;
  std::string dis_kind = "halton";
  std::string dis_metric = "l2";
  std::string dis_in;
  std::string dis_corner;
  std::vector<unsigned> dis_depth;
  auto* discrepancy = app.add_subcommand("discrepancy", "Local, L2 or star discrepancy of a point set");
  add_common(discrepancy, dis);
  discrepancy->add_option("--kind", dis_kind, "halton | hammersley | van_der_corput")
      ->check(CLI::IsMember({"halton", "hammersley", "van_der_corput"}));
  discrepancy->add_option("--in", dis_in, "Read the points from an exact CSV file instead");
  discrepancy->add_option("--metric", dis_metric, "l2 | star | local | fourier-table")
      ->check(CLI::IsMember({"l2", "star", "local", "fourier-table"}));
  discrepancy->add_option("--mode", dis.mode, "exact | float (default: exact up to 4096 points)")
      ->check(CLI::IsMember({"exact", "float"}));
  discrepancy->add_option("--x", dis_corner, "Box corner for local / fourier-table, e.g. 1/2,2/3");
  discrepancy->add_option("--r", dis_depth, "Depth pair r1,r2 for fourier-table")->delimiter(',');

  // scaling
  Common sca;
  std::vector<std::uint64_t> sca_starts{0, 1'000'000};
  std::vector<std::uint64_t> sca_counts;
  unsigned j_min = 4;
  unsigned j_max = 16;
  bool sca_timing = false;
  double sca_budget = 0;
  std::string sca_csv;
  auto* scaling = app.add_subcommand("scaling", "D2 / log N over a dyadic grid of N");
  add_common(scaling, sca, false);
  scaling->add_option("--q", sca_starts, "Start indices Q, comma separated")->delimiter(',');
  scaling->add_option("--n", sca_counts, "Explicit ascending N grid, comma separated")->delimiter(',');
  scaling->add_option("--j-min", j_min, "Smallest exponent of the grid N = 2^j");
  scaling->add_option("--j-max", j_max, "Largest exponent of the grid N = 2^j");
  scaling->add_option("--mode", sca.mode, "exact | float (default: exact up to 4096 points)")
      ->check(CLI::IsMember({"exact", "float"}));
  scaling->add_flag("--timing", sca_timing, "Record wall times (output is then not reproducible)");
  scaling->add_option("--budget", sca_budget, "Stop after this many seconds and flag the table as partial");
  scaling->add_option("--csv", sca_csv, "Also write the rows as CSV");

  // verify
  Common ver;
  std::string suite;
  std::uint64_t ver_cases = 0;
  bool inject = false;
  std::string v_override;
  std::string vv_override;
  std::optional<double> c_star;
  auto* verify = app.add_subcommand("verify", "Run a verification suite; nonzero exit on any violation");
  add_common(verify, ver, false);
  verify->add_option("--suite", suite, "lemma1 | lemma2 | lemma3 | lemma45 | padic")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2", "lemma3", "lemma45", "padic"}));
  verify->add_option("--seed", ver.seed, "Seed for sampled cases");
  verify->add_option("--cases", ver_cases, "Sampled cases (0: suite default)");
  verify->add_flag("--inject-fault", inject, "Corrupt one generated point (negative control)");
  verify->add_option("--v-override", v_override, "Threshold V for the partitions");
  verify->add_option("--vv-override", vv_override, "Threshold VV for the partitions");
  verify->add_option("--c-star", c_star, "Constant C* in lhs <= C* rhs");

  // clt
  Common clt_c;
  unsigned clt_s = 3;
  std::uint64_t clt_n = 4096;
  std::uint64_t samples = 10'000;
  unsigned bins = 32;
  std::string d2_method;
  auto* clt = app.add_subcommand("clt", "Normalized local discrepancy of the Hammersley set at random corners");
  clt->add_option("--s", clt_s, "Halton dimension (the set has s + 1 coordinates)");
  clt->add_option("--n", clt_n, "Point count N");
  clt->add_option("--samples", samples, "Number of random corners");
  clt->add_option("--seed", clt_c.seed, "Seed");
  clt->add_option("--bins", bins, "Histogram bins on [-4, 4]");
  clt->add_option("--d2", d2_method, "warnock | monte-carlo")->check(CLI::IsMember({"warnock", "monte-carlo"}));
  clt->add_option("--out", clt_c.out, "Output path (default: stdout)");
  clt->add_option("--threads", clt_c.threads, "Worker threads (0: all cores)");

  // padic-scan
  Common pad;
  std::int64_t l_max = 50;
  std::uint32_t b_max = 300;
  std::string pad_csv;
  auto* padic = app.add_subcommand("padic-scan", "ord_p((l1/l2) p'^b - 1) over a box of (l1, l2, b)");
  add_common(padic, pad, false);
  padic->add_option("--l-max", l_max, "Bound on |l1|, |l2|");
  padic->add_option("--b-max", b_max, "Largest exponent b");
  padic->add_option("--csv", pad_csv, "Write every instance as CSV (l1,l2,b,ord,ratio)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const PointSetKind kind = parse_point_set_kind(gen_kind);
      const std::vector<Base> bases = to_bases(gen.bases);
      if (gen_format == "csv") {
        const PointSet set = point_set(kind, bases, BigInt(gen.q), gen.n);
        emit(gen.out, [&](std::ostream& os) { write_points_csv(os, set); });
      } else {
        const BigInt q(gen.q);
        FloatPointSet f;
        if (kind == PointSetKind::hammersley) {
          if (q != 0) throw std::invalid_argument("hammersley sets start at Q = 0");
          f = hammersley_f64(bases, gen.n);
        } else {
          if (kind == PointSetKind::van_der_corput && bases.size() != 1) {
            throw std::invalid_argument("van_der_corput takes exactly one base");
          }
          f = halton_f64(bases, to_uint64(q), gen.n);
        }
        emit(gen.out, [&](std::ostream& os) { write_points_binary(os, f); });
      }
      return 0;
    }

    if (discrepancy->parsed()) {
      if (dis_metric == "fourier-table") {
        if (dis_depth.size() != 2) throw std::invalid_argument("fourier-table needs --r r1,r2");
        const BasisPair bp = to_pair(dis.bases);
        const auto terms = fourier_terms(parse_corner(dis_corner), TruncIndex(dis_depth[0], dis_depth[1]), BigInt(dis.q),
                                         dis.n, bp);
        emit(dis.out, [&](std::ostream& os) { write_fourier_csv(os, terms); });
        return 0;
      }
      const PointSet set = dis_in.empty()
                               ? point_set(parse_point_set_kind(dis_kind), to_bases(dis.bases), BigInt(dis.q), dis.n)
                               : load_points_csv(dis_in);
      const Mode mode = mode_of(dis.mode).value_or(default_mode(set.count()));
      DiscrepancyValue v;
      if (dis_metric == "l2") {
        v = l2_discrepancy_squared(set, mode, dis.threads);
      } else if (dis_metric == "star") {
        v = star_discrepancy(set);
      } else {
        v = local_discrepancy(parse_corner(dis_corner), set);
      }
      json j = {{"schema_version", cli::kSchemaVersion},
                {"metric", dis_metric == "l2" ? "l2_squared" : dis_metric},
                {"N", set.count()},
                {"dimension", set.dim()},
                {"kind", to_string(set.kind())},
                {"start", set.start().get_str()}};
      j.update(value_json(v));
      emit_json(dis.out, j);
      return 0;
    }

    if (scaling->parsed()) {
      cli::ScalingConfig cfg;
      cfg.bases = to_bases(sca.bases);
      cfg.starts = sca_starts;
      cfg.counts = sca_counts.empty() ? cli::dyadic_grid(j_min, j_max) : sca_counts;
      cfg.mode = mode_of(sca.mode);
      cfg.threads = sca.threads;
      cfg.timing = sca_timing;
      cfg.budget_seconds = sca_budget;
      const cli::ScalingReport rep = cli::run_scaling(cfg);
      if (!sca_csv.empty()) emit(sca_csv, [&](std::ostream& os) { cli::write_scaling_csv(os, rep); });
      emit_json(sca.out, cli::to_json(rep));
      if (rep.budget_exceeded) std::cerr << "warning: budget exceeded, table is partial\n";
      return 0;
    }

    if (verify->parsed()) {
      cli::VerifyConfig cfg;
      cfg.bases = to_pair(ver.bases);
      cfg.seed = ver.seed;
      cfg.cases = ver_cases;
      cfg.inject_fault = inject;
      if (!v_override.empty()) cfg.v_override = BigInt(v_override);
      if (!vv_override.empty()) cfg.vv_override = BigInt(vv_override);
      cfg.lemma4_constant = c_star;
      cfg.threads = ver.threads;
      const cli::VerifyReport rep = cli::run_verify(suite, cfg);
      emit_json(ver.out, cli::to_json(rep));
      return rep.pass() ? 0 : 1;
    }

    if (clt->parsed()) {
      cli::CltConfig cfg;
      cfg.s = clt_s;
      cfg.count = clt_n;
      cfg.samples = samples;
      cfg.seed = clt_c.seed;
      cfg.bins = bins;
      if (!d2_method.empty()) cfg.d2_method = d2_method == "warnock" ? cli::D2Method::warnock : cli::D2Method::monte_carlo;
      cfg.threads = clt_c.threads;
      const cli::CltReport rep = cli::run_clt(cfg);
      if (rep.outside_claim) std::cerr << "note: s < 3 lies outside the range of the limit theorem\n";
      emit_json(clt_c.out, cli::to_json(rep));
      return 0;
    }

    if (padic->parsed()) {
      const BasisPair bp = to_pair(pad.bases);
      const ScanReport rep = corollary_scan(bp.p(0), bp.p(1), l_max, b_max, !pad_csv.empty(), pad.threads);
      if (!pad_csv.empty()) emit(pad_csv, [&](std::ostream& os) { write_scan_csv(os, rep); });
      emit_json(pad.out, {{"schema_version", cli::kSchemaVersion},
                          {"p", rep.p},
                          {"p_other", rep.p_other},
                          {"l_max", rep.l_max},
                          {"b_max", rep.b_max},
                          {"instances", rep.instances},
                          {"excluded_zero", rep.degenerate},
                          {"lte_checked", rep.lte_checked},
                          {"lte_mismatches", rep.lte_mismatches},
                          {"max_ord", rep.max_ord},
                          {"max_ratio", rep.max_ratio},
                          {"argmax", {{"l1", rep.argmax.l1}, {"l2", rep.argmax.l2}, {"b", rep.argmax.b}, {"ord", rep.argmax.ord}}}});
      return rep.lte_mismatches == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
