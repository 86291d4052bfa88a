// Copyright 2026 The symclif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symclif/canonical.hpp"
#include "symclif/commutant.hpp"
#include "symclif/errors.hpp"
#include "symclif/framepot.hpp"
#include "symclif/samplers.hpp"

namespace symclif::cli {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kOther = 1, kParse = 2, kUnsupported = 3, kResource = 4 };

// ---- JSON helpers ----

inline json matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); r++) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); c++) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline DenseMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; r++) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; c++) {
      const json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

inline json spec_to_json(const SymmetrySpec& s) {
  json j{{"tag", s.tag()}, {"n", s.n}};
  if (s.kind == SymmetrySpec::Kind::kCustom) {
    j["generators"] = json::array();
    for (const auto& g : s.custom) j["generators"].push_back(matrix_to_json(g));
  }
  return j;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + ": '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw ParseError(std::string("bad ") + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

inline SymmetrySpec pauli_list_spec(const std::string& list) {
  std::vector<PauliOp> gens;
  for (const auto& tok : split(list, ',')) {
    if (tok.empty()) throw ParseError("empty Pauli string in list '" + list + "'");
    gens.push_back(PauliOp::from_string(tok));
  }
  if (gens.empty()) throw ParseError("empty Pauli list");
  return SymmetrySpec::pauli_spec(subgroup_from_generators(gens));
}

// Accepts "pauli:XX,ZZ", "pauli:n=3", "u1:4", "su2:3", "custom:2" (custom
// needs the generators from the surrounding object).
inline SymmetrySpec spec_from_tag(const std::string& tag, const json* obj = nullptr) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos) throw ParseError("bad symmetry tag '" + tag + "'");
  const std::string kind = tag.substr(0, colon), rest = tag.substr(colon + 1);
  if (kind == "pauli") {
    if (rest.rfind("n=", 0) == 0) {
      std::size_t n = parse_count(rest.substr(2), "qubit count");
      return SymmetrySpec::pauli_spec(subgroup_from_generators(n, {}));
    }
    return pauli_list_spec(rest);
  }
  if (kind == "u1") return SymmetrySpec::u1(parse_count(rest, "qubit count"));
  if (kind == "su2") return SymmetrySpec::su2(parse_count(rest, "qubit count"));
  if (kind == "custom") {
    if (!obj || !obj->contains("generators")) throw ParseError("custom symmetry needs \"generators\"");
    std::size_t n = parse_count(rest, "qubit count");
    std::vector<DenseMatrix> gens;
    for (const auto& g : (*obj)["generators"]) gens.push_back(matrix_from_json(g));
    return SymmetrySpec::custom_spec(n, std::move(gens));
  }
  throw ParseError("unknown symmetry kind '" + kind + "'");
}

// A custom spec file: {"n": N, "generators": [matrix, ...]}, or any JSON this
// tool emits (those carry a "symmetry" object).
inline SymmetrySpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("symmetry JSON must be an object");
  if (j.contains("symmetry")) {
    const json& s = j["symmetry"];
    if (s.is_string()) return spec_from_tag(s.get<std::string>(), &j);
    return spec_from_json(s);
  }
  if (j.contains("tag")) {
    if (!j["tag"].is_string()) throw ParseError("\"tag\" must be a string");
    return spec_from_tag(j["tag"].get<std::string>(), &j);
  }
  if (j.contains("n") && j.contains("generators")) {
    if (!j["n"].is_number_unsigned()) throw ParseError("\"n\" must be a non-negative integer");
    std::vector<DenseMatrix> gens;
    for (const auto& g : j["generators"]) gens.push_back(matrix_from_json(g));
    return SymmetrySpec::custom_spec(j["n"].get<std::size_t>(), std::move(gens));
  }
  throw ParseError("symmetry JSON needs \"symmetry\", \"tag\" or \"n\" + \"generators\"");
}

inline SymmetrySpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return spec_from_json(j);
}

// "1,2,5-7" -> {1,2,5,6,7}
inline std::vector<std::size_t> parse_t_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(s, ',')) {
    auto dash = tok.find('-');
    if (dash != std::string::npos && dash > 0) {
      std::size_t a = parse_count(tok.substr(0, dash), "t"), b = parse_count(tok.substr(dash + 1), "t");
      if (b < a) throw ParseError("empty t range '" + tok + "'");
      for (std::size_t t = a; t <= b; t++) out.push_back(t);
    } else {
      out.push_back(parse_count(tok, "t"));
    }
  }
  for (auto t : out)
    if (t < 1) throw ParseError("t must be >= 1");
  if (out.empty()) throw ParseError("empty t list");
  return out;
}

// Shortest text that parses back to the same double.
inline std::string fmt_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// ---- commands ----

struct RunConfig {
  std::string command;
  std::string pauli;
  std::size_t u1 = 0, su2 = 0;
  std::string custom;
  std::string t = "1";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;
  std::string format = "csv";
  std::string method = "mc";
  bool dense = false;
  bool no_timing = false;
  std::uint64_t cap = 100000;
  std::size_t ops = 3;
  double design_sigma = 3.0, not_design_sigma = 5.0;
};

inline SymmetrySpec spec_of(const RunConfig& c) {
  int given = !c.pauli.empty() + (c.u1 > 0) + (c.su2 > 0) + !c.custom.empty();
  if (given != 1) throw ParseError("give exactly one of --pauli, --u1, --su2, --custom");
  if (!c.pauli.empty()) return pauli_list_spec(c.pauli);
  if (c.u1) return SymmetrySpec::u1(c.u1);
  if (c.su2) return SymmetrySpec::su2(c.su2);
  return load_spec_file(c.custom);
}

inline BigInt symmetric_group_size(const SymmetrySpec& s) {
  switch (s.kind) {
    case SymmetrySpec::Kind::kPauli: return group_size(canonicalize(s.pauli));
    case SymmetrySpec::Kind::kU1: return u1_size(s.n);
    case SymmetrySpec::Kind::kSU2: return su2_size(s.n);
    case SymmetrySpec::Kind::kCustom: break;
  }
  throw UnsupportedSpecError("no symmetric Clifford construction for custom symmetries");
}

inline std::vector<CliffordTableau> enumerate_group(const SymmetrySpec& s, std::uint64_t cap) {
  std::vector<CliffordTableau> out;
  auto push = [&](const CliffordTableau& c) { out.push_back(c); };
  switch (s.kind) {
    case SymmetrySpec::Kind::kPauli: {
      StandardForm sf = canonicalize(s.pauli);
      if (sf.n3 > 2) throw ResourceGuardError("enumeration needs n3 <= 2");
      enumerate_pauli_symmetric(sf, BigInt(cap), [&](const SymCliffordElement& e) { out.push_back(e.to_tableau()); });
      return out;
    }
    case SymmetrySpec::Kind::kU1: enumerate_u1(s.n, BigInt(cap), push); return out;
    case SymmetrySpec::Kind::kSU2: enumerate_su2(s.n, BigInt(cap), push); return out;
    case SymmetrySpec::Kind::kCustom: break;
  }
  throw UnsupportedSpecError("no symmetric Clifford construction for custom symmetries");
}

inline std::string elements_output(const SymmetrySpec& s, const std::vector<CliffordTableau>& els, const RunConfig& c) {
  if (c.dense || c.format == "json") {
    json j{{"symmetry", spec_to_json(s)}, {"elements", json::array()}};
    for (const auto& e : els) j["elements"].push_back(c.dense ? matrix_to_json(to_matrix(e)) : json(e.str()));
    return (c.dense ? j.dump() : j.dump(1)) + "\n";
  }
  std::string out;
  for (std::size_t k = 0; k < els.size(); k++) out += (k ? "\n" : "") + els[k].str();
  return out;
}

inline std::string cmd_canonicalize(const SymmetrySpec& s) {
  if (s.kind != SymmetrySpec::Kind::kPauli) throw UnsupportedSpecError("canonicalize needs a Pauli symmetry");
  StandardForm sf = canonicalize(s.pauli);
  json j{{"symmetry", spec_to_json(s)}, {"n1", sf.n1}, {"n2", sf.n2}, {"n3", sf.n3}, {"w", sf.w.str()}};
  j["standard_generators"] = standard_subgroup(sf).generator_strings();
  return j.dump(1) + "\n";
}

struct FpRow {
  std::size_t t;
  std::string method, estimate, stderr_;
  std::uint64_t samples;
  std::optional<std::string> analytic, verdict;
};

inline std::string fp_output(const SymmetrySpec& s, const std::vector<FpRow>& rows, const RunConfig& c, double ms) {
  char elapsed[32] = "0";
  if (!c.no_timing) std::snprintf(elapsed, sizeof elapsed, "%.3f", ms);
  if (c.format == "json") {
    json j{{"symmetry", spec_to_json(s)}, {"seed", c.seed}, {"elapsed_ms", c.no_timing ? 0.0 : ms}, {"rows", json::array()}};
    for (const auto& r : rows) {
      json row{{"t", r.t}, {"method", r.method}, {"estimate", r.estimate}, {"stderr", r.stderr_}, {"samples", r.samples}};
      if (r.analytic) row["analytic"] = *r.analytic;
      if (r.verdict) row["verdict"] = *r.verdict;
      j["rows"].push_back(row);
    }
    return j.dump(1) + "\n";
  }
  const bool cert = !rows.empty() && rows[0].verdict.has_value();
  std::string out = "symmetry,t,method,estimate,stderr,samples,seed,elapsed_ms";
  out += cert ? ",analytic,verdict\n" : "\n";
  for (const auto& r : rows) {
    out += csv_field(s.tag()) + "," + std::to_string(r.t) + "," + r.method + "," + r.estimate + "," + r.stderr_ + "," +
           std::to_string(r.samples) + "," + std::to_string(c.seed) + "," + std::string(elapsed);
    if (cert) out += "," + *r.analytic + "," + *r.verdict;
    out += "\n";
  }
  return out;
}

inline std::vector<FpRow> cmd_frame_potential(const SymmetrySpec& s, const RunConfig& c) {
  const auto ts = parse_t_list(c.t);
  std::vector<FpRow> rows;
  if (c.method == "analytic") {
    BlockDecomposition bd = block_decompose(s);
    for (auto t : ts) rows.push_back({t, "analytic", analytic_frame_potential(bd, t).str(), "0", 0, {}, {}});
    return rows;
  }
  if (c.method == "exact") {
    auto g = TwirlEnsemble::finite_clifford(enumerate_group(s, c.cap), s.tag());
    for (auto t : ts) {
      auto f = frame_potential_group_sum(g, t);
      rows.push_back({t, method_name(f.method), fmt_double(f.value), "0", f.samples, {}, {}});
    }
    return rows;
  }
  if (c.method != "mc") throw ParseError("unknown method '" + c.method + "'");
  if (c.samples < 2) throw ParseError("--samples must be at least 2");
  auto ens = symmetric_clifford_sampler(s);
  for (const auto& f : frame_potential_mc(ens, ens, ts, c.samples, c.seed, c.threads))
    rows.push_back({f.t, method_name(f.method), fmt_double(f.value), fmt_double(f.stderr_), f.samples, {}, {}});
  return rows;
}

inline std::vector<FpRow> cmd_certify(const SymmetrySpec& s, const RunConfig& c) {
  if (c.samples < 2) throw ParseError("--samples must be at least 2");
  DesignThresholds th{c.design_sigma, c.not_design_sigma};
  std::vector<FpRow> rows;
  for (const auto& r : certify_design(s, parse_t_list(c.t), c.samples, c.seed, c.threads, th))
    rows.push_back({r.f_clifford.t, method_name(r.f_clifford.method), fmt_double(r.f_clifford.value),
                    fmt_double(r.f_clifford.stderr_), r.f_clifford.samples, fmt_double(r.f_haar_analytic),
                    std::string(verdict_name(r.verdict))});
  return rows;
}

// Twirls random operators over the symmetric Clifford group and checks that
// the result commutes with Haar-random symmetric unitaries (design property).
inline std::string cmd_twirl_check(const SymmetrySpec& s, const RunConfig& c) {
  const auto ts = parse_t_list(c.t);
  Rng rng = detail::shard_rng(c.seed, 0);
  BlockDecomposition bd = block_decompose(s);
  std::optional<TwirlEnsemble> fin;
  try {
    fin = TwirlEnsemble::finite_clifford(enumerate_group(s, c.cap), s.tag());
  } catch (const ResourceGuardError&) {
  }
  TwirlEnsemble smp = symmetric_clifford_sampler(s);
  const std::uint64_t draws = c.samples ? c.samples : 2000;
  json j{{"symmetry", spec_to_json(s)}, {"seed", c.seed}, {"checks", json::array()}};
  for (auto t : ts) {
    if (t * s.n > 9) throw ResourceGuardError("twirl-check needs t*n <= 9");
    const std::size_t dim = std::size_t{1} << (t * s.n);
    double inv = 0, idem = 0;
    for (std::size_t k = 0; k < c.ops; k++) {
      DenseMatrix l = random_gaussian(dim, dim, rng);
      DenseMatrix phi = fin ? apply_twirl(*fin, t, l, 0, 0) : apply_twirl(smp, t, l, draws, c.seed + k);
      const double scale = std::max(1.0, max_abs(phi));
      for (int r = 0; r < 4; r++) {
        DenseMatrix u = haar_symmetric_unitary(bd, rng);
        inv = std::max(inv, max_abs_diff(conjugate_tensor_power(phi, u, t), phi) / scale);
      }
      if (fin) idem = std::max(idem, max_abs_diff(apply_twirl(*fin, t, phi, 0, 0), phi) / scale);
    }
    json row{{"t", t}, {"method", fin ? "exact" : "mc"}, {"elements", fin ? fin->size() : draws},
             {"invariance_residual", inv}};
    if (fin) {
      row["idempotence_residual"] = idem;
      row["design"] = inv < 1e-8;
    }
    j["checks"].push_back(row);
  }
  if (s.kind == SymmetrySpec::Kind::kPauli && 3 * s.n <= 9 && fin) {
    StandardForm sf = canonicalize(s.pauli);
    DChannel dc = build_d_channel(sf, 200, c.seed);
    const std::size_t dim = std::size_t{1} << (3 * s.n);
    double res = 0;
    for (std::size_t k = 0; k < c.ops; k++) {
      DenseMatrix l = random_gaussian(dim, dim, rng);
      DenseMatrix d = apply_d(dc, l);
      res = std::max(res, max_abs_diff(d, apply_twirl(*fin, 3, l, 0, 0)) / std::max(1.0, max_abs(d)));
    }
    j["d_channel"] = {{"stages", dc.stages.size()}, {"exact_d3", dc.exact_d3}, {"residual_vs_twirl", res}};
  }
  return j.dump(1) + "\n";
}

inline std::string dispatch(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw ParseError("--format must be csv or json");
  if (c.threads == 0) throw ParseError("--threads must be >= 1");
  const SymmetrySpec s = spec_of(c);
  const auto t0 = std::chrono::steady_clock::now();
  auto ms = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };
  if (c.command == "canonicalize") return cmd_canonicalize(s);
  if (c.command == "size") return symmetric_group_size(s).str() + "\n";
  if (c.command == "sample") {
    if (s.kind == SymmetrySpec::Kind::kCustom) throw UnsupportedSpecError("no sampler for custom symmetries");
    auto ens = symmetric_clifford_sampler(s);
    Rng rng = detail::shard_rng(c.seed, 0);
    std::vector<CliffordTableau> els;
    for (std::uint64_t k = 0; k < std::max<std::uint64_t>(1, c.samples); k++) els.push_back(ens.draw_clifford(rng));
    return elements_output(s, els, c);
  }
  if (c.command == "enumerate") return elements_output(s, enumerate_group(s, c.cap), c);
  if (c.command == "frame-potential") {
    auto rows = cmd_frame_potential(s, c);
    return fp_output(s, rows, c, ms());
  }
  if (c.command == "certify") {
    auto rows = cmd_certify(s, c);
    return fp_output(s, rows, c, ms());
  }
  if (c.command == "twirl-check") return cmd_twirl_check(s, c);
  throw ParseError("unknown command '" + c.command + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"symmetric Clifford groups and symmetric unitary designs", "symclif"};
  app.require_subcommand(1);
  RunConfig c;
  auto add_spec = [&](CLI::App* sc) {
    sc->add_option("--pauli", c.pauli, "comma-separated Pauli generators, e.g. XXXX,ZZZZ");
    sc->add_option("--u1", c.u1, "U(1) symmetry on n qubits");
    sc->add_option("--su2", c.su2, "SU(2) symmetry on n qubits");
    sc->add_option("--custom", c.custom, "JSON file with Hermitian generators or a tool output");
    sc->add_option("--out", c.out, "output path (default stdout)");
  };
  auto add_mc = [&](CLI::App* sc) {
    sc->add_option("--t", c.t, "t values: comma list and ranges, e.g. 1,2,4-6");
    sc->add_option("--samples", c.samples, "Monte Carlo pairs");
    sc->add_option("--seed", c.seed, "64-bit seed");
    sc->add_option("--threads", c.threads, "worker threads");
    sc->add_option("--format", c.format, "csv or json");
    sc->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0 for byte-stable output");
  };
  auto* canon = app.add_subcommand("canonicalize", "standard form of a Pauli symmetry (JSON)");
  add_spec(canon);
  auto* size = app.add_subcommand("size", "order of the symmetric Clifford group mod phase");
  add_spec(size);
  auto* sample = app.add_subcommand("sample", "draw uniform symmetric Cliffords");
  add_spec(sample);
  sample->add_option("--samples", c.samples, "number of elements (default 1)");
  sample->add_option("--seed", c.seed, "64-bit seed");
  sample->add_option("--format", c.format, "csv (tableau text) or json");
  sample->add_flag("--dense", c.dense, "dense matrices as JSON");
  auto* enumerate = app.add_subcommand("enumerate", "list every symmetric Clifford");
  add_spec(enumerate);
  enumerate->add_option("--cap", c.cap, "refuse groups larger than this");
  enumerate->add_option("--format", c.format, "csv (tableau text) or json");
  enumerate->add_flag("--dense", c.dense, "dense matrices as JSON");
  auto* fp = app.add_subcommand("frame-potential", "frame potentials of the symmetric Clifford group");
  add_spec(fp);
  add_mc(fp);
  fp->add_option("--method", c.method, "mc, exact (group sum) or analytic (symmetric Haar)");
  fp->add_option("--cap", c.cap, "group size limit for exact sums");
  auto* cert = app.add_subcommand("certify", "compare Clifford and symmetric Haar frame potentials");
  add_spec(cert);
  add_mc(cert);
  cert->add_option("--design-sigma", c.design_sigma, "design if |diff| < k sigma");
  cert->add_option("--not-design-sigma", c.not_design_sigma, "not a design if diff > k sigma");
  auto* tw = app.add_subcommand("twirl-check", "twirl residuals against symmetric Haar invariance (JSON)");
  add_spec(tw);
  tw->add_option("--t", c.t, "t values");
  tw->add_option("--samples", c.samples, "draws when the group is too large to enumerate");
  tw->add_option("--seed", c.seed, "64-bit seed");
  tw->add_option("--cap", c.cap, "group size limit for exact twirls");
  tw->add_option("--ops", c.ops, "random operators per t");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    err << "symclif " << c.command << "\n";
    std::string text = dispatch(c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + c.out);
      f << text;
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const UnsupportedSpecError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kOther;
  }
}

}  // namespace symclif::cli
