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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "symclif/cli.hpp"
#include "symclif/symclif.hpp"

using namespace symclif;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "symclif");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("symclif_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> f;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    f.push_back(cur);
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST(cli, size) {
  EXPECT_EQ(run({"size", "--pauli", "XXXX,ZZZZ"}).out, "94371840\n");
  EXPECT_EQ(run({"size", "--pauli", "ZI"}).out, "384\n");
  EXPECT_EQ(run({"size", "--u1", "4"}).out, "393216\n");
  EXPECT_EQ(run({"size", "--su2", "4"}).out, "24\n");
}

TEST(cli, canonicalize_z_then_identities) {
  for (std::size_t n = 1; n <= 5; n++) {
    auto r = run({"canonicalize", "--pauli", "Z" + std::string(n - 1, 'I')});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["n1"], 0);
    EXPECT_EQ(j["n2"], 1);
    EXPECT_EQ(j["n3"], n - 1);
    EXPECT_EQ(CliffordTableau::parse(j["w"].get<std::string>()).num_qubits(), n);
  }
  auto j = json::parse(run({"canonicalize", "--pauli", "XXXX,ZZZZ"}).out);
  EXPECT_EQ(j["n1"], 0);
  EXPECT_EQ(j["n2"], 2);
  EXPECT_EQ(j["n3"], 2);
  EXPECT_EQ(j["standard_generators"].size(), 2u);
}

TEST(cli, certify_u1_verdicts) {
  auto r = run({"certify", "--u1", "4", "--t", "1,2", "--samples", "100000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"symmetry", "t", "method", "estimate", "stderr", "samples", "seed",
                                                "elapsed_ms", "analytic", "verdict"}));
  EXPECT_EQ(rows[1][8], "5");
  EXPECT_EQ(rows[1][9], "design");
  EXPECT_EQ(rows[2][8], "48");
  EXPECT_EQ(rows[2][9], "not_design");
}

TEST(cli, byte_identical_across_threads) {
  std::vector<std::string> base{"frame-potential", "--pauli", "XX,ZZ", "--t", "1-3", "--samples", "5000",
                                "--seed", "99", "--no-timing"};
  std::string ref;
  for (const char* th : {"1", "2", "4", "7"}) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(th);
    auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    if (ref.empty()) ref = r.out;
    EXPECT_EQ(r.out, ref);
  }
  // the Pauli tag contains a comma and must be quoted
  EXPECT_EQ(csv_rows(ref)[1][0], "pauli:XX,ZZ");
  EXPECT_NE(ref.find("\"pauli:XX,ZZ\""), std::string::npos);
  EXPECT_EQ(run(base).out, ref);
}

TEST(cli, json_outputs_round_trip) {
  std::vector<std::vector<std::string>> cmds{
      {"canonicalize", "--pauli", "XXI,ZZI"},
      {"sample", "--u1", "3", "--dense", "--samples", "2"},
      {"sample", "--su2", "2", "--format", "json"},
      {"enumerate", "--pauli", "ZI", "--format", "json"},
      {"frame-potential", "--su2", "3", "--method", "exact", "--format", "json", "--t", "1,2"},
      {"certify", "--u1", "2", "--samples", "500", "--format", "json"},
      {"twirl-check", "--pauli", "XY", "--t", "1", "--ops", "1"},
  };
  for (const auto& cmd : cmds) {
    auto r = run(cmd);
    ASSERT_EQ(r.code, 0) << cmd[0] << ": " << r.err;
    ASSERT_TRUE(json::accept(r.out)) << cmd[0];
    auto path = temp_file("rt.json", r.out);
    auto again = run({"size", "--custom", path});
    auto direct = run({"size", cmd[1], cmd[2]});
    EXPECT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(again.out, direct.out) << cmd[0];
    if (cmd[0] == "canonicalize") {
      EXPECT_EQ(run({"canonicalize", "--custom", path}).out, r.out);
    }
  }
  // custom specs carry their generators
  json spec{{"n", 1}, {"generators", {{{1, 0}, {0, -1}}}}};
  auto path = temp_file("custom.json", spec.dump());
  auto r = run({"frame-potential", "--custom", path, "--method", "analytic", "--t", "1,2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["estimate"], "2");
  EXPECT_EQ(j["rows"][1]["estimate"], "6");  // two U(1) blocks: C(2t, t)
  auto back = run({"frame-potential", "--custom", temp_file("custom_rt.json", r.out), "--method", "analytic", "--t",
                   "1,2", "--format", "json"});
  EXPECT_EQ(json::parse(back.out)["rows"], j["rows"]);
}

TEST(cli, sample_outputs_symmetric_tableaux) {
  auto r = run({"sample", "--pauli", "XXX", "--samples", "5", "--seed", "1"});
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string block, line;
  std::size_t count = 0;
  auto q = subgroup_from_generators({PauliOp::from_string("XXX")});
  auto flush = [&] {
    if (block.empty()) return;
    EXPECT_TRUE(is_symmetric(CliffordTableau::parse(block), q));
    count++;
    block.clear();
  };
  while (std::getline(is, line)) {
    if (line.empty()) {
      flush();
    } else {
      block += line + "\n";
    }
  }
  flush();
  EXPECT_EQ(count, 5u);
}

TEST(cli, enumerate_lists_distinct_elements) {
  auto r = run({"enumerate", "--pauli", "ZI", "--format", "json"});
  auto els = json::parse(r.out)["elements"];
  ASSERT_EQ(els.size(), 384u);
  std::set<std::string> distinct;
  for (const auto& e : els) distinct.insert(e.get<std::string>());
  EXPECT_EQ(distinct.size(), 384u);
}

TEST(cli, twirl_check_reports) {
  auto j = json::parse(run({"twirl-check", "--pauli", "XY", "--t", "1-3", "--ops", "1"}).out);
  for (const auto& c : j["checks"]) {
    EXPECT_EQ(c["method"], "exact");
    EXPECT_TRUE(c["design"].get<bool>()) << c.dump();
  }
  EXPECT_LT(j["d_channel"]["residual_vs_twirl"].get<double>(), 1e-10);
  auto u = json::parse(run({"twirl-check", "--u1", "2", "--t", "1,2", "--ops", "2"}).out);
  EXPECT_TRUE(u["checks"][0]["design"].get<bool>());
  EXPECT_FALSE(u["checks"][1]["design"].get<bool>());
}

TEST(cli, out_file) {
  auto p = std::filesystem::temp_directory_path() / "symclif_test_out.txt";
  std::filesystem::remove(p);
  auto r = run({"size", "--su2", "3", "--out", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  std::ifstream f(p);
  std::string s;
  std::getline(f, s);
  EXPECT_EQ(s, "6");
}

TEST(cli, exit_codes) {
  EXPECT_EQ(run({}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--bogus"}).code, cli::kParse);
  EXPECT_EQ(run({"size"}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--u1", "2", "--su2", "2"}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--pauli", "XQ"}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--pauli", "XX,Z"}).code, cli::kParse);
  EXPECT_EQ(run({"frame-potential", "--u1", "2", "--t", "0", "--samples", "10"}).code, cli::kParse);
  EXPECT_EQ(run({"frame-potential", "--u1", "2", "--format", "xml", "--samples", "10"}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--custom", "/nonexistent/file.json"}).code, cli::kParse);
  EXPECT_EQ(run({"size", "--custom", temp_file("bad.json", "{not json")}).code, cli::kParse);
  auto custom = temp_file("c.json", R"({"n":1,"generators":[[[1,0],[0,-1]]]})");
  EXPECT_EQ(run({"size", "--custom", custom}).code, cli::kUnsupported);
  EXPECT_EQ(run({"sample", "--custom", custom}).code, cli::kUnsupported);
  EXPECT_EQ(run({"canonicalize", "--u1", "2"}).code, cli::kUnsupported);
  EXPECT_EQ(run({"enumerate", "--u1", "5"}).code, cli::kResource);
  EXPECT_EQ(run({"twirl-check", "--u1", "5", "--t", "2"}).code, cli::kResource);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}
