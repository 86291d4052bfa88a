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

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "symclif/framepot.hpp"

using namespace symclif;

namespace {

// C_1 mod phase, generated from oracle H and S by closure.
std::vector<DenseMatrix> oracle_c1() {
  std::vector<DenseMatrix> g{oracle::I2()};
  for (std::size_t i = 0; i < g.size(); i++)
    for (const auto& gen : {oracle::H(), oracle::S()}) {
      DenseMatrix p = gen * g[i];
      bool seen = false;
      for (const auto& e : g) seen = seen || oracle::phase_distance(p, e) < 1e-9;
      if (!seen) g.push_back(p);
    }
  return g;
}

double oracle_fp(const std::vector<DenseMatrix>& g, int t) {
  double s = 0;
  for (const auto& u : g) s += std::pow(std::norm(trace(u)), t);
  return s / g.size();
}

DenseMatrix random_op(std::size_t dim, Rng& rng) { return random_gaussian(dim, dim, rng); }

std::vector<CliffordTableau> u1_group(std::size_t n) {
  std::vector<CliffordTableau> out;
  enumerate_u1(n, BigInt(100000), [&](const CliffordTableau& c) { out.push_back(c); });
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(framepot, single_qubit_clifford_group_sum) {
  auto dense = oracle_c1();
  ASSERT_EQ(dense.size(), 24u);
  auto tab = TwirlEnsemble::finite_clifford(enumerate_cliffords(1));
  for (int t = 1; t <= 5; t++) {
    auto f = frame_potential_group_sum(tab, t);
    EXPECT_NEAR(f.value, oracle_fp(dense, t), 1e-9) << t;
    EXPECT_EQ(f.method, FpMethod::kGroupSumExact);
    if (t <= 3) {
      EXPECT_NEAR(f.value, oracle::haar_trace_moment(t, 2), 1e-9);
    }
  }
  EXPECT_GT(frame_potential_group_sum(tab, 4).value, oracle::haar_trace_moment(4, 2) + 0.5);
}

TEST(framepot, dense_and_tableau_sums_agree) {
  auto g = u1_group(2);
  std::vector<DenseMatrix> d;
  for (const auto& c : g) d.push_back(to_matrix(c));
  auto a = TwirlEnsemble::finite(d), b = TwirlEnsemble::finite_clifford(g);
  for (int t = 1; t <= 3; t++) EXPECT_NEAR(frame_potential_group_sum(a, t).value, frame_potential_group_sum(b, t).value, 1e-9);
}

TEST(framepot, identity_ensemble) {
  auto e = TwirlEnsemble::finite_clifford({CliffordTableau(3)});
  auto est = frame_potential_mc(e, e, {1, 2, 3}, 100, 7);
  for (const auto& f : est) {
    EXPECT_DOUBLE_EQ(f.value, std::pow(8.0, 2.0 * f.t));
    EXPECT_EQ(f.stderr_, 0.0);
    EXPECT_EQ(f.samples, 100u);
  }
}

TEST(framepot, mc_is_thread_invariant) {
  auto e = symmetric_clifford_sampler(SymmetrySpec::u1(3));
  auto ref = frame_potential_mc(e, e, {1, 2}, 5000, 42, 1);
  for (std::size_t th : {2u, 3u, 8u}) {
    auto got = frame_potential_mc(e, e, {1, 2}, 5000, 42, th);
    for (std::size_t i = 0; i < ref.size(); i++) {
      EXPECT_TRUE(same_bits(ref[i].value, got[i].value));
      EXPECT_TRUE(same_bits(ref[i].stderr_, got[i].stderr_));
    }
  }
  auto other = frame_potential_mc(e, e, 1, 5000, 43, 1);
  EXPECT_NE(other.value, ref[0].value);
}

TEST(framepot, mc_matches_group_sum) {
  auto g = enumerate_cliffords(2);
  auto fin = TwirlEnsemble::finite_clifford(g);
  auto smp = TwirlEnsemble::clifford_sampler(2, [](Rng& r) { return random_clifford(2, r); }, "c2");
  auto est = frame_potential_mc(smp, smp, {1, 2, 3, 4}, 40000, 11, 4);
  for (const auto& f : est) {
    double exact = frame_potential_group_sum(fin, f.t).value;
    EXPECT_LT(std::abs(f.value - exact), 5 * f.stderr_ + 1e-12) << f.t;
  }
  // dense path on a small finite list
  auto dense = TwirlEnsemble::finite(oracle_c1());
  auto fd = frame_potential_mc(dense, dense, 2, 40000, 3);
  EXPECT_LT(std::abs(fd.value - 2.0), 5 * fd.stderr_);
}

TEST(framepot, moments_merge_matches_two_pass) {
  Rng rng(5);
  std::normal_distribution<double> nd(3, 2);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = nd(rng);
  detail::Moments a, b;
  for (std::size_t i = 0; i < xs.size(); i++) (i < 377 ? a : b).add(xs[i]);
  a.merge(b);
  double mean = 0, var = 0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() - 1;
  EXPECT_NEAR(static_cast<double>(a.mean), mean, 1e-12);
  EXPECT_NEAR(a.stderr_of_mean(), std::sqrt(var / xs.size()), 1e-12);
}

TEST(framepot, closure_spot_check) {
  Rng rng(1);
  EXPECT_TRUE(spot_check_closure(TwirlEnsemble::finite_clifford(enumerate_cliffords(1)), 50, rng));
  EXPECT_FALSE(spot_check_closure(TwirlEnsemble::finite_clifford({CliffordTableau(1), phase_s(1, 0)}), 50, rng));
  EXPECT_TRUE(spot_check_closure(TwirlEnsemble::finite(oracle_c1()), 30, rng));
  EXPECT_FALSE(spot_check_closure(TwirlEnsemble::finite({oracle::I2(), oracle::S()}), 50, rng));
}

TEST(framepot, twirl_diagonal_phases) {
  std::vector<DenseMatrix> g;
  DenseMatrix s = DenseMatrix::identity(2);
  for (int k = 0; k < 4; k++) {
    g.push_back(s);
    s = oracle::S() * s;
  }
  auto e = TwirlEnsemble::finite(g);
  Rng rng(9);
  for (int k = 0; k < 3; k++) {
    DenseMatrix l = random_op(8, rng);
    EXPECT_LT(max_abs_diff(apply_twirl(e, 3, l, 0, 0), oracle::diagonal_haar_twirl(l)), 1e-12);
  }
}

TEST(framepot, twirl_u1_projects_on_charge_sectors) {
  auto e = TwirlEnsemble::finite_clifford(u1_group(2));
  Rng rng(2);
  DenseMatrix l = random_op(4, rng);
  // t = 1 commutant of U(1)-symmetric unitaries: sector projectors
  DenseMatrix want(4, 4);
  for (int w = 0; w <= 2; w++) {
    cplx tr = 0;
    int cnt = 0;
    for (std::size_t x = 0; x < 4; x++)
      if (std::popcount(x) == w) tr += l(x, x), cnt++;
    for (std::size_t x = 0; x < 4; x++)
      if (std::popcount(x) == w) want(x, x) = tr / double(cnt);
  }
  EXPECT_LT(max_abs_diff(apply_twirl(e, 1, l, 0, 0), want), 1e-12);
  // sampled twirl converges toward the same
  auto smp = symmetric_clifford_sampler(SymmetrySpec::u1(2));
  EXPECT_LT(max_abs_diff(apply_twirl(smp, 1, l, 4000, 1), want), 0.15);
  EXPECT_THROW(apply_twirl(e, 2, l, 0, 0), DimensionError);
}

TEST(framepot, d_channel_equals_symmetric_clifford_twirl) {
  auto q = subgroup_from_generators({PauliOp::from_string("XY")});
  StandardForm sf = canonicalize(q);
  ASSERT_EQ(sf.n2, 1u);
  ASSERT_EQ(sf.n3, 1u);
  DChannel dc = build_d_channel(sf, 0, 0);
  EXPECT_TRUE(dc.exact_d3);
  std::vector<CliffordTableau> group;
  for (const auto& el : enumerate_pauli_symmetric(sf, BigInt(1000))) group.push_back(el.to_tableau());
  ASSERT_EQ(group.size(), 384u);
  for (const auto& c : group) ASSERT_TRUE(is_symmetric(c, q));
  auto fin = TwirlEnsemble::finite_clifford(group);
  Rng rng(4);
  for (int k = 0; k < 2; k++) {
    DenseMatrix l = random_op(64, rng);
    DenseMatrix d = apply_d(dc, l);
    EXPECT_LT(max_abs_diff(d, apply_twirl(fin, 3, l, 0, 0)), 1e-10);
    EXPECT_LT(max_abs_diff(apply_d(dc, d), d), 1e-10);
    for (int j = 0; j < 3; j++) {
      DenseMatrix u = to_matrix(sample_pauli_symmetric(sf, rng).to_tableau());
      EXPECT_LT(max_abs_diff(conjugate_tensor_power(d, u, 3), d), 1e-10);
    }
  }
  EXPECT_THROW(apply_d(dc, DenseMatrix::identity(8)), DimensionError);
  EXPECT_THROW(build_d_channel(canonicalize(standard_subgroup(0, 1, 4)), 1, 0), ResourceGuardError);
}

TEST(framepot, classify) {
  EXPECT_TRUE(classify_symmetry(SymmetrySpec::pauli_spec(subgroup_from_generators({PauliOp::from_string("ZZZ")}))).pauli_equivalent);
  EXPECT_TRUE(classify_symmetry(SymmetrySpec::su2(1)).pauli_equivalent);
  EXPECT_FALSE(classify_symmetry(SymmetrySpec::u1(2)).pauli_equivalent);
  EXPECT_FALSE(classify_symmetry(SymmetrySpec::su2(2)).pauli_equivalent);
  auto r = classify_symmetry(SymmetrySpec::u1(2));
  EXPECT_EQ(r.q, subgroup_from_generators({PauliOp::from_string("ZI"), PauliOp::from_string("IZ")}));
}

TEST(framepot, judge_rules) {
  EXPECT_EQ(judge(10.0, 1.0, 12.0), Verdict::kDesign);
  EXPECT_EQ(judge(16.0, 1.0, 10.0), Verdict::kNotDesign);
  EXPECT_EQ(judge(14.0, 1.0, 10.0), Verdict::kInconclusive);
  EXPECT_EQ(judge(5.0, 1.0, 10.0), Verdict::kInconclusive);
  EXPECT_EQ(judge(4.0, 0.0, 4.0), Verdict::kDesign);
}

TEST(framepot, certify_u1) {
  auto rows = certify_design(SymmetrySpec::u1(3), {1, 2}, 20000, 1, 4);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[0].f_haar_analytic, 4.0);
  EXPECT_EQ(rows[0].verdict, Verdict::kDesign);
  EXPECT_EQ(rows[1].verdict, Verdict::kNotDesign);
  DenseMatrix h = DenseMatrix::identity(2);
  EXPECT_THROW(certify_design(SymmetrySpec::custom_spec(1, {h}), {1}, 100, 1), UnsupportedSpecError);
}

TEST(framepot, errors) {
  auto a = TwirlEnsemble::finite_clifford(enumerate_cliffords(1));
  auto b = TwirlEnsemble::finite_clifford(enumerate_cliffords(2));
  EXPECT_THROW(frame_potential_mc(a, b, 1, 10, 0), DimensionError);
  EXPECT_THROW(frame_potential_mc(a, a, 0, 10, 0), std::invalid_argument);
  auto smp = symmetric_clifford_sampler(SymmetrySpec::u1(2));
  EXPECT_THROW(frame_potential_group_sum(smp, 1), std::invalid_argument);
  EXPECT_THROW(frame_potential_group_sum(a, 1, 10), ResourceGuardError);
}
