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

#include <algorithm>

#include "oracles.hpp"
#include "symclif/canonical.hpp"
#include "symclif/commutant.hpp"

using namespace symclif;
using boost::multiprecision::cpp_int;

namespace {

PauliOp P(const char* s) { return PauliOp::from_string(s); }

std::vector<std::pair<std::size_t, std::size_t>> shape(const BlockDecomposition& bd) {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  for (const auto& b : bd.blocks) s.emplace_back(b.d, b.m);
  std::sort(s.begin(), s.end());
  return s;
}

BlockDecomposition fake_blocks(const std::vector<std::pair<std::size_t, std::size_t>>& dm) {
  BlockDecomposition bd;
  for (auto [d, m] : dm) bd.blocks.push_back(Block{d, m, DenseMatrix()});
  return bd;
}

void expect_valid(const SymmetrySpec& spec, const BlockDecomposition& bd) {
  std::size_t total = 0;
  for (const auto& b : bd.blocks) total += b.d * b.m;
  EXPECT_EQ(total, spec.dim());
  DenseMatrix v = detail::stacked_basis(bd);
  EXPECT_LT(unitarity_residual(v), 1e-8);
  for (const auto& h : spec.hermitian_generators()) EXPECT_LT(detail::block_form_residual(bd, v, h), 1e-8);
}

SymmetrySpec r123() {
  return SymmetrySpec::pauli_spec(standard_subgroup(1, 2, 3));
}

}  // namespace

TEST(commutant, pauli_standard_form_blocks) {
  auto spec = r123();
  auto bd = block_decompose(spec);
  EXPECT_EQ(shape(bd), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 8}, {2, 8}, {2, 8}, {2, 8}}));
  expect_valid(spec, bd);
}

TEST(commutant, u1_blocks) {
  auto spec = SymmetrySpec::u1(4);
  auto bd = block_decompose(spec);
  EXPECT_EQ(shape(bd), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 1}, {1, 4}, {1, 4}, {1, 6}}));
  expect_valid(spec, bd);
}

TEST(commutant, su2_blocks) {
  auto spec = SymmetrySpec::su2(3);
  auto bd = block_decompose(spec);
  EXPECT_EQ(shape(bd), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {4, 1}}));
  expect_valid(spec, bd);
}

TEST(commutant, all_kinds_verify_up_to_six_qubits) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 6; n++) {
    for (auto spec : {SymmetrySpec::u1(n), SymmetrySpec::su2(n)}) expect_valid(spec, block_decompose(spec));
    std::vector<PauliOp> gens;
    for (int k = 0; k < 2; k++) gens.push_back(PauliOp::from_vec(detail::random_bits(2 * n, rng)));
    auto ps = SymmetrySpec::pauli_spec(subgroup_from_generators(n, gens));
    auto bd = block_decompose(ps);
    expect_valid(ps, bd);
    // shape predicted by the standard form: 2^{n2} blocks of (2^{n1}, 2^{n3})
    auto sf = canonicalize(ps.pauli);
    for (const auto& b : bd.blocks) {
      EXPECT_EQ(b.d, std::size_t{1} << sf.n1);
      EXPECT_EQ(b.m, std::size_t{1} << sf.n3);
    }
    EXPECT_EQ(bd.blocks.size(), std::size_t{1} << sf.n2);
  }
  // SU2(6) multiplicities: spins 3, 2, 1, 0 with multiplicities 1, 5, 9, 5
  EXPECT_EQ(shape(block_decompose(SymmetrySpec::su2(6))),
            (std::vector<std::pair<std::size_t, std::size_t>>{{1, 5}, {3, 9}, {5, 5}, {7, 1}}));
}

TEST(commutant, trivial_and_custom) {
  auto triv = SymmetrySpec::custom_spec(3, {});
  auto bd = block_decompose(triv);
  ASSERT_EQ(bd.blocks.size(), 1u);
  EXPECT_EQ(bd.blocks[0].d, 1u);
  EXPECT_EQ(bd.blocks[0].m, 8u);
  Rng rng(1);
  DenseMatrix u = haar_symmetric_unitary(bd, rng);
  EXPECT_LT(unitarity_residual(u), 1e-10);
  EXPECT_THROW(SymmetrySpec::custom_spec(1, {oracle::S()}), std::invalid_argument);
  EXPECT_THROW(SymmetrySpec::custom_spec(2, {oracle::X()}), DimensionError);
}

TEST(commutant, trace_moment_counts_match_hook_length_oracle) {
  for (std::size_t a = 0; a <= 6; a++) {
    std::uint64_t prev = 0;
    for (std::size_t m = 1; m <= 7; m++) {
      std::uint64_t v = trace_moment_count(a, m);
      EXPECT_EQ(v, oracle::haar_trace_moment(static_cast<int>(a), static_cast<int>(m))) << a << " " << m;
      EXPECT_GE(v, prev);
      prev = v;
      if (m >= a) {
        std::uint64_t f = 1;
        for (std::size_t k = 2; k <= a; k++) f *= k;
        EXPECT_EQ(v, f);
      }
    }
    EXPECT_EQ(trace_moment_count(a, 1), 1u);
  }
  EXPECT_EQ(trace_moment_count(2, 2), 2u);
  EXPECT_EQ(trace_moment_count(3, 2), 5u);
}

TEST(commutant, trace_moments_match_haar_monte_carlo) {
  Rng rng(19);
  for (std::size_t m : {1u, 2u, 3u}) {
    const int draws = 40000;
    std::vector<double> s(4, 0), s2(4, 0);
    for (int k = 0; k < draws; k++) {
      double v = std::norm(trace(haar_unitary(m, rng)));
      double p = 1;
      for (int a = 1; a <= 3; a++) {
        p *= v;
        s[a] += p;
        s2[a] += p * p;
      }
    }
    for (int a = 1; a <= 3; a++) {
      double mean = s[a] / draws;
      double se = std::sqrt((s2[a] / draws - mean * mean) / draws);
      EXPECT_LT(std::abs(mean - trace_moment_count(a, m)), 5 * se + 1e-12) << "a=" << a << " m=" << m;
    }
  }
}

TEST(commutant, analytic_frame_potential_examples) {
  for (std::size_t t = 1; t <= 6; t++) {
    cpp_int f = 1;
    for (std::size_t k = 2; k <= t; k++) f *= k;
    EXPECT_EQ(analytic_frame_potential(fake_blocks({{1, 64}}), t), f);
  }
  EXPECT_EQ(analytic_frame_potential(fake_blocks({{1, 1}, {1, 4}, {1, 6}, {1, 4}, {1, 1}}), 1), 5);
  EXPECT_EQ(analytic_frame_potential(fake_blocks({{1, 1}, {1, 4}, {1, 6}, {1, 4}, {1, 1}}), 2), 48);
  auto two = fake_blocks({{1, 2}, {1, 2}});
  EXPECT_EQ(analytic_frame_potential(two, 1), 2);
  EXPECT_EQ(analytic_frame_potential(two, 2), 8);
  EXPECT_EQ(analytic_frame_potential(two, 3), 46);
  EXPECT_EQ(analytic_frame_potential(two, 4), 332);
  // SU2(3)
  auto su = fake_blocks({{4, 1}, {2, 2}});
  EXPECT_EQ(analytic_frame_potential(su, 1), 20);
  EXPECT_EQ(analytic_frame_potential(su, 2), 544);
  // R(1,2,3): four (2, 8) blocks give 16^t t! for t <= 8
  auto r = fake_blocks({{2, 8}, {2, 8}, {2, 8}, {2, 8}});
  EXPECT_EQ(analytic_frame_potential(r, 1), 16);
  EXPECT_EQ(analytic_frame_potential(r, 2), 512);
  EXPECT_EQ(analytic_frame_potential(r, 3), 24576);
  EXPECT_EQ(analytic_frame_potential(r, 4), 1572864);
  EXPECT_THROW(analytic_frame_potential(r, 7), std::invalid_argument);
  EXPECT_THROW(analytic_frame_potential(r, 0), std::invalid_argument);
}

TEST(commutant, analytic_t1_is_sum_of_squared_multiplicities) {
  for (auto spec : {SymmetrySpec::u1(5), SymmetrySpec::su2(4), r123()}) {
    auto bd = block_decompose(spec);
    std::size_t s = 0;
    for (const auto& b : bd.blocks) s += b.d * b.d;
    EXPECT_EQ(analytic_frame_potential(bd, 1), s);
  }
}

TEST(commutant, symmetric_haar_unitary_commutes_and_matches_analytic) {
  Rng rng(23);
  for (auto spec : {SymmetrySpec::u1(4), SymmetrySpec::su2(3), SymmetrySpec::pauli_spec(standard_subgroup(0, 1, 1))}) {
    auto bd = block_decompose(spec);
    const auto gens = spec.hermitian_generators();
    const int draws = 20000;
    std::vector<double> s(4, 0), s2(4, 0);
    for (int k = 0; k < draws; k++) {
      DenseMatrix u = haar_symmetric_unitary(bd, rng), v = haar_symmetric_unitary(bd, rng);
      if (k < 5) {
        EXPECT_LT(unitarity_residual(u), 1e-10);
        for (const auto& h : gens) EXPECT_LT(max_abs(commutator(u, h)), 1e-8);
      }
      double x = std::norm(trace_a_bdag(u, v)), p = 1;
      for (int t = 1; t <= 3; t++) {
        p *= x;
        s[t] += p;
        s2[t] += p * p;
      }
    }
    for (int t = 1; t <= 3; t++) {
      double mean = s[t] / draws;
      double se = std::sqrt((s2[t] / draws - mean * mean) / draws);
      double exact = analytic_frame_potential(bd, t).convert_to<double>();
      EXPECT_LT(std::abs(mean - exact), 3 * se) << spec.tag() << " t=" << t << " mean " << mean << " exact " << exact;
    }
  }
}

TEST(commutant, equal_constraints_examples) {
  for (std::size_t n = 1; n <= 4; n++) {
    std::string zs(n, 'Z');
    auto pz = SymmetrySpec::pauli_spec(subgroup_from_generators({P(zs.c_str())}));
    auto group = SymmetrySpec::custom_spec(n, {pauli_matrix(P(zs.c_str()))});
    EXPECT_TRUE(equal_constraints(pz, group));
  }
  auto u1 = SymmetrySpec::u1(2);
  Rng rng(2);
  auto q = pauli_support_of_unitary_group(sample_group_elements(u1, 8, rng));
  EXPECT_EQ(q.rank(), 2u);
  EXPECT_FALSE(equal_constraints(u1, SymmetrySpec::pauli_spec(q)));
  auto full1 = SymmetrySpec::pauli_spec(subgroup_from_generators({P("X"), P("Z")}));
  EXPECT_TRUE(equal_constraints(SymmetrySpec::su2(1), full1));
  EXPECT_THROW(equal_constraints(SymmetrySpec::su2(1), SymmetrySpec::u1(2)), DimensionError);
  EXPECT_EQ(commutant_dimension(SymmetrySpec::u1(4)), 1u + 16 + 36 + 16 + 1);
}
