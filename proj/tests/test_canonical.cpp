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

#include "symclif/canonical.hpp"

using namespace symclif;

namespace {

PauliOp P(const char* s) { return PauliOp::from_string(s); }

PauliOp random_pauli(std::size_t n, Rng& rng) {
  BitVector v(2 * n);
  for (std::size_t i = 0; i < 2 * n; i++) v.set(i, rng() & 1);
  return PauliOp::from_vec(v);
}

PauliSubgroup random_subgroup(std::size_t n, std::size_t gens, Rng& rng) {
  std::vector<PauliOp> g;
  for (std::size_t k = 0; k < gens; k++) g.push_back(random_pauli(n, rng));
  return subgroup_from_generators(n, g);
}

std::size_t gram_rank(const PauliSubgroup& q) { return gf2::rank(symplectic_gram(q)); }

}  // namespace

TEST(canonical, pauli_to_z_examples) {
  EXPECT_EQ(pauli_to_z(P("Z")), CliffordTableau(1));
  EXPECT_EQ(pauli_to_z(P("X")), hadamard(1, 0));
  EXPECT_EQ(pauli_to_z(P("YZ")).conjugate(P("YZ")).unsigned_part(), P("ZI"));
  EXPECT_THROW(pauli_to_z(P("-II")), std::invalid_argument);
}

TEST(canonical, pauli_to_z_random) {
  Rng rng(1);
  for (int k = 0; k < 500; k++) {
    const std::size_t n = 1 + rng() % 8;
    PauliOp p = random_pauli(n, rng);
    if (p.is_identity_up_to_phase()) continue;
    PauliOp img = pauli_to_z(p).conjugate(p);
    EXPECT_EQ(img.unsigned_part(), PauliOp::single(n, 0, 'Z')) << p.str();
  }
}

TEST(canonical, pair_to_zx_examples_and_random) {
  EXPECT_EQ(pair_to_zx(P("Z"), P("X")), CliffordTableau(1));
  auto w = pair_to_zx(P("X"), P("Z"));
  EXPECT_EQ(w.conjugate(P("X")).unsigned_part(), P("Z"));
  EXPECT_EQ(w.conjugate(P("Z")).unsigned_part(), P("X"));
  auto w2 = pair_to_zx(P("XX"), P("ZI"));
  EXPECT_EQ(w2.conjugate(P("XX")).unsigned_part(), P("ZI"));
  EXPECT_EQ(w2.conjugate(P("ZI")).unsigned_part(), P("XI"));
  EXPECT_THROW(pair_to_zx(P("XX"), P("ZZ")), std::invalid_argument);

  Rng rng(2);
  for (int k = 0; k < 500; k++) {
    const std::size_t n = 1 + rng() % 8;
    PauliOp p = random_pauli(n, rng), q = random_pauli(n, rng);
    if (commutes(p, q)) continue;
    auto t = pair_to_zx(p, q);
    EXPECT_EQ(t.conjugate(p).unsigned_part(), PauliOp::single(n, 0, 'Z'));
    EXPECT_EQ(t.conjugate(q).unsigned_part(), PauliOp::single(n, 0, 'X'));
  }
}

TEST(canonical, four_qubit_example_and_witness) {
  auto q = subgroup_from_generators({P("XXXX"), P("YYYY"), P("ZZZZ")});
  auto sf = canonicalize(q);
  EXPECT_EQ(sf.n1, 0u);
  EXPECT_EQ(sf.n2, 2u);
  EXPECT_EQ(sf.n3, 2u);
  EXPECT_EQ(conjugate_subgroup(sf.w, q), standard_subgroup(sf));
  // W = H_1 CNOT_42 CNOT_13 CNOT_34 CNOT_12 (1-based, rightmost acts first)
  CliffordTableau w(4);
  w.prepend_cnot(0, 1);
  w.prepend_cnot(2, 3);
  w.prepend_cnot(0, 2);
  w.prepend_cnot(3, 1);
  w.prepend_h(0);
  EXPECT_EQ(conjugate_subgroup(w, q), standard_subgroup(0, 2, 2));
}

TEST(canonical, simple_examples) {
  for (std::size_t n = 1; n <= 5; n++) {
    auto q = subgroup_from_generators({PauliOp::single(n, 0, 'Z')});
    auto sf = canonicalize(q);
    EXPECT_EQ(sf.n1, 0u);
    EXPECT_EQ(sf.n2, 1u);
    EXPECT_EQ(sf.n3, n - 1);
    EXPECT_EQ(sf.w, CliffordTableau(n));
    std::vector<PauliOp> all;
    for (std::size_t j = 0; j < n; j++) {
      all.push_back(PauliOp::single(n, j, 'X'));
      all.push_back(PauliOp::single(n, j, 'Z'));
    }
    auto full = canonicalize(subgroup_from_generators(n, all));
    EXPECT_EQ(full.n1, n);
    EXPECT_EQ(full.n2 + full.n3, 0u);
    auto empty = canonicalize(PauliSubgroup(n));
    EXPECT_EQ(empty.n3, n);
    EXPECT_EQ(empty.w, CliffordTableau(n));
  }
}

TEST(canonical, conjugate_subgroup_examples) {
  auto q = subgroup_from_generators({P("ZI")});
  EXPECT_EQ(conjugate_subgroup(CliffordTableau(2), q), q);
  EXPECT_EQ(conjugate_subgroup(hadamard(2, 0), q), subgroup_from_generators({P("XI")}));
  Rng rng(3);
  auto w = random_clifford(2, rng);
  EXPECT_EQ(conjugate_subgroup(inverse(w), conjugate_subgroup(w, q)), q);
  EXPECT_THROW(conjugate_subgroup(CliffordTableau(3), q), DimensionError);
}

TEST(canonical, random_subgroups_reach_standard_form) {
  Rng rng(42);
  for (int k = 0; k < 500; k++) {
    const std::size_t n = 1 + rng() % 8;
    auto q = random_subgroup(n, rng() % (2 * n + 1), rng);
    auto sf = canonicalize(q);
    EXPECT_EQ(sf.num_qubits(), n);
    EXPECT_TRUE(sf.w.is_valid());
    EXPECT_EQ(conjugate_subgroup(sf.w, q), standard_subgroup(sf));
    EXPECT_EQ(2 * sf.n1 + sf.n2, q.rank());
    EXPECT_EQ(2 * sf.n1, gram_rank(q));
  }
}

TEST(canonical, dimensions_are_basis_independent_and_idempotent) {
  Rng rng(43);
  for (int k = 0; k < 200; k++) {
    const std::size_t n = 1 + rng() % 7;
    auto q = random_subgroup(n, rng() % (2 * n + 1), rng);
    // a different generating set: random products of the basis, shuffled
    auto gens = q.generators();
    for (std::size_t i = 0; i + 1 < gens.size(); i++)
      if (rng() & 1) gens[i] = pauli_mul(gens[i], gens[i + 1]);
    std::reverse(gens.begin(), gens.end());
    auto q2 = subgroup_from_generators(n, gens);
    ASSERT_EQ(q2, q);
    auto a = canonicalize(q);
    auto b = canonicalize(standard_subgroup(a));
    EXPECT_EQ(a.n1, b.n1);
    EXPECT_EQ(a.n2, b.n2);
    // conjugating q by a random Clifford preserves the dimensions
    auto c = canonicalize(conjugate_subgroup(random_clifford(n, rng), q));
    EXPECT_EQ(a.n1, c.n1);
    EXPECT_EQ(a.n2, c.n2);
  }
}
