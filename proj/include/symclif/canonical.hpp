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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "symclif/clifford.hpp"
#include "symclif/gf2.hpp"
#include "symclif/pauli.hpp"

namespace symclif {

// Clifford W with P0 * W Q W^dagger = P0 * R(n1, n2, n3), where R is
// {I,X,Y,Z} on qubits [0, n1), {I,Z} on [n1, n1+n2) and I on the rest.
struct StandardForm {
  CliffordTableau w;
  std::size_t n1 = 0, n2 = 0, n3 = 0;

  std::size_t num_qubits() const { return n1 + n2 + n3; }
  std::size_t a2_begin() const { return n1; }
  std::size_t a3_begin() const { return n1 + n2; }
};

inline PauliSubgroup standard_subgroup(std::size_t n1, std::size_t n2, std::size_t n3) {
  const std::size_t n = n1 + n2 + n3;
  std::vector<PauliOp> gens;
  for (std::size_t q = 0; q < n1; q++) {
    gens.push_back(PauliOp::single(n, q, 'X'));
    gens.push_back(PauliOp::single(n, q, 'Z'));
  }
  for (std::size_t q = n1; q < n1 + n2; q++) gens.push_back(PauliOp::single(n, q, 'Z'));
  return subgroup_from_generators(n, gens);
}

inline PauliSubgroup standard_subgroup(const StandardForm& sf) { return standard_subgroup(sf.n1, sf.n2, sf.n3); }

inline PauliSubgroup conjugate_subgroup(const CliffordTableau& w, const PauliSubgroup& q) {
  if (w.num_qubits() != q.num_qubits()) throw DimensionError("tableau and subgroup qubit counts differ");
  std::vector<BitVector> rows;
  for (const auto& g : q.generators()) rows.push_back(w.conjugate(g).to_vec());
  return PauliSubgroup::from_vectors(q.num_qubits(), std::move(rows));
}

namespace detail {

struct Gate {
  enum Kind { kH, kSdg, kCnot, kCz, kSwap } kind;
  std::size_t a = 0, b = 0;
};

inline void conj_gate(PauliOp& p, const Gate& g) {
  switch (g.kind) {
    case Gate::kH: conj::h(p, g.a); break;
    case Gate::kSdg: conj::sdg(p, g.a); break;
    case Gate::kCnot: conj::cnot(p, g.a, g.b); break;
    case Gate::kCz: conj::cz(p, g.a, g.b); break;
    case Gate::kSwap: conj::swap(p, g.a, g.b); break;
  }
}

inline void prepend_gate(CliffordTableau& w, const Gate& g) {
  switch (g.kind) {
    case Gate::kH: w.prepend_h(g.a); break;
    case Gate::kSdg: w.prepend_sdg(g.a); break;
    case Gate::kCnot: w.prepend_cnot(g.a, g.b); break;
    case Gate::kCz: w.prepend_cz(g.a, g.b); break;
    case Gate::kSwap: w.prepend_swap(g.a, g.b); break;
  }
}

inline PauliOp conj_gates(PauliOp p, const std::vector<Gate>& gs) {
  for (const auto& g : gs) conj_gate(p, g);
  return p;
}

// Gates (applied in order) mapping the part of p on qubits [first, n) to Z_first.
// Qubits below `first` are untouched and must carry identity in p.
inline std::vector<Gate> pauli_to_z_gates(const PauliOp& p, std::size_t first) {
  const std::size_t n = p.num_qubits();
  std::vector<Gate> gs;
  std::vector<std::size_t> support;
  for (std::size_t q = first; q < n; q++) {
    bool x = p.xbit(q), z = p.zbit(q);
    if (x && z) gs.push_back({Gate::kSdg, q});
    if (x) gs.push_back({Gate::kH, q});
    if (x || z) support.push_back(q);
  }
  if (support.empty()) throw std::invalid_argument("Pauli is proportional to the identity on the active qubits");
  const std::size_t a = support[0];
  for (std::size_t k = 1; k < support.size(); k++) gs.push_back({Gate::kCnot, support[k], a});
  if (a != first) gs.push_back({Gate::kSwap, first, a});
  return gs;
}

// Gates mapping p to Z_first and q to X_first (mod phase) acting on [first, n).
inline std::vector<Gate> pair_to_zx_gates(const PauliOp& p, const PauliOp& q, std::size_t first) {
  if (commutes(p, q)) throw std::invalid_argument("pair_to_zx needs anticommuting Paulis");
  std::vector<Gate> gs = pauli_to_z_gates(p, first);
  PauliOp q1 = conj_gates(q, gs);
  if (q1.zbit(first)) {
    gs.push_back({Gate::kSdg, first});
    conj::sdg(q1, first);
  }
  q1.set_bits(first, false, false);
  bool rest = false;
  for (std::size_t k = first + 1; k < q1.num_qubits(); k++) rest |= q1.xbit(k) || q1.zbit(k);
  if (rest) {
    auto g2 = pauli_to_z_gates(q1, first + 1);
    gs.insert(gs.end(), g2.begin(), g2.end());
    gs.push_back({Gate::kCz, first, first + 1});
  }
  return gs;
}

inline CliffordTableau tableau_of(std::size_t n, const std::vector<Gate>& gs) {
  CliffordTableau w(n);
  for (const auto& g : gs) prepend_gate(w, g);
  return w;
}

}  // namespace detail

// W with W P W^dagger = +-Z on qubit 0, built from S^dagger, H, CNOT and SWAP.
inline CliffordTableau pauli_to_z(const PauliOp& p) {
  return detail::tableau_of(p.num_qubits(), detail::pauli_to_z_gates(p, 0));
}

// W with W P W^dagger = +-Z_0 and W Q W^dagger = +-X_0 for anticommuting P, Q.
inline CliffordTableau pair_to_zx(const PauliOp& p, const PauliOp& q) {
  check_same_n(p, q);
  return detail::tableau_of(p.num_qubits(), detail::pair_to_zx_gates(p, q, 0));
}

// Follows the induction: anticommuting pairs are moved to qubits 0, 1, ... first
// (block A1), then the remaining commuting generators to single Z's (block A2).
// Ties are broken by the lowest RREF pivot.
inline StandardForm canonicalize(const PauliSubgroup& q) {
  const std::size_t n = q.num_qubits();
  StandardForm sf;
  sf.w = CliffordTableau(n);
  std::vector<BitVector> rows = q.rows();
  std::size_t k = 0;

  auto apply = [&](const std::vector<detail::Gate>& gs) {
    for (const auto& g : gs) detail::prepend_gate(sf.w, g);
    for (auto& r : rows) r = detail::conj_gates(PauliOp::from_vec(r), gs).to_vec();
  };
  auto clear_qubit = [&](std::size_t qb) {
    for (auto& r : rows) {
      r.set(qb, false);
      r.set(n + qb, false);
    }
  };

  while (true) {
    gf2::rref(rows);
    std::size_t ia = rows.size(), ib = rows.size();
    for (std::size_t i = 0; i < rows.size() && ia == rows.size(); i++)
      for (std::size_t j = 0; j < rows.size(); j++)
        if (symplectic_product(rows[i], rows[j])) {
          ia = i;
          ib = j;
          break;
        }
    if (ia == rows.size()) break;
    PauliOp a = PauliOp::from_vec(rows[ia]), b = PauliOp::from_vec(rows[ib]);
    apply(detail::pair_to_zx_gates(a, b, k));
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(std::max(ia, ib)));
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(std::min(ia, ib)));
    clear_qubit(k);
    k++;
    sf.n1++;
  }
  while (true) {
    gf2::rref(rows);
    if (rows.empty()) break;
    apply(detail::pauli_to_z_gates(PauliOp::from_vec(rows[0]), k));
    rows.erase(rows.begin());
    for (const auto& r : rows)
      if (r.get(k)) throw std::logic_error("canonicalize: commuting generator has X on a reduced qubit");
    clear_qubit(k);
    k++;
    sf.n2++;
  }
  sf.n3 = n - k;
  return sf;
}

}  // namespace symclif
