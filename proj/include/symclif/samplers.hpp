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

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "symclif/canonical.hpp"
#include "symclif/clifford.hpp"
#include "symclif/pauli.hpp"

namespace symclif {

using BigInt = boost::multiprecision::cpp_int;

// |C_n / U_0| = 2^{n^2 + 2n} prod_{j=1}^{n} (4^j - 1)
inline BigInt clifford_group_size(std::size_t n) {
  BigInt s = 1;
  s <<= static_cast<unsigned>(n * n + 2 * n);
  for (std::size_t j = 1; j <= n; j++) s *= (BigInt(1) << static_cast<unsigned>(2 * j)) - 1;
  return s;
}

// |C_{n,Q} / U_0| = 4^{n2} 2^{n2(n2-1)/2} |C_{n3}/U_0| 4^{n2 n3}
inline BigInt group_size(const StandardForm& sf) {
  BigInt s = clifford_group_size(sf.n3);
  s <<= static_cast<unsigned>(2 * sf.n2 + sf.n2 * (sf.n2 - (sf.n2 ? 1 : 0)) / 2 + 2 * sf.n2 * sf.n3);
  return s;
}

// One element of the Pauli-symmetric Clifford group in the parameterization
// W^dagger C_{n2}(P_{n2}) ... C_1(P_1) V (prod CZ^nu) (prod S^mu) W.
struct SymCliffordElement {
  StandardForm sf;
  std::vector<int> mu;       // n2 values in 0..3
  std::vector<bool> nu;      // pairs (j, k), j < k, row-major
  CliffordTableau v;         // on n3 qubits
  std::vector<PauliOp> p;    // n2 Hermitian Paulis on n3 qubits, sign +

  static std::size_t pair_index(std::size_t j, std::size_t k, std::size_t n2) {
    return j * n2 - j * (j + 1) / 2 + (k - j - 1);
  }

  // The same operator in the standard frame (without W).
  CliffordTableau to_standard_tableau() const {
    const std::size_t n = sf.num_qubits(), a2 = sf.a2_begin(), a3 = sf.a3_begin();
    CliffordTableau t(n);
    for (std::size_t j = 0; j < sf.n2; j++)
      for (int r = 0; r < mu[j]; r++) t.prepend_s(a2 + j);
    for (std::size_t j = 0; j < sf.n2; j++)
      for (std::size_t k = j + 1; k < sf.n2; k++)
        if (nu[pair_index(j, k, sf.n2)]) t.prepend_cz(a2 + j, a2 + k);
    if (sf.n3) t = compose(embed(v, n, a3), t);
    for (std::size_t j = 0; j < sf.n2; j++)
      if (!p[j].is_identity_up_to_phase()) t = compose(controlled_pauli(a2 + j, embed_pauli(p[j], n, a3)), t);
    return t;
  }

  CliffordTableau to_tableau() const {
    return compose(inverse(sf.w), compose(to_standard_tableau(), sf.w));
  }

  bool same_parameters(const SymCliffordElement& o) const { return mu == o.mu && nu == o.nu && v == o.v && p == o.p; }
};

// True iff U fixes every basis generator of q exactly (sign +).
inline bool is_symmetric(const CliffordTableau& u, const PauliSubgroup& q) {
  if (u.num_qubits() != q.num_qubits()) throw DimensionError("tableau and subgroup qubit counts differ");
  for (const auto& g : q.generators())
    if (u.conjugate(g) != g) return false;
  return true;
}

namespace detail {

inline PauliOp pauli_from_index(std::uint64_t idx, std::size_t n) {
  BitVector v(2 * n);
  for (std::size_t i = 0; i < 2 * n; i++) v.set(i, (idx >> i) & 1);
  return PauliOp::from_vec(v);
}

}  // namespace detail

inline SymCliffordElement sample_pauli_symmetric(const StandardForm& sf, Rng& rng) {
  SymCliffordElement e{sf, {}, {}, CliffordTableau(sf.n3), {}};
  for (std::size_t j = 0; j < sf.n2; j++) e.mu.push_back(static_cast<int>(rng() & 3));
  for (std::size_t k = 0; k < sf.n2 * (sf.n2 ? sf.n2 - 1 : 0) / 2; k++) e.nu.push_back(rng() & 1);
  e.v = random_clifford(sf.n3, rng);
  for (std::size_t j = 0; j < sf.n2; j++) {
    BitVector b = detail::random_bits(2 * sf.n3, rng);
    e.p.push_back(PauliOp::from_vec(b));
  }
  return e;
}

// Calls f on every element, lexicographic in (mu, nu, V index, P). Needs n3 <= 2.
inline void enumerate_pauli_symmetric(const StandardForm& sf, const BigInt& cap,
                                      const std::function<void(const SymCliffordElement&)>& f) {
  BigInt size = group_size(sf);
  if (size > cap) throw ResourceGuardError("group size " + size.str() + " exceeds cap " + cap.str());
  const std::size_t n2 = sf.n2, npairs = n2 * (n2 ? n2 - 1 : 0) / 2;
  const auto vs = enumerate_cliffords(sf.n3);
  const std::uint64_t np = std::uint64_t{1} << (2 * sf.n3);
  SymCliffordElement e{sf, std::vector<int>(n2, 0), std::vector<bool>(npairs, false), CliffordTableau(sf.n3),
                       std::vector<PauliOp>(n2, PauliOp(sf.n3))};
  const std::uint64_t mu_count = std::uint64_t{1} << (2 * n2), nu_count = std::uint64_t{1} << npairs;
  std::uint64_t p_count = 1;
  for (std::size_t j = 0; j < n2; j++) p_count *= np;
  for (std::uint64_t m = 0; m < mu_count; m++) {
    for (std::size_t j = 0; j < n2; j++) e.mu[j] = static_cast<int>((m >> (2 * (n2 - 1 - j))) & 3);
    for (std::uint64_t b = 0; b < nu_count; b++) {
      for (std::size_t k = 0; k < npairs; k++) e.nu[k] = (b >> (npairs - 1 - k)) & 1;
      for (const auto& v : vs) {
        e.v = v;
        for (std::uint64_t pi = 0; pi < p_count; pi++) {
          std::uint64_t r = pi;
          for (std::size_t j = n2; j-- > 0;) {
            e.p[j] = detail::pauli_from_index(r % np, sf.n3);
            r /= np;
          }
          f(e);
        }
      }
    }
  }
}

inline std::vector<SymCliffordElement> enumerate_pauli_symmetric(const StandardForm& sf, const BigInt& cap) {
  std::vector<SymCliffordElement> out;
  enumerate_pauli_symmetric(sf, cap, [&](const SymCliffordElement& e) { out.push_back(e); });
  return out;
}

// Recovers the unique parameters of a symmetric U. In the standard frame the
// images of A3 generators restricted to A3 give V, the A3 part of the image of
// X_a (a in A2) gives P_a; stripping the controlled Paulis and V leaves
// CZ^nu S^mu whose X_a images give mu_a and nu directly.
inline SymCliffordElement decompose(const CliffordTableau& u, const StandardForm& sf) {
  const std::size_t n = sf.num_qubits(), a2 = sf.a2_begin(), a3 = sf.a3_begin();
  if (u.num_qubits() != n) throw DimensionError("tableau and standard form qubit counts differ");
  const CliffordTableau ur = compose(sf.w, compose(u, inverse(sf.w)));
  if (!is_symmetric(ur, standard_subgroup(sf))) throw std::invalid_argument("Clifford is not symmetric");

  SymCliffordElement e{sf, std::vector<int>(sf.n2, 0), std::vector<bool>(sf.n2 * (sf.n2 ? sf.n2 - 1 : 0) / 2),
                       CliffordTableau(sf.n3), {}};
  auto signed_restriction = [&](const PauliOp& img) {
    for (std::size_t q = 0; q < a3; q++)
      if (img.xbit(q)) throw std::logic_error("decompose: A3 image has X support outside A3");
    PauliOp r = restrict_pauli(img, a3, sf.n3);
    r.add_phase(img.sign_exponent());
    return r;
  };
  if (sf.n3) {
    std::vector<PauliOp> xs, zs;
    for (std::size_t k = 0; k < sf.n3; k++) {
      xs.push_back(signed_restriction(ur.x_image(a3 + k)));
      zs.push_back(signed_restriction(ur.z_image(a3 + k)));
    }
    e.v = CliffordTableau::from_images(std::move(xs), std::move(zs));
  }
  for (std::size_t j = 0; j < sf.n2; j++) e.p.push_back(restrict_pauli(ur.x_image(a2 + j), a3, sf.n3));

  CliffordTableau g = ur;
  for (std::size_t j = sf.n2; j-- > 0;)
    if (!e.p[j].is_identity_up_to_phase()) g = compose(controlled_pauli(a2 + j, embed_pauli(e.p[j], n, a3)), g);
  // g = C_1 ... C_{n2} U, and C_j is its own inverse; now strip V.
  if (sf.n3) g = compose(embed(inverse(e.v), n, a3), g);
  for (std::size_t j = 0; j < sf.n2; j++) {
    const PauliOp& img = g.x_image(a2 + j);
    PauliOp local(1);
    local.set_bits(0, img.xbit(a2 + j), img.zbit(a2 + j));
    unsigned s = img.sign_exponent();
    if (!local.xbit(0)) throw std::logic_error("decompose: S/CZ layer lost an X");
    bool y = local.zbit(0);
    if (s == 0)
      e.mu[j] = y ? 1 : 0;
    else if (s == 2)
      e.mu[j] = y ? 3 : 2;
    else
      throw std::logic_error("decompose: non-Hermitian image");
    for (std::size_t k = j + 1; k < sf.n2; k++) e.nu[SymCliffordElement::pair_index(j, k, sf.n2)] = img.zbit(a2 + k);
  }
  if (e.to_tableau() != u) throw std::logic_error("decompose: round trip failed");
  return e;
}

// ---- U(1) and SU(2) symmetric Clifford groups ----

inline BigInt u1_size(std::size_t n) {
  BigInt s = 1;
  s <<= static_cast<unsigned>(n * (n ? n - 1 : 0) / 2 + 2 * n);
  for (std::size_t k = 2; k <= n; k++) s *= k;
  return s;
}

inline BigInt su2_size(std::size_t n) {
  BigInt s = 1;
  for (std::size_t k = 2; k <= n; k++) s *= k;
  return s;
}

namespace detail {

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  for (std::size_t i = n; i > 1; i--) {
    std::uniform_int_distribution<std::size_t> d(0, i - 1);
    std::swap(s[i - 1], s[d(rng)]);
  }
  return s;
}

// (prod CZ^nu)(prod S^mu) K_sigma
inline CliffordTableau u1_element(const std::vector<std::size_t>& sigma, const std::vector<int>& mu,
                                  const std::vector<bool>& nu) {
  const std::size_t n = sigma.size();
  CliffordTableau t = permutation(sigma);
  for (std::size_t j = 0; j < n; j++)
    for (int r = 0; r < mu[j]; r++) t.prepend_s(j);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; j++)
    for (std::size_t k = j + 1; k < n; k++)
      if (nu[idx++]) t.prepend_cz(j, k);
  return t;
}

}  // namespace detail

inline CliffordTableau sample_u1(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_u1 needs n >= 1");
  auto sigma = detail::random_permutation(n, rng);
  std::vector<int> mu;
  for (std::size_t j = 0; j < n; j++) mu.push_back(static_cast<int>(rng() & 3));
  std::vector<bool> nu;
  for (std::size_t k = 0; k < n * (n - 1) / 2; k++) nu.push_back(rng() & 1);
  return detail::u1_element(sigma, mu, nu);
}

inline CliffordTableau sample_su2(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_su2 needs n >= 1");
  return permutation(detail::random_permutation(n, rng));
}

// Lexicographic in (mu, nu, sigma) with sigma in std::next_permutation order.
inline void enumerate_u1(std::size_t n, const BigInt& cap, const std::function<void(const CliffordTableau&)>& f) {
  if (n == 0) throw std::invalid_argument("enumerate_u1 needs n >= 1");
  BigInt size = u1_size(n);
  if (size > cap) throw ResourceGuardError("group size " + size.str() + " exceeds cap " + cap.str());
  const std::size_t npairs = n * (n - 1) / 2;
  std::vector<int> mu(n);
  std::vector<bool> nu(npairs);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (2 * n)); m++) {
    for (std::size_t j = 0; j < n; j++) mu[j] = static_cast<int>((m >> (2 * (n - 1 - j))) & 3);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << npairs); b++) {
      for (std::size_t k = 0; k < npairs; k++) nu[k] = (b >> (npairs - 1 - k)) & 1;
      std::vector<std::size_t> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        f(detail::u1_element(sigma, mu, nu));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
}

inline void enumerate_su2(std::size_t n, const BigInt& cap, const std::function<void(const CliffordTableau&)>& f) {
  if (n == 0) throw std::invalid_argument("enumerate_su2 needs n >= 1");
  BigInt size = su2_size(n);
  if (size > cap) throw ResourceGuardError("group size " + size.str() + " exceeds cap " + cap.str());
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    f(permutation(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

}  // namespace symclif
