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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symclif/errors.hpp"
#include "symclif/gf2.hpp"
#include "symclif/linalg.hpp"

namespace symclif {

// i^phase * prod_j X_j^{x_j} Z_j^{z_j}. Qubit 0 is the leftmost character of the
// string form and the most significant bit of dense basis indices.
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n) : x_(n), z_(n) {}
  PauliOp(BitVector x, BitVector z, unsigned phase) : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
    if (x_.size() != z_.size()) throw DimensionError("x and z lengths differ");
  }

  // Optional sign prefix (+, -, +i, -i) followed by I/X/Y/Z characters.
  static PauliOp from_string(std::string_view s) {
    unsigned sign = 0;
    if (s.starts_with("+i")) {
      sign = 1;
      s.remove_prefix(2);
    } else if (s.starts_with("-i")) {
      sign = 3;
      s.remove_prefix(2);
    } else if (s.starts_with("+")) {
      s.remove_prefix(1);
    } else if (s.starts_with("-")) {
      sign = 2;
      s.remove_prefix(1);
    }
    PauliOp p(s.size());
    for (std::size_t q = 0; q < s.size(); q++) {
      switch (s[q]) {
        case 'I': break;
        case 'X': p.x_.set(q, true); break;
        case 'Z': p.z_.set(q, true); break;
        case 'Y':
          p.x_.set(q, true);
          p.z_.set(q, true);
          break;
        default: throw ParseError("invalid Pauli character '" + std::string(1, s[q]) + "'");
      }
    }
    p.phase_ = (sign + static_cast<unsigned>(p.num_y())) & 3;
    return p;
  }

  // Single-qubit Pauli ('X', 'Y' or 'Z') on qubit q, sign +.
  static PauliOp single(std::size_t n, std::size_t q, char c) {
    if (q >= n) throw DimensionError("qubit index out of range");
    std::string s(n, 'I');
    s[q] = c;
    return from_string(s);
  }

  // Hermitian Pauli with sign + for a (x|z) vector of length 2n.
  static PauliOp from_vec(const BitVector& v) {
    const std::size_t n = v.size() / 2;
    PauliOp p(n);
    for (std::size_t q = 0; q < n; q++) {
      p.x_.set(q, v.get(q));
      p.z_.set(q, v.get(n + q));
    }
    p.phase_ = static_cast<unsigned>(p.num_y() & 3);
    return p;
  }

  BitVector to_vec() const {
    const std::size_t n = num_qubits();
    BitVector v(2 * n);
    for (std::size_t q = 0; q < n; q++) {
      v.set(q, x_.get(q));
      v.set(n + q, z_.get(q));
    }
    return v;
  }

  std::size_t num_qubits() const { return x_.size(); }
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  unsigned phase() const { return phase_; }
  void set_phase(unsigned p) { phase_ = p & 3; }
  void add_phase(unsigned p) { phase_ = (phase_ + p) & 3; }
  bool xbit(std::size_t q) const { return x_.get(q); }
  bool zbit(std::size_t q) const { return z_.get(q); }
  void set_bits(std::size_t q, bool xb, bool zb) {
    x_.set(q, xb);
    z_.set(q, zb);
  }

  std::size_t num_y() const { return BitVector::and_popcount(x_, z_); }
  // Exponent s with this = i^s * (Hermitian Pauli with the same bits).
  unsigned sign_exponent() const { return (phase_ + 4 - static_cast<unsigned>(num_y() & 3)) & 3; }
  bool is_hermitian() const { return (sign_exponent() & 1) == 0; }
  bool is_identity_up_to_phase() const { return !x_.any() && !z_.any(); }
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t q = 0; q < num_qubits(); q++) w += (x_.get(q) || z_.get(q));
    return w;
  }
  // Same bits, sign +.
  PauliOp unsigned_part() const {
    PauliOp p = *this;
    p.phase_ = static_cast<unsigned>(num_y() & 3);
    return p;
  }

  char at(std::size_t q) const {
    bool xb = x_.get(q), zb = z_.get(q);
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }

  // Always carries an explicit sign prefix: "+XZ", "-Y", "+iX", "-iX".
  std::string str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[sign_exponent()];
    for (std::size_t q = 0; q < num_qubits(); q++) s += at(q);
    return s;
  }
  // Letters only.
  std::string letters() const { return str().substr(sign_exponent() & 1 ? 2 : 1); }

  bool operator==(const PauliOp& o) const = default;

 private:
  BitVector x_, z_;
  unsigned phase_ = 0;
};

inline void check_same_n(const PauliOp& a, const PauliOp& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("Pauli qubit counts differ");
}

inline PauliOp pauli_mul(const PauliOp& a, const PauliOp& b) {
  check_same_n(a, b);
  unsigned ph = a.phase() + b.phase() + 2 * static_cast<unsigned>(BitVector::and_popcount(a.z(), b.x()) & 1);
  return PauliOp(a.x() ^ b.x(), a.z() ^ b.z(), ph);
}

inline bool commutes(const PauliOp& a, const PauliOp& b) {
  check_same_n(a, b);
  return BitVector::dot(a.x(), b.z()) == BitVector::dot(a.z(), b.x());
}

// Symplectic form on (x|z) vectors of length 2n: true when the Paulis anticommute.
inline bool symplectic_product(const BitVector& a, const BitVector& b) {
  const std::size_t n = a.size() / 2;
  bool s = false;
  for (std::size_t q = 0; q < n; q++) s ^= (a.get(q) && b.get(n + q)) != (a.get(n + q) && b.get(q));
  return s;
}

namespace detail {

inline std::uint64_t mask_of(const BitVector& bits) {
  const std::size_t n = bits.size();
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < n; q++)
    if (bits.get(q)) m |= std::uint64_t{1} << (n - 1 - q);
  return m;
}

inline cplx i_pow(unsigned k) {
  static const cplx v[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  return v[k & 3];
}

}  // namespace detail

inline DenseMatrix pauli_matrix(const PauliOp& p) {
  const std::size_t n = p.num_qubits();
  if (n > 12) throw ResourceGuardError("dense Pauli matrix limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << n;
  const std::uint64_t xm = detail::mask_of(p.x()), zm = detail::mask_of(p.z());
  DenseMatrix m(dim, dim);
  const cplx base = detail::i_pow(p.phase());
  for (std::size_t k = 0; k < dim; k++) {
    double s = (std::popcount(zm & k) & 1) ? -1.0 : 1.0;
    m(k ^ xm, k) = base * s;
  }
  return m;
}

// Subgroup of the Pauli group modulo phase, stored as a canonical RREF basis of
// (x|z) vectors. Column order: x bits of qubits 0..n-1, then z bits.
class PauliSubgroup {
 public:
  PauliSubgroup() = default;
  explicit PauliSubgroup(std::size_t n) : n_(n) {}

  static PauliSubgroup from_vectors(std::size_t n, std::vector<BitVector> rows) {
    for (const auto& r : rows)
      if (r.size() != 2 * n) throw DimensionError("generator length mismatch");
    PauliSubgroup g(n);
    g.pivots_ = gf2::rref(rows);
    g.rows_ = std::move(rows);
    return g;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<BitVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const BitVector& v) const { return !gf2::reduce(rows_, pivots_, v).any(); }
  bool contains(const PauliOp& p) const {
    if (p.num_qubits() != n_) throw DimensionError("Pauli qubit count differs from subgroup");
    return contains(p.to_vec());
  }

  // Basis as Hermitian Paulis with sign +.
  std::vector<PauliOp> generators() const {
    std::vector<PauliOp> out;
    for (const auto& r : rows_) out.push_back(PauliOp::from_vec(r));
    return out;
  }
  std::vector<std::string> generator_strings() const {
    std::vector<std::string> out;
    for (const auto& g : generators()) out.push_back(g.letters());
    return out;
  }

  bool operator==(const PauliSubgroup& o) const { return n_ == o.n_ && rows_ == o.rows_; }

 private:
  std::size_t n_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

inline PauliSubgroup subgroup_from_generators(std::size_t n, const std::vector<PauliOp>& gens) {
  std::vector<BitVector> rows;
  for (const auto& g : gens) {
    if (g.num_qubits() != n) throw DimensionError("generator qubit count mismatch");
    rows.push_back(g.to_vec());
  }
  return PauliSubgroup::from_vectors(n, std::move(rows));
}

inline PauliSubgroup subgroup_from_generators(const std::vector<PauliOp>& gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator list needs an explicit qubit count");
  return subgroup_from_generators(gens[0].num_qubits(), gens);
}

// Symplectic Gram matrix of the basis.
inline std::vector<BitVector> symplectic_gram(const PauliSubgroup& q) {
  const auto& r = q.rows();
  std::vector<BitVector> g(r.size(), BitVector(r.size()));
  for (std::size_t i = 0; i < r.size(); i++)
    for (std::size_t j = 0; j < r.size(); j++) g[i].set(j, symplectic_product(r[i], r[j]));
  return g;
}

// tr(P G) for an unsigned Hermitian Pauli given by masks, in O(dim).
inline cplx pauli_trace_product(std::uint64_t xm, std::uint64_t zm, const DenseMatrix& g) {
  const std::size_t dim = g.rows();
  const unsigned ny = static_cast<unsigned>(std::popcount(xm & zm));
  cplx t = 0;
  for (std::size_t j = 0; j < dim; j++) {
    cplx v = g(j, j ^ xm);
    t += (std::popcount(zm & j) & 1) ? -v : v;
  }
  return detail::i_pow(ny) * t;
}

// Subgroup generated by every unsigned Pauli with |tr(P G)| > tol * ||G||_F for some G.
inline PauliSubgroup pauli_support_of_unitary_group(const std::vector<DenseMatrix>& gens, double tol = 1e-10) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  const std::size_t n = qubits_of_dim(gens[0].rows());
  if (n > 10) throw ResourceGuardError("Pauli support limited to 10 qubits");
  std::vector<BitVector> rows;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (const auto& g : gens) {
    if (!g.is_square() || g.rows() != dim) throw DimensionError("generator dimension mismatch");
    const double thr = tol * frobenius_norm(g);
    for (std::uint64_t xm = 0; xm < dim; xm++)
      for (std::uint64_t zm = 0; zm < dim; zm++) {
        if (std::abs(pauli_trace_product(xm, zm, g)) <= thr) continue;
        BitVector v(2 * n);
        for (std::size_t q = 0; q < n; q++) {
          v.set(q, (xm >> (n - 1 - q)) & 1);
          v.set(n + q, (zm >> (n - 1 - q)) & 1);
        }
        rows.push_back(std::move(v));
      }
    // keep the working set small
    gf2::rref(rows);
  }
  return PauliSubgroup::from_vectors(n, std::move(rows));
}

// Exact path when the generators are Pauli operators.
inline PauliSubgroup pauli_support_of_unitary_group(std::size_t n, const std::vector<PauliOp>& gens) {
  std::vector<PauliOp> nontrivial;
  for (const auto& g : gens)
    if (!g.is_identity_up_to_phase()) nontrivial.push_back(g);
  return subgroup_from_generators(n, nontrivial);
}

}  // namespace symclif
