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
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symclif/errors.hpp"
#include "symclif/gf2.hpp"
#include "symclif/linalg.hpp"
#include "symclif/pauli.hpp"

namespace symclif {

// In-place conjugation P -> G P G^dagger by elementary gates.
namespace conj {

inline void check_qubit(const PauliOp& p, std::size_t q) {
  if (q >= p.num_qubits()) throw DimensionError("qubit index out of range");
}

inline void h(PauliOp& p, std::size_t q) {
  check_qubit(p, q);
  bool x = p.xbit(q), z = p.zbit(q);
  if (x && z) p.add_phase(2);
  p.set_bits(q, z, x);
}

inline void s(PauliOp& p, std::size_t q) {
  check_qubit(p, q);
  bool x = p.xbit(q), z = p.zbit(q);
  if (x) p.add_phase(1);
  p.set_bits(q, x, z != x);
}

inline void sdg(PauliOp& p, std::size_t q) {
  check_qubit(p, q);
  bool x = p.xbit(q), z = p.zbit(q);
  if (x) p.add_phase(3);
  p.set_bits(q, x, z != x);
}

inline void cnot(PauliOp& p, std::size_t c, std::size_t t) {
  check_qubit(p, c);
  check_qubit(p, t);
  if (c == t) throw std::invalid_argument("CNOT control equals target");
  bool xc = p.xbit(c), zc = p.zbit(c), xt = p.xbit(t), zt = p.zbit(t);
  p.set_bits(c, xc, zc != zt);
  p.set_bits(t, xt != xc, zt);
}

inline void cz(PauliOp& p, std::size_t a, std::size_t b) {
  check_qubit(p, a);
  check_qubit(p, b);
  if (a == b) throw std::invalid_argument("CZ needs two distinct qubits");
  bool xa = p.xbit(a), za = p.zbit(a), xb = p.xbit(b), zb = p.zbit(b);
  if (xa && xb) p.add_phase(2);
  p.set_bits(a, xa, za != xb);
  p.set_bits(b, xb, zb != xa);
}

inline void swap(PauliOp& p, std::size_t a, std::size_t b) {
  check_qubit(p, a);
  check_qubit(p, b);
  bool xa = p.xbit(a), za = p.zbit(a);
  p.set_bits(a, p.xbit(b), p.zbit(b));
  p.set_bits(b, xa, za);
}

inline void pauli(PauliOp& p, const PauliOp& g) {
  if (!commutes(p, g)) p.add_phase(2);
}

}  // namespace conj

// Clifford operator modulo global phase, stored as the signed images of X_j and Z_j.
class CliffordTableau {
 public:
  CliffordTableau() = default;
  explicit CliffordTableau(std::size_t n) {
    for (std::size_t j = 0; j < n; j++) {
      xs_.push_back(PauliOp::single(n, j, 'X'));
      zs_.push_back(PauliOp::single(n, j, 'Z'));
    }
  }

  // Validates Hermiticity and the symplectic condition.
  static CliffordTableau from_images(std::vector<PauliOp> x_images, std::vector<PauliOp> z_images) {
    CliffordTableau t;
    t.xs_ = std::move(x_images);
    t.zs_ = std::move(z_images);
    if (t.xs_.size() != t.zs_.size()) throw DimensionError("image lists differ in length");
    for (std::size_t j = 0; j < t.xs_.size(); j++)
      if (t.xs_[j].num_qubits() != t.xs_.size() || t.zs_[j].num_qubits() != t.xs_.size())
        throw DimensionError("image qubit count mismatch");
    if (!t.is_valid()) throw std::invalid_argument("images do not define a Clifford operator");
    return t;
  }

  std::size_t num_qubits() const { return xs_.size(); }
  const PauliOp& x_image(std::size_t j) const { return xs_.at(j); }
  const PauliOp& z_image(std::size_t j) const { return zs_.at(j); }
  // Image of generator k: X_k for k < n, Z_{k-n} otherwise.
  const PauliOp& image(std::size_t k) const { return k < xs_.size() ? xs_[k] : zs_[k - xs_.size()]; }

  bool is_valid() const {
    const std::size_t n = num_qubits();
    for (std::size_t k = 0; k < 2 * n; k++) {
      if (!image(k).is_hermitian() || image(k).is_identity_up_to_phase()) return false;
      for (std::size_t l = k + 1; l < 2 * n; l++) {
        bool should_anticommute = (l == k + n);
        if (commutes(image(k), image(l)) == should_anticommute) return false;
      }
    }
    return true;
  }

  PauliOp conjugate(const PauliOp& p) const {
    if (p.num_qubits() != num_qubits()) throw DimensionError("Pauli and tableau qubit counts differ");
    PauliOp r(num_qubits());
    r.set_phase(p.phase());
    for (std::size_t q = 0; q < num_qubits(); q++) {
      if (p.xbit(q)) r = pauli_mul(r, xs_[q]);
      if (p.zbit(q)) r = pauli_mul(r, zs_[q]);
    }
    return r;
  }

  // U <- G U for elementary gates G.
  void prepend_h(std::size_t q) { each([&](PauliOp& p) { conj::h(p, q); }); }
  void prepend_s(std::size_t q) { each([&](PauliOp& p) { conj::s(p, q); }); }
  void prepend_sdg(std::size_t q) { each([&](PauliOp& p) { conj::sdg(p, q); }); }
  void prepend_cnot(std::size_t c, std::size_t t) { each([&](PauliOp& p) { conj::cnot(p, c, t); }); }
  void prepend_cz(std::size_t a, std::size_t b) { each([&](PauliOp& p) { conj::cz(p, a, b); }); }
  void prepend_swap(std::size_t a, std::size_t b) {
    if (a != b) each([&](PauliOp& p) { conj::swap(p, a, b); });
  }
  void prepend_pauli(const PauliOp& g) { each([&](PauliOp& p) { conj::pauli(p, g); }); }

  // Flips the sign of the image of generator k (right multiplication by a Pauli).
  void negate_image(std::size_t k) {
    if (k < xs_.size())
      xs_[k].add_phase(2);
    else
      zs_[k - xs_.size()].add_phase(2);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < num_qubits(); j++) os << "X_" << j << " -> " << xs_[j].str() << "\n";
    for (std::size_t j = 0; j < num_qubits(); j++) os << "Z_" << j << " -> " << zs_[j].str() << "\n";
    return os.str();
  }

  // Inverse of str(); lines may appear in any order.
  static CliffordTableau parse(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<std::string, std::string>> entries;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      std::string lhs, arrow, rhs;
      if (!(ls >> lhs >> arrow >> rhs) || arrow != "->") throw ParseError("bad tableau line: " + line);
      entries.emplace_back(lhs, rhs);
    }
    if (entries.size() % 2) throw ParseError("tableau needs 2n lines");
    const std::size_t n = entries.size() / 2;
    std::vector<PauliOp> xs(n), zs(n);
    std::vector<bool> seen(2 * n, false);
    for (const auto& [lhs, rhs] : entries) {
      if (lhs.size() < 3 || (lhs[0] != 'X' && lhs[0] != 'Z') || lhs[1] != '_') throw ParseError("bad generator " + lhs);
      std::size_t j = 0;
      try {
        j = std::stoul(lhs.substr(2));
      } catch (const std::exception&) {
        throw ParseError("bad generator " + lhs);
      }
      if (j >= n) throw ParseError("generator index out of range: " + lhs);
      std::size_t k = (lhs[0] == 'X' ? 0 : n) + j;
      if (seen[k]) throw ParseError("duplicate generator " + lhs);
      seen[k] = true;
      PauliOp p = PauliOp::from_string(rhs);
      if (p.num_qubits() != n) throw ParseError("image length mismatch: " + rhs);
      (lhs[0] == 'X' ? xs : zs)[j] = p;
    }
    try {
      return from_images(std::move(xs), std::move(zs));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  bool operator==(const CliffordTableau& o) const = default;

  std::size_t hash() const {
    std::size_t h = num_qubits();
    for (std::size_t k = 0; k < 2 * num_qubits(); k++) {
      const auto& p = image(k);
      h = h * 1000003u ^ p.x().hash();
      h = h * 1000003u ^ p.z().hash();
      h = h * 31u + p.phase();
    }
    return h;
  }

 private:
  template <typename F>
  void each(F&& f) {
    for (auto& p : xs_) f(p);
    for (auto& p : zs_) f(p);
  }

  std::vector<PauliOp> xs_, zs_;
};

inline PauliOp conjugate_pauli(const CliffordTableau& c, const PauliOp& p) { return c.conjugate(p); }

// U_a U_b
inline CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("tableau qubit counts differ");
  const std::size_t n = a.num_qubits();
  std::vector<PauliOp> xs, zs;
  for (std::size_t j = 0; j < n; j++) {
    xs.push_back(a.conjugate(b.x_image(j)));
    zs.push_back(a.conjugate(b.z_image(j)));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

inline CliffordTableau inverse(const CliffordTableau& c) {
  const std::size_t n = c.num_qubits();
  auto sig = [n](std::size_t k) { return k < n ? k + n : k - n; };
  std::vector<BitVector> m;
  for (std::size_t k = 0; k < 2 * n; k++) m.push_back(c.image(k).to_vec());
  std::vector<PauliOp> xs, zs;
  for (std::size_t i = 0; i < 2 * n; i++) {
    BitVector v(2 * n);
    for (std::size_t j = 0; j < 2 * n; j++) v.set(j, m[sig(j)].get(sig(i)));
    (i < n ? xs : zs).push_back(PauliOp::from_vec(v));
  }
  CliffordTableau inv = CliffordTableau::from_images(std::move(xs), std::move(zs));
  CliffordTableau check = compose(c, inv);
  for (std::size_t k = 0; k < 2 * n; k++)
    if (check.image(k).sign_exponent() == 2) inv.negate_image(k);
  return inv;
}

// Gate constructors on n qubits (0-based indices).
inline CliffordTableau hadamard(std::size_t n, std::size_t j) {
  CliffordTableau t(n);
  t.prepend_h(j);
  return t;
}
inline CliffordTableau phase_s(std::size_t n, std::size_t j) {
  CliffordTableau t(n);
  t.prepend_s(j);
  return t;
}
inline CliffordTableau phase_sdg(std::size_t n, std::size_t j) {
  CliffordTableau t(n);
  t.prepend_sdg(j);
  return t;
}
inline CliffordTableau cz(std::size_t n, std::size_t j, std::size_t k) {
  CliffordTableau t(n);
  t.prepend_cz(j, k);
  return t;
}
inline CliffordTableau cnot(std::size_t n, std::size_t c, std::size_t t) {
  CliffordTableau r(n);
  r.prepend_cnot(c, t);
  return r;
}
inline CliffordTableau swap(std::size_t n, std::size_t j, std::size_t k) {
  CliffordTableau t(n);
  t.prepend_swap(j, k);
  return t;
}
inline CliffordTableau pauli_gate(const PauliOp& p) {
  CliffordTableau t(p.num_qubits());
  t.prepend_pauli(p);
  return t;
}

// |0><0| (x) I + |1><1| (x) P with control qubit c. P is an n-qubit Hermitian
// Pauli acting as identity on c.
inline CliffordTableau controlled_pauli(std::size_t c, const PauliOp& p) {
  const std::size_t n = p.num_qubits();
  if (c >= n) throw DimensionError("control index out of range");
  if (!p.is_hermitian()) throw std::invalid_argument("controlled Pauli target must be Hermitian");
  if (p.xbit(c) || p.zbit(c)) throw std::invalid_argument("controlled Pauli target acts on the control qubit");
  const PauliOp zc = PauliOp::single(n, c, 'Z');
  std::vector<PauliOp> xs, zs;
  for (std::size_t q = 0; q < n; q++) {
    PauliOp xq = PauliOp::single(n, q, 'X');
    PauliOp zq = PauliOp::single(n, q, 'Z');
    if (q == c) {
      xs.push_back(pauli_mul(xq, p));
      zs.push_back(zq);
      continue;
    }
    xs.push_back(commutes(xq, p) ? xq : pauli_mul(zc, xq));
    zs.push_back(commutes(zq, p) ? zq : pauli_mul(zc, zq));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

// K_sigma: the state of qubit j moves to qubit sigma[j].
inline CliffordTableau permutation(const std::vector<std::size_t>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<bool> hit(n, false);
  for (auto s : sigma) {
    if (s >= n || hit[s]) throw std::invalid_argument("not a permutation");
    hit[s] = true;
  }
  std::vector<PauliOp> xs, zs;
  for (std::size_t j = 0; j < n; j++) {
    xs.push_back(PauliOp::single(n, sigma[j], 'X'));
    zs.push_back(PauliOp::single(n, sigma[j], 'Z'));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

// Places a k-qubit Pauli on qubits [offset, offset + k) of an n-qubit register.
inline PauliOp embed_pauli(const PauliOp& p, std::size_t n, std::size_t offset) {
  if (offset + p.num_qubits() > n) throw DimensionError("embedding out of range");
  PauliOp r(n);
  for (std::size_t q = 0; q < p.num_qubits(); q++) r.set_bits(offset + q, p.xbit(q), p.zbit(q));
  r.set_phase(p.phase());
  return r;
}

// Restriction of a Pauli to qubits [offset, offset + k), phase dropped to sign +.
inline PauliOp restrict_pauli(const PauliOp& p, std::size_t offset, std::size_t k) {
  PauliOp r(k);
  for (std::size_t q = 0; q < k; q++) r.set_bits(q, p.xbit(offset + q), p.zbit(offset + q));
  return r.unsigned_part();
}

// Tableau of a k-qubit Clifford acting on qubits [offset, offset + k) of n qubits.
inline CliffordTableau embed(const CliffordTableau& c, std::size_t n, std::size_t offset) {
  const std::size_t k = c.num_qubits();
  if (offset + k > n) throw DimensionError("embedding out of range");
  std::vector<PauliOp> xs, zs;
  for (std::size_t q = 0; q < n; q++) {
    if (q >= offset && q < offset + k) {
      xs.push_back(embed_pauli(c.x_image(q - offset), n, offset));
      zs.push_back(embed_pauli(c.z_image(q - offset), n, offset));
    } else {
      xs.push_back(PauliOp::single(n, q, 'X'));
      zs.push_back(PauliOp::single(n, q, 'Z'));
    }
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

namespace detail {

// Projection of v onto the symplectic complement of the chosen pairs.
inline BitVector project_complement(BitVector v, const std::vector<BitVector>& as, const std::vector<BitVector>& bs) {
  BitVector out = v;
  for (std::size_t j = 0; j < as.size(); j++) {
    if (symplectic_product(v, bs[j])) out ^= as[j];
    if (symplectic_product(v, as[j])) out ^= bs[j];
  }
  return out;
}

inline BitVector random_bits(std::size_t len, Rng& rng) {
  BitVector v(len);
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < len; i++) {
    if (i % 64 == 0) w = rng();
    v.set(i, (w >> (i % 64)) & 1);
  }
  return v;
}

inline CliffordTableau tableau_from_pairs(std::size_t n, const std::vector<BitVector>& as, const std::vector<BitVector>& bs,
                                          std::uint64_t sign_bits) {
  std::vector<PauliOp> xs, zs;
  for (std::size_t j = 0; j < n; j++) {
    PauliOp xj = PauliOp::from_vec(bs[j]);
    PauliOp zj = PauliOp::from_vec(as[j]);
    if ((sign_bits >> j) & 1) xj.add_phase(2);
    if ((sign_bits >> (n + j)) & 1) zj.add_phase(2);
    xs.push_back(std::move(xj));
    zs.push_back(std::move(zj));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

}  // namespace detail

// Uniform over C_n / U_0: image of Z_j uniform among nonzero vectors in the
// symplectic complement of earlier pairs, image of X_j uniform among its
// anticommuting partners there, then independent uniform signs.
inline CliffordTableau random_clifford(std::size_t n, Rng& rng) {
  if (n == 0) return CliffordTableau(0);
  std::vector<BitVector> as, bs;
  for (std::size_t j = 0; j < n; j++) {
    BitVector a;
    do {
      a = detail::project_complement(detail::random_bits(2 * n, rng), as, bs);
    } while (!a.any());
    BitVector b;
    do {
      b = detail::project_complement(detail::random_bits(2 * n, rng), as, bs);
    } while (!symplectic_product(a, b));
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
  }
  std::vector<PauliOp> xs, zs;
  for (std::size_t j = 0; j < n; j++) {
    PauliOp xj = PauliOp::from_vec(bs[j]);
    PauliOp zj = PauliOp::from_vec(as[j]);
    if (rng() & 1) xj.add_phase(2);
    if (rng() & 1) zj.add_phase(2);
    xs.push_back(std::move(xj));
    zs.push_back(std::move(zj));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

// All of C_n / U_0 in a fixed order (n <= 2).
inline std::vector<CliffordTableau> enumerate_cliffords(std::size_t n) {
  if (n > 2) throw ResourceGuardError("Clifford enumeration limited to n <= 2");
  std::vector<CliffordTableau> out;
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  const std::size_t len = 2 * n;
  auto vec_of = [len](std::uint64_t m) {
    BitVector v(len);
    for (std::size_t i = 0; i < len; i++) v.set(i, (m >> (len - 1 - i)) & 1);
    return v;
  };
  std::vector<BitVector> as, bs;
  auto in_complement = [&](const BitVector& v) {
    for (std::size_t j = 0; j < as.size(); j++)
      if (symplectic_product(v, as[j]) || symplectic_product(v, bs[j])) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << (2 * n)); s++)
        out.push_back(detail::tableau_from_pairs(n, as, bs, s));
      return;
    }
    for (std::uint64_t ma = 1; ma < (std::uint64_t{1} << len); ma++) {
      BitVector a = vec_of(ma);
      if (!in_complement(a)) continue;
      for (std::uint64_t mb = 1; mb < (std::uint64_t{1} << len); mb++) {
        BitVector b = vec_of(mb);
        if (!in_complement(b) || !symplectic_product(a, b)) continue;
        as.push_back(a);
        bs.push_back(b);
        self(self, j + 1);
        as.pop_back();
        bs.pop_back();
      }
    }
  };
  rec(rec, 0);
  return out;
}

namespace detail {

// P v for a dense state vector.
inline std::vector<cplx> apply_pauli(const PauliOp& p, const std::vector<cplx>& v) {
  const std::uint64_t xm = mask_of(p.x()), zm = mask_of(p.z());
  const cplx base = i_pow(p.phase());
  std::vector<cplx> out(v.size());
  for (std::size_t k = 0; k < v.size(); k++) {
    cplx c = (std::popcount(zm & k) & 1) ? -v[k] : v[k];
    out[k ^ xm] = base * c;
  }
  return out;
}

}  // namespace detail

// Dense unitary; global phase fixed so the first nonzero entry of column 0 is positive real.
inline DenseMatrix to_matrix(const CliffordTableau& c, std::size_t cap = 10) {
  const std::size_t n = c.num_qubits();
  if (n > cap) throw ResourceGuardError("to_matrix limited to " + std::to_string(cap) + " qubits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> psi;
  for (std::size_t k = 0; k < dim; k++) {
    std::vector<cplx> v(dim, 0.0);
    v[k] = 1.0;
    for (std::size_t j = 0; j < n; j++) {
      std::vector<cplx> pv = detail::apply_pauli(c.z_image(j), v);
      for (std::size_t i = 0; i < dim; i++) v[i] = 0.5 * (v[i] + pv[i]);
    }
    double nrm = 0;
    for (auto& z : v) nrm += std::norm(z);
    if (nrm > 1e-6) {
      nrm = std::sqrt(nrm);
      for (auto& z : v) z /= nrm;
      psi = std::move(v);
      break;
    }
  }
  for (auto& z : psi) {
    if (std::abs(z) > 1e-9) {
      cplx ph = std::conj(z) / std::abs(z);
      for (auto& w : psi) w *= ph;
      break;
    }
  }
  DenseMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; col++) {
    std::vector<cplx> v = psi;
    for (std::size_t j = 0; j < n; j++)
      if ((col >> (n - 1 - j)) & 1) v = detail::apply_pauli(c.x_image(j), v);
    for (std::size_t r = 0; r < dim; r++) u(r, col) = v[r];
  }
  return u;
}

// |tr U|^2 from the tableau: 2^dim(F) when the sign character is trivial on the
// fixed subspace F of the symplectic map, else 0.
inline double trace_abs2(const CliffordTableau& c) {
  const std::size_t n = c.num_qubits();
  const std::size_t len = 2 * n;
  std::vector<BitVector> img;
  for (std::size_t k = 0; k < len; k++) img.push_back(c.image(k).to_vec());
  std::vector<BitVector> a(len, BitVector(len));
  for (std::size_t r = 0; r < len; r++)
    for (std::size_t i = 0; i < len; i++) a[r].set(i, img[i].get(r) != (i == r));
  auto fixed = gf2::nullspace(std::move(a), len);
  for (const auto& v : fixed) {
    PauliOp p = PauliOp::from_vec(v);
    if (c.conjugate(p).phase() != p.phase()) return 0.0;
  }
  return std::ldexp(1.0, static_cast<int>(fixed.size()));
}

// |tr(U V^dagger)|^2
inline double trace_abs2(const CliffordTableau& u, const CliffordTableau& v) { return trace_abs2(compose(u, inverse(v))); }

}  // namespace symclif

template <>
struct std::hash<symclif::CliffordTableau> {
  std::size_t operator()(const symclif::CliffordTableau& t) const { return t.hash(); }
};
