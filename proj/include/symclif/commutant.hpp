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
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "symclif/errors.hpp"
#include "symclif/linalg.hpp"
#include "symclif/pauli.hpp"

namespace symclif {

// A symmetry given by Hermitian generators (Lie-algebra data or Hermitian
// group elements). Pauli subgroups use their Hermitian basis Paulis.
struct SymmetrySpec {
  enum class Kind { kPauli, kU1, kSU2, kCustom };

  Kind kind = Kind::kCustom;
  std::size_t n = 0;
  PauliSubgroup pauli;
  std::vector<DenseMatrix> custom;

  static SymmetrySpec pauli_spec(PauliSubgroup q) {
    SymmetrySpec s;
    s.kind = Kind::kPauli;
    s.n = q.num_qubits();
    s.pauli = std::move(q);
    return s;
  }
  static SymmetrySpec u1(std::size_t n) {
    if (n == 0) throw std::invalid_argument("U1 symmetry needs n >= 1");
    SymmetrySpec s;
    s.kind = Kind::kU1;
    s.n = n;
    return s;
  }
  static SymmetrySpec su2(std::size_t n) {
    if (n == 0) throw std::invalid_argument("SU2 symmetry needs n >= 1");
    SymmetrySpec s;
    s.kind = Kind::kSU2;
    s.n = n;
    return s;
  }
  static SymmetrySpec custom_spec(std::size_t n, std::vector<DenseMatrix> gens) {
    const std::size_t dim = std::size_t{1} << n;
    for (const auto& g : gens) {
      if (g.rows() != dim || g.cols() != dim) throw DimensionError("custom generator dimension mismatch");
      if (max_abs_diff(g, dagger(g)) > 1e-10 * std::max(1.0, max_abs(g)))
        throw std::invalid_argument("custom generators must be Hermitian");
    }
    SymmetrySpec s;
    s.kind = Kind::kCustom;
    s.n = n;
    s.custom = std::move(gens);
    return s;
  }

  std::size_t dim() const { return std::size_t{1} << n; }

  std::vector<DenseMatrix> hermitian_generators() const {
    auto total = [this](char letter) {
      DenseMatrix m(dim(), dim());
      for (std::size_t j = 0; j < n; j++) m += pauli_matrix(PauliOp::single(n, j, letter));
      return m;
    };
    switch (kind) {
      case Kind::kPauli: {
        std::vector<DenseMatrix> out;
        for (const auto& g : pauli.generators()) out.push_back(pauli_matrix(g));
        return out;
      }
      case Kind::kU1: return {total('Z')};
      case Kind::kSU2: return {total('X'), total('Y'), total('Z')};
      case Kind::kCustom: return custom;
    }
    return {};
  }

  std::string tag() const {
    switch (kind) {
      case Kind::kPauli: {
        std::string s = "pauli:";
        auto g = pauli.generator_strings();
        for (std::size_t i = 0; i < g.size(); i++) s += (i ? "," : "") + g[i];
        if (g.empty()) s += "n=" + std::to_string(n);
        return s;
      }
      case Kind::kU1: return "u1:" + std::to_string(n);
      case Kind::kSU2: return "su2:" + std::to_string(n);
      case Kind::kCustom: return "custom:" + std::to_string(n);
    }
    return "";
  }
};

struct Block {
  std::size_t d = 0;     // multiplicity of the commutant block (A-eigenspace count)
  std::size_t m = 0;     // size of the free unitary block
  DenseMatrix basis;     // dim x (d*m), column i*m + j
};

// Symmetric unitaries are sum_l V_l (I_d (x) U_l) V_l^dagger with Haar U_l in U(m).
struct BlockDecomposition {
  std::size_t dim = 0;
  std::vector<Block> blocks;
  double residual = 0;  // largest verification residual
};

namespace detail {

// HS-orthonormal basis of the algebra generated by {I} and the generators.
inline std::vector<DenseMatrix> algebra_basis(const SymmetrySpec& spec) {
  const std::size_t dim = spec.dim();
  std::vector<DenseMatrix> basis;
  auto add = [&](DenseMatrix m) {
    double n0 = frobenius_norm(m);
    if (n0 == 0) return false;
    for (int pass = 0; pass < 2; pass++)
      for (const auto& b : basis) m -= b * trace_a_bdag(m, b);
    double n1 = frobenius_norm(m);
    if (n1 <= 1e-8 * n0) return false;
    m *= 1.0 / n1;
    basis.push_back(std::move(m));
    return true;
  };
  if (spec.kind == SymmetrySpec::Kind::kPauli) {
    // Distinct Paulis are already orthogonal.
    const auto& rows = spec.pauli.rows();
    const double s = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t mask = 0; mask < (std::size_t{1} << rows.size()); mask++) {
      BitVector v(2 * spec.n);
      for (std::size_t k = 0; k < rows.size(); k++)
        if ((mask >> k) & 1) v ^= rows[k];
      basis.push_back(pauli_matrix(PauliOp::from_vec(v)) * cplx(s));
    }
    return basis;
  }
  const auto gens = spec.hermitian_generators();
  add(DenseMatrix::identity(dim));
  for (std::size_t next = 0; next < basis.size(); next++) {
    if (basis.size() > 4096) throw ResourceGuardError("symmetry algebra too large for dense decomposition");
    for (const auto& g : gens) add(g * basis[next]);
  }
  return basis;
}

inline std::vector<std::vector<std::size_t>> cluster_sorted(const std::vector<double>& vals, double gap) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < vals.size(); i++) {
    if (out.empty() || vals[i] - vals[out.back().back()] > gap) out.emplace_back();
    out.back().push_back(i);
  }
  return out;
}

inline DenseMatrix columns(const DenseMatrix& m, const std::vector<std::size_t>& cols) {
  DenseMatrix r(m.rows(), cols.size());
  for (std::size_t r0 = 0; r0 < m.rows(); r0++)
    for (std::size_t c = 0; c < cols.size(); c++) r(r0, c) = m(r0, cols[c]);
  return r;
}

// Largest deviation of V^dagger H V from the block form (+)_l A_l (x) I_m.
inline double block_form_residual(const BlockDecomposition& bd, const DenseMatrix& vall, const DenseMatrix& h) {
  DenseMatrix mm = dagger(vall) * h * vall;
  DenseMatrix proj(mm.rows(), mm.cols());
  std::size_t off = 0;
  for (const auto& b : bd.blocks) {
    for (std::size_t i = 0; i < b.d; i++)
      for (std::size_t i2 = 0; i2 < b.d; i2++) {
        cplx avg = 0;
        for (std::size_t j = 0; j < b.m; j++) avg += mm(off + i * b.m + j, off + i2 * b.m + j);
        avg /= static_cast<double>(b.m);
        for (std::size_t j = 0; j < b.m; j++) proj(off + i * b.m + j, off + i2 * b.m + j) = avg;
      }
    off += b.d * b.m;
  }
  return max_abs_diff(mm, proj);
}

inline DenseMatrix stacked_basis(const BlockDecomposition& bd) {
  DenseMatrix v(bd.dim, bd.dim);
  std::size_t off = 0;
  for (const auto& b : bd.blocks) {
    for (std::size_t r = 0; r < bd.dim; r++)
      for (std::size_t c = 0; c < b.d * b.m; c++) v(r, off + c) = b.basis(r, c);
    off += b.d * b.m;
  }
  return v;
}

// One randomized attempt; returns false when eigenvalue collisions make the
// structure ambiguous.
inline bool try_block_decompose(const SymmetrySpec& spec, const std::vector<DenseMatrix>& alg, double tol, Rng& rng,
                                BlockDecomposition& out) {
  const std::size_t dim = spec.dim();
  std::normal_distribution<double> g(0.0, 1.0);
  auto random_algebra_element = [&]() {
    DenseMatrix y(dim, dim);
    for (const auto& e : alg) y += e * cplx(g(rng), g(rng));
    return y;
  };
  DenseMatrix a = random_algebra_element();
  a = (a + dagger(a)) * cplx(0.5);
  DenseMatrix x = random_hermitian(dim, rng);
  DenseMatrix b(dim, dim);
  for (const auto& e : alg) b += e * x * dagger(e);

  auto ea = hermitian_eig(a);
  double scale_a = 0;
  for (double v : ea.values) scale_a = std::max(scale_a, std::abs(v));
  auto aclusters = cluster_sorted(ea.values, 1e-6 * std::max(scale_a, 1e-300));

  struct Joint {
    double bval;
    std::size_t acl;
    std::vector<cplx> vec;
  };
  std::vector<Joint> joint;
  std::vector<DenseMatrix> espaces;
  for (std::size_t i = 0; i < aclusters.size(); i++) {
    DenseMatrix e = columns(ea.vectors, aclusters[i]);
    DenseMatrix bi = dagger(e) * b * e;
    bi = (bi + dagger(bi)) * cplx(0.5);
    auto eb = hermitian_eig(bi);
    DenseMatrix jv = e * eb.vectors;
    for (std::size_t k = 0; k < eb.values.size(); k++) {
      std::vector<cplx> v(dim);
      for (std::size_t r = 0; r < dim; r++) v[r] = jv(r, k);
      joint.push_back({eb.values[k], i, std::move(v)});
    }
    espaces.push_back(std::move(e));
  }
  std::vector<std::size_t> order(joint.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return joint[i].bval < joint[j].bval; });
  std::vector<double> bsorted;
  double scale_b = 0;
  for (auto i : order) {
    bsorted.push_back(joint[i].bval);
    scale_b = std::max(scale_b, std::abs(joint[i].bval));
  }
  auto bclusters = cluster_sorted(bsorted, 1e-6 * std::max(scale_b, 1e-300));

  // union-find over A-clusters, joined through shared B-classes
  std::vector<std::size_t> parent(aclusters.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& bc : bclusters)
    for (std::size_t k = 1; k < bc.size(); k++) parent[find(joint[order[bc[k]]].acl)] = find(joint[order[bc[0]]].acl);

  std::map<std::size_t, std::vector<std::size_t>> comp_a, comp_b;
  for (std::size_t i = 0; i < aclusters.size(); i++) comp_a[find(i)].push_back(i);
  for (std::size_t c = 0; c < bclusters.size(); c++) comp_b[find(joint[order[bclusters[c][0]]].acl)].push_back(c);

  out = BlockDecomposition{};
  out.dim = dim;
  for (const auto& [root, acl] : comp_a) {
    const auto& bcl = comp_b[root];
    const std::size_t d = acl.size(), m = bcl.size();
    for (auto i : acl)
      if (aclusters[i].size() != m) return false;
    for (auto c : bcl) {
      if (bclusters[c].size() != d) return false;
      std::vector<bool> hit(aclusters.size(), false);
      for (auto k : bclusters[c]) {
        auto ac = joint[order[k]].acl;
        if (hit[ac]) return false;
        hit[ac] = true;
      }
    }
    // reference vectors from the first A-eigenspace, one per B-class
    const std::size_t i0 = acl[0];
    std::vector<std::vector<cplx>> ref(m);
    for (std::size_t j = 0; j < m; j++)
      for (auto k : bclusters[bcl[j]])
        if (joint[order[k]].acl == i0) ref[j] = joint[order[k]].vec;
    DenseMatrix xr = random_algebra_element();
    const double xnorm = frobenius_norm(xr);
    Block blk{d, m, DenseMatrix(dim, d * m)};
    for (std::size_t ii = 0; ii < d; ii++) {
      const DenseMatrix& e = espaces[acl[ii]];
      for (std::size_t j = 0; j < m; j++) {
        std::vector<cplx> w(dim);
        if (ii == 0) {
          w = ref[j];
        } else {
          std::vector<cplx> xv(dim, 0.0);
          for (std::size_t r = 0; r < dim; r++)
            for (std::size_t c = 0; c < dim; c++) xv[r] += xr(r, c) * ref[j][c];
          std::vector<cplx> coef(e.cols(), 0.0);
          for (std::size_t k = 0; k < e.cols(); k++)
            for (std::size_t r = 0; r < dim; r++) coef[k] += std::conj(e(r, k)) * xv[r];
          for (std::size_t r = 0; r < dim; r++)
            for (std::size_t k = 0; k < e.cols(); k++) w[r] += e(r, k) * coef[k];
          double nw = 0;
          for (auto& z : w) nw += std::norm(z);
          nw = std::sqrt(nw);
          if (nw < 1e-6 * xnorm / std::sqrt(static_cast<double>(dim))) return false;
          for (auto& z : w) z /= nw;
        }
        for (std::size_t r = 0; r < dim; r++) blk.basis(r, ii * m + j) = w[r];
      }
    }
    out.blocks.push_back(std::move(blk));
  }
  std::stable_sort(out.blocks.begin(), out.blocks.end(),
                   [](const Block& p, const Block& q) { return p.d != q.d ? p.d > q.d : p.m > q.m; });

  DenseMatrix vall = stacked_basis(out);
  double res = unitarity_residual(vall);
  for (const auto& h : spec.hermitian_generators()) {
    double r = block_form_residual(out, vall, h) / std::max(1.0, max_abs(h));
    res = std::max(res, r);
  }
  out.residual = res;
  return res < tol;
}

}  // namespace detail

// Numerical block structure of the symmetric unitary group. Deterministic:
// random elements come from a fixed internal seed, with up to 5 retries.
inline BlockDecomposition block_decompose(const SymmetrySpec& spec, double tol = 1e-8, std::size_t cap = 8) {
  if (spec.n > cap) throw ResourceGuardError("block_decompose limited to " + std::to_string(cap) + " qubits");
  const auto alg = detail::algebra_basis(spec);
  Rng rng(0x5eedc0ffeeull);
  BlockDecomposition bd;
  double last = 0;
  for (int attempt = 0; attempt < 6; attempt++) {
    if (detail::try_block_decompose(spec, alg, tol, rng, bd)) return bd;
    last = bd.residual;
  }
  throw NumericalError("block decomposition failed verification (residual " + std::to_string(last) + ")");
}

inline DenseMatrix haar_symmetric_unitary(const BlockDecomposition& bd, Rng& rng) {
  DenseMatrix u(bd.dim, bd.dim);
  for (const auto& b : bd.blocks) {
    DenseMatrix h = haar_unitary(b.m, rng);
    DenseMatrix vb(bd.dim, b.d * b.m);  // V (I (x) H)
    for (std::size_t r = 0; r < bd.dim; r++)
      for (std::size_t i = 0; i < b.d; i++)
        for (std::size_t j = 0; j < b.m; j++) {
          cplx s = 0;
          for (std::size_t k = 0; k < b.m; k++) s += b.basis(r, i * b.m + k) * h(k, j);
          vb(r, i * b.m + j) = s;
        }
    u += vb * dagger(b.basis);
  }
  return u;
}

// Number of permutations of a elements whose longest decreasing subsequence is
// at most m; equals E|tr U|^{2a} over Haar U(m).
inline std::uint64_t trace_moment_count(std::size_t a, std::size_t m) {
  if (a > 10) throw std::invalid_argument("trace moment limited to a <= 10");
  std::vector<std::size_t> p(a);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<std::size_t> lds(a, 1);
    std::size_t best = a ? 1 : 0;
    for (std::size_t i = 0; i < a; i++) {
      for (std::size_t j = 0; j < i; j++)
        if (p[j] > p[i]) lds[i] = std::max(lds[i], lds[j] + 1);
      best = std::max(best, lds[i]);
    }
    if (best <= m) count++;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// F_t of the symmetric Haar group: sum over compositions (t_l) of t of
// (t! / prod t_l!)^2 prod d_l^{2 t_l} M_{t_l}(m_l), by dynamic programming over blocks.
inline boost::multiprecision::cpp_int analytic_frame_potential(const BlockDecomposition& bd, std::size_t t) {
  using boost::multiprecision::cpp_int;
  if (t < 1 || t > 6) throw std::invalid_argument("analytic frame potential needs 1 <= t <= 6");
  std::vector<std::vector<cpp_int>> binom(t + 1, std::vector<cpp_int>(t + 1, 0));
  for (std::size_t s = 0; s <= t; s++) {
    binom[s][0] = 1;
    for (std::size_t k = 1; k <= s; k++) binom[s][k] = binom[s - 1][k - 1] + (k <= s - 1 ? binom[s - 1][k] : cpp_int(0));
  }
  std::vector<cpp_int> g(t + 1, 0);
  g[0] = 1;
  for (const auto& b : bd.blocks) {
    std::vector<cpp_int> term(t + 1);
    for (std::size_t a = 0; a <= t; a++) {
      cpp_int d2 = 1;
      for (std::size_t k = 0; k < 2 * a; k++) d2 *= b.d;
      term[a] = d2 * trace_moment_count(a, b.m);
    }
    std::vector<cpp_int> ng(t + 1, 0);
    for (std::size_t s = 0; s <= t; s++)
      for (std::size_t a = 0; a <= s; a++) ng[s] += binom[s][a] * binom[s][a] * term[a] * g[s - a];
    g = std::move(ng);
  }
  return g[t];
}

inline std::size_t commutant_dimension(const BlockDecomposition& bd) {
  std::size_t s = 0;
  for (const auto& b : bd.blocks) s += b.m * b.m;
  return s;
}

inline std::size_t commutant_dimension(const SymmetrySpec& spec, double tol = 1e-8) {
  return commutant_dimension(block_decompose(spec, tol));
}

// Random Hermitian element of the commutant: sum_l V_l (I_d (x) R_l) V_l^dagger.
inline DenseMatrix random_commutant_element(const BlockDecomposition& bd, Rng& rng) {
  DenseMatrix c(bd.dim, bd.dim);
  for (const auto& b : bd.blocks) {
    DenseMatrix r = random_hermitian(b.m, rng);
    DenseMatrix inner = kron(DenseMatrix::identity(b.d), r);
    c += b.basis * inner * dagger(b.basis);
  }
  return c;
}

// True iff both symmetries impose the same constraint on unitaries: equal
// commutant dimensions and each commutant commutes with the other's generators.
inline bool equal_constraints(const SymmetrySpec& a, const SymmetrySpec& b, double tol = 1e-8) {
  if (a.n != b.n) throw DimensionError("symmetry qubit counts differ");
  auto bda = block_decompose(a, tol), bdb = block_decompose(b, tol);
  if (commutant_dimension(bda) != commutant_dimension(bdb)) return false;
  Rng rng(0xc0ffee);
  auto inside = [&](const BlockDecomposition& bd, const SymmetrySpec& other) {
    for (int k = 0; k < 2; k++) {
      DenseMatrix c = random_commutant_element(bd, rng);
      for (const auto& h : other.hermitian_generators())
        if (max_abs(commutator(c, h)) > 1e-7 * std::max(1.0, max_abs(c)) * std::max(1.0, max_abs(h))) return false;
    }
    return true;
  };
  return inside(bda, b) && inside(bdb, a);
}

// Generic elements of the symmetry group: the Pauli generators themselves, or
// exp(i sum_k theta_k H_k) for Lie-type specs.
inline std::vector<DenseMatrix> sample_group_elements(const SymmetrySpec& spec, std::size_t count, Rng& rng) {
  std::vector<DenseMatrix> out;
  if (spec.kind == SymmetrySpec::Kind::kPauli) {
    for (const auto& g : spec.pauli.generators()) out.push_back(pauli_matrix(g));
    if (out.empty()) out.push_back(DenseMatrix::identity(spec.dim()));
    return out;
  }
  const auto gens = spec.hermitian_generators();
  std::uniform_real_distribution<double> ang(-3.14159265358979, 3.14159265358979);
  for (std::size_t k = 0; k < count; k++) {
    DenseMatrix h(spec.dim(), spec.dim());
    for (const auto& g : gens) h += g * cplx(ang(rng));
    out.push_back(expm_i_hermitian(h));
  }
  if (out.empty()) out.push_back(DenseMatrix::identity(spec.dim()));
  return out;
}

}  // namespace symclif
