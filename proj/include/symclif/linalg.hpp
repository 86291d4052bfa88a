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
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "symclif/errors.hpp"

namespace symclif {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

// Row-major dense complex matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  cplx* row(std::size_t r) { return data_.data() + r * cols_; }
  const cplx* row(std::size_t r) const { return data_.data() + r * cols_; }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); i++) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); i++) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, cplx s) { return a *= s; }
  friend DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }

  bool operator==(const DenseMatrix& o) const = default;

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); i++) {
    cplx* ci = c.row(i);
    const cplx* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); k++) {
      cplx aik = ai[k];
      if (aik == cplx(0)) continue;
      const cplx* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); j++) ci[j] += aik * bk[j];
    }
  }
  return c;
}

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return matmul(a, b); }

inline DenseMatrix dagger(const DenseMatrix& a) {
  DenseMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); i++)
    for (std::size_t j = 0; j < a.cols(); j++) r(j, i) = std::conj(a(i, j));
  return r;
}

inline cplx trace(const DenseMatrix& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square matrix");
  cplx t = 0;
  for (std::size_t i = 0; i < a.rows(); i++) t += a(i, i);
  return t;
}

// tr(a b^dagger) without forming the product.
inline cplx trace_a_bdag(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  cplx t = 0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); i++) t += x[i] * std::conj(y[i]);
  return t;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); i++)
    for (std::size_t j = 0; j < a.cols(); j++) {
      cplx v = a(i, j);
      if (v == cplx(0)) continue;
      for (std::size_t k = 0; k < b.rows(); k++)
        for (std::size_t l = 0; l < b.cols(); l++) r(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
    }
  return r;
}

inline double frobenius_norm(const DenseMatrix& a) {
  double s = 0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs(const DenseMatrix& a) {
  double s = 0;
  for (const auto& v : a.data()) s = std::max(s, std::abs(v));
  return s;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.data().size(); i++) s = std::max(s, std::abs(a.data()[i] - b.data()[i]));
  return s;
}

// max |U^dagger U - I|
inline double unitarity_residual(const DenseMatrix& u) {
  return max_abs_diff(dagger(u) * u, DenseMatrix::identity(u.cols()));
}

inline DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

// Number of qubits for a 2^n square matrix; throws otherwise.
inline std::size_t qubits_of_dim(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) n++;
  return n;
}

struct EigenSystem {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // columns
};

// Cyclic Jacobi for Hermitian matrices.
inline EigenSystem hermitian_eig(const DenseMatrix& m, double tol = 1e-10) {
  if (!m.is_square()) throw DimensionError("eigendecomposition of non-square matrix");
  const std::size_t n = m.rows();
  const double norm = frobenius_norm(m);
  if (max_abs_diff(m, dagger(m)) > tol * std::max(norm, 1.0)) throw std::invalid_argument("matrix is not Hermitian");

  DenseMatrix a = m;
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t j = i + 1; j < n; j++) {
      cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  for (std::size_t i = 0; i < n; i++) a(i, i) = a(i, i).real();
  DenseMatrix v = DenseMatrix::identity(n);

  auto off = [&]() {
    double s = 0;
    for (std::size_t i = 0; i < n; i++)
      for (std::size_t j = 0; j < n; j++)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  const double target = 1e-12 * std::max(norm, 1e-300);
  for (int sweep = 0; sweep < 100 && off() > target; sweep++) {
    for (std::size_t p = 0; p + 1 < n; p++) {
      for (std::size_t q = p + 1; q < n; q++) {
        const cplx apq = a(p, q);
        const double b = std::abs(apq);
        if (b < 1e-300) continue;
        const cplx e = apq / b;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2 * b);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const double c = 1 / std::sqrt(1 + t * t);
        const double s = t * c;
        const cplx ec = std::conj(e);
        // A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        for (std::size_t k = 0; k < n; k++) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        for (std::size_t k = 0; k < n; k++) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; k++) {
          cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; k++) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; r++) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  DenseMatrix m(rows, cols);
  for (auto& v : m.data()) {
    double re = g(rng);
    double im = g(rng);
    v = cplx(re, im);
  }
  return m;
}

// GUE-like random Hermitian matrix.
inline DenseMatrix random_hermitian(std::size_t n, Rng& rng) {
  DenseMatrix g = random_gaussian(n, n, rng);
  DenseMatrix h = g + dagger(g);
  h *= 0.5;
  return h;
}

enum class PhaseCorrection { kApply, kSkip };

// Householder QR of a complex Gaussian matrix. With kApply each column of Q is
// rescaled so the matching diagonal entry of R is positive real, which makes
// the result Haar distributed. kSkip exists only as a negative control.
inline DenseMatrix haar_unitary(std::size_t m, Rng& rng, PhaseCorrection corr = PhaseCorrection::kApply) {
  if (m == 0) throw std::invalid_argument("haar_unitary needs m >= 1");
  DenseMatrix a = random_gaussian(m, m, rng);
  std::vector<std::vector<cplx>> reflectors;
  std::vector<cplx> rdiag(m);
  for (std::size_t k = 0; k < m; k++) {
    double nx = 0;
    for (std::size_t i = k; i < m; i++) nx += std::norm(a(i, k));
    nx = std::sqrt(nx);
    cplx x0 = a(k, k);
    cplx ph = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1);
    cplx alpha = -ph * nx;
    std::vector<cplx> v(m - k);
    for (std::size_t i = k; i < m; i++) v[i - k] = a(i, k);
    v[0] -= alpha;
    double nv = 0;
    for (auto& z : v) nv += std::norm(z);
    nv = std::sqrt(nv);
    if (nv > 0)
      for (auto& z : v) z /= nv;
    // A[k:, :] -= 2 v (v^dagger A[k:, :])
    for (std::size_t j = 0; j < m; j++) {
      cplx dot = 0;
      for (std::size_t i = k; i < m; i++) dot += std::conj(v[i - k]) * a(i, j);
      for (std::size_t i = k; i < m; i++) a(i, j) -= 2.0 * v[i - k] * dot;
    }
    rdiag[k] = a(k, k);
    reflectors.push_back(std::move(v));
  }
  // Q = H_0 H_1 ... H_{m-1}
  DenseMatrix q = DenseMatrix::identity(m);
  for (std::size_t kk = m; kk-- > 0;) {
    const auto& v = reflectors[kk];
    for (std::size_t j = 0; j < m; j++) {
      cplx dot = 0;
      for (std::size_t i = kk; i < m; i++) dot += std::conj(v[i - kk]) * q(i, j);
      for (std::size_t i = kk; i < m; i++) q(i, j) -= 2.0 * v[i - kk] * dot;
    }
  }
  if (corr == PhaseCorrection::kApply) {
    for (std::size_t j = 0; j < m; j++) {
      cplx d = rdiag[j];
      cplx ph = std::abs(d) > 0 ? d / std::abs(d) : cplx(1);
      for (std::size_t i = 0; i < m; i++) q(i, j) *= ph;
    }
  }
  return q;
}

// exp(i H) for Hermitian H.
inline DenseMatrix expm_i_hermitian(const DenseMatrix& h) {
  EigenSystem es = hermitian_eig(h);
  const std::size_t n = h.rows();
  DenseMatrix vd = es.vectors;
  for (std::size_t k = 0; k < n; k++) {
    cplx ph = std::exp(cplx(0, es.values[k]));
    for (std::size_t r = 0; r < n; r++) vd(r, k) *= ph;
  }
  return vd * dagger(es.vectors);
}

namespace detail {

// Bit offsets (in a 2^nq index) for each local basis index over `qubits`.
// Qubit 0 is the most significant bit; qubits[0] is the most significant local bit.
inline std::vector<std::size_t> local_offsets(const std::vector<std::size_t>& qubits, std::size_t nq) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> offs(std::size_t{1} << k, 0);
  for (std::size_t l = 0; l < offs.size(); l++) {
    std::size_t o = 0;
    for (std::size_t b = 0; b < k; b++)
      if ((l >> (k - 1 - b)) & 1) o |= std::size_t{1} << (nq - 1 - qubits[b]);
    offs[l] = o;
  }
  return offs;
}

}  // namespace detail

// Returns U_S L U_S^dagger where U acts on the listed qubits of an nq-qubit space.
inline DenseMatrix conjugate_local(const DenseMatrix& l, const DenseMatrix& u, const std::vector<std::size_t>& qubits,
                                   std::size_t nq) {
  const std::size_t dim = std::size_t{1} << nq;
  const std::size_t ld = std::size_t{1} << qubits.size();
  if (l.rows() != dim || l.cols() != dim || u.rows() != ld || u.cols() != ld)
    throw DimensionError("conjugate_local shape mismatch");
  std::size_t mask = 0;
  for (auto q : qubits) {
    if (q >= nq) throw DimensionError("qubit index out of range");
    mask |= std::size_t{1} << (nq - 1 - q);
  }
  const auto offs = detail::local_offsets(qubits, nq);
  DenseMatrix tmp(dim, dim);
  std::vector<cplx> buf(ld);
  // left: rows
  for (std::size_t base = 0; base < dim; base++) {
    if (base & mask) continue;
    for (std::size_t c = 0; c < dim; c++) {
      for (std::size_t j = 0; j < ld; j++) buf[j] = l(base | offs[j], c);
      for (std::size_t i = 0; i < ld; i++) {
        cplx s = 0;
        for (std::size_t j = 0; j < ld; j++) s += u(i, j) * buf[j];
        tmp(base | offs[i], c) = s;
      }
    }
  }
  DenseMatrix out(dim, dim);
  // right: columns, (T U^dagger)[r][c] = sum_c' T[r][c'] conj(U[c][c'])
  for (std::size_t r = 0; r < dim; r++) {
    for (std::size_t base = 0; base < dim; base++) {
      if (base & mask) continue;
      for (std::size_t j = 0; j < ld; j++) buf[j] = tmp(r, base | offs[j]);
      for (std::size_t i = 0; i < ld; i++) {
        cplx s = 0;
        for (std::size_t j = 0; j < ld; j++) s += std::conj(u(i, j)) * buf[j];
        out(r, base | offs[i]) = s;
      }
    }
  }
  return out;
}

// (U^{(x)t}) L (U^{(x)t})^dagger for U on n qubits and L on t*n qubits.
inline DenseMatrix conjugate_tensor_power(const DenseMatrix& l, const DenseMatrix& u, std::size_t t) {
  const std::size_t n = qubits_of_dim(u.rows());
  DenseMatrix out = l;
  for (std::size_t c = 0; c < t; c++) {
    std::vector<std::size_t> qs(n);
    for (std::size_t q = 0; q < n; q++) qs[q] = c * n + q;
    out = conjugate_local(out, u, qs, t * n);
  }
  return out;
}

}  // namespace symclif
