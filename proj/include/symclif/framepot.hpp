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

#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "symclif/canonical.hpp"
#include "symclif/clifford.hpp"
#include "symclif/commutant.hpp"
#include "symclif/linalg.hpp"
#include "symclif/samplers.hpp"

namespace symclif {

enum class FpMethod { kMcPairwise, kGroupSumExact, kAnalytic };

inline const char* method_name(FpMethod m) {
  switch (m) {
    case FpMethod::kMcPairwise: return "mc_pairwise";
    case FpMethod::kGroupSumExact: return "group_sum_exact";
    case FpMethod::kAnalytic: return "analytic";
  }
  return "";
}

struct FramePotentialEstimate {
  std::size_t t = 0;
  double value = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
  FpMethod method = FpMethod::kMcPairwise;
};

// A finite list of unitaries (a group mod phase) or a sampler. Clifford
// ensembles keep tableaux so traces can be taken without dense matrices.
class TwirlEnsemble {
 public:
  using DenseDraw = std::function<DenseMatrix(Rng&)>;
  using CliffordDraw = std::function<CliffordTableau(Rng&)>;

  static TwirlEnsemble finite(std::vector<DenseMatrix> elems, std::string tag = "finite") {
    if (elems.empty()) throw std::invalid_argument("empty ensemble");
    TwirlEnsemble e;
    e.dim_ = elems[0].rows();
    for (const auto& u : elems)
      if (u.rows() != e.dim_ || u.cols() != e.dim_) throw DimensionError("ensemble elements differ in dimension");
    e.dense_ = std::move(elems);
    e.tag_ = std::move(tag);
    return e;
  }
  static TwirlEnsemble finite_clifford(std::vector<CliffordTableau> elems, std::string tag = "clifford_group") {
    if (elems.empty()) throw std::invalid_argument("empty ensemble");
    TwirlEnsemble e;
    e.dim_ = std::size_t{1} << elems[0].num_qubits();
    e.cliff_ = std::move(elems);
    e.tag_ = std::move(tag);
    return e;
  }
  static TwirlEnsemble sampler(std::size_t dim, DenseDraw draw, std::string tag) {
    TwirlEnsemble e;
    e.dim_ = dim;
    e.dense_draw_ = std::move(draw);
    e.tag_ = std::move(tag);
    return e;
  }
  static TwirlEnsemble clifford_sampler(std::size_t n, CliffordDraw draw, std::string tag) {
    TwirlEnsemble e;
    e.dim_ = std::size_t{1} << n;
    e.cliff_draw_ = std::move(draw);
    e.tag_ = std::move(tag);
    return e;
  }

  std::size_t dim() const { return dim_; }
  const std::string& tag() const { return tag_; }
  bool is_finite() const { return !dense_.empty() || !cliff_.empty(); }
  bool is_clifford() const { return !cliff_.empty() || static_cast<bool>(cliff_draw_); }
  std::size_t size() const { return dense_.size() + cliff_.size(); }

  DenseMatrix element(std::size_t i) const { return dense_.empty() ? to_matrix(cliff_.at(i)) : dense_.at(i); }
  const CliffordTableau& clifford_element(std::size_t i) const { return cliff_.at(i); }

  CliffordTableau draw_clifford(Rng& rng) const {
    if (!cliff_.empty()) return cliff_[uniform_index(rng)];
    return cliff_draw_(rng);
  }
  DenseMatrix draw_dense(Rng& rng) const {
    if (is_clifford()) return to_matrix(draw_clifford(rng));
    if (!dense_.empty()) return dense_[uniform_index(rng)];
    return dense_draw_(rng);
  }

 private:
  std::size_t uniform_index(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> d(0, size() - 1);
    return d(rng);
  }

  std::size_t dim_ = 0;
  std::vector<DenseMatrix> dense_;
  std::vector<CliffordTableau> cliff_;
  DenseDraw dense_draw_;
  CliffordDraw cliff_draw_;
  std::string tag_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline Rng shard_rng(std::uint64_t seed, std::uint64_t shard) { return Rng(splitmix64(splitmix64(seed) ^ shard)); }

// Running mean and sum of squared deviations; merged in a fixed order.
struct Moments {
  std::uint64_t n = 0;
  long double mean = 0, m2 = 0;

  void add(long double x) {
    n++;
    long double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    long double d = o.mean - mean;
    std::uint64_t tot = n + o.n;
    mean += d * o.n / tot;
    m2 += o.m2 + d * d * static_cast<long double>(n) * o.n / tot;
    n = tot;
  }
  double stderr_of_mean() const { return n > 1 ? std::sqrt(static_cast<double>(m2 / (n - 1) / n)) : 0.0; }
};

// Runs f(shard_index) for every shard on up to `threads` workers.
inline void parallel_shards(std::size_t shards, std::size_t threads, const std::function<void(std::size_t)>& f) {
  threads = std::max<std::size_t>(1, std::min(threads, shards));
  if (threads == 1) {
    for (std::size_t s = 0; s < shards; s++) f(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (std::size_t k = 0; k < threads; k++)
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < shards; s = next++) {
        try {
          f(s);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

inline constexpr std::size_t kShardSize = 1024;

// Estimates E|tr(U U'^dagger)|^{2t} for every t in ts from the same m_samples
// independent pairs (U from a, U' from b). Shard k draws from an rng derived
// from (seed, k), so results do not depend on the thread count.
inline std::vector<FramePotentialEstimate> frame_potential_mc(const TwirlEnsemble& a, const TwirlEnsemble& b,
                                                              const std::vector<std::size_t>& ts, std::uint64_t m_samples,
                                                              std::uint64_t seed, std::size_t threads = 1) {
  if (a.dim() != b.dim()) throw DimensionError("ensemble dimensions differ");
  for (auto t : ts)
    if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (m_samples < 2) throw std::invalid_argument("need at least 2 samples");
  const bool tableau = a.is_clifford() && b.is_clifford();
  const std::size_t shards = (m_samples + kShardSize - 1) / kShardSize;
  std::vector<std::vector<detail::Moments>> parts(shards, std::vector<detail::Moments>(ts.size()));
  detail::parallel_shards(shards, threads, [&](std::size_t s) {
    Rng rng = detail::shard_rng(seed, s);
    const std::uint64_t begin = s * kShardSize, end = std::min<std::uint64_t>(m_samples, begin + kShardSize);
    for (std::uint64_t k = begin; k < end; k++) {
      double x;
      if (tableau) {
        CliffordTableau u = a.draw_clifford(rng);
        CliffordTableau v = b.draw_clifford(rng);
        x = trace_abs2(u, v);
      } else {
        DenseMatrix u = a.draw_dense(rng);
        DenseMatrix v = b.draw_dense(rng);
        x = std::norm(trace_a_bdag(u, v));
      }
      for (std::size_t i = 0; i < ts.size(); i++) parts[s][i].add(std::pow(static_cast<long double>(x), ts[i]));
    }
  });
  std::vector<FramePotentialEstimate> out;
  for (std::size_t i = 0; i < ts.size(); i++) {
    detail::Moments acc;
    for (std::size_t s = 0; s < shards; s++) acc.merge(parts[s][i]);
    out.push_back({ts[i], static_cast<double>(acc.mean), acc.stderr_of_mean(), acc.n, FpMethod::kMcPairwise});
  }
  return out;
}

inline FramePotentialEstimate frame_potential_mc(const TwirlEnsemble& a, const TwirlEnsemble& b, std::size_t t,
                                                 std::uint64_t m_samples, std::uint64_t seed, std::size_t threads = 1) {
  return frame_potential_mc(a, b, std::vector<std::size_t>{t}, m_samples, seed, threads)[0];
}

// F_t = (1/|G|) sum_W |tr W|^{2t}, valid for groups by right invariance.
inline FramePotentialEstimate frame_potential_group_sum(const TwirlEnsemble& g, std::size_t t,
                                                        std::size_t guard = 10000000) {
  if (!g.is_finite()) throw std::invalid_argument("group sum needs a finite ensemble");
  if (g.size() > guard) throw ResourceGuardError("group has " + std::to_string(g.size()) + " elements");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  long double s = 0;
  for (std::size_t i = 0; i < g.size(); i++) {
    double x = g.is_clifford() ? trace_abs2(g.clifford_element(i)) : std::norm(trace(g.element(i)));
    s += std::pow(static_cast<long double>(x), t);
  }
  return {t, static_cast<double>(s / g.size()), 0.0, g.size(), FpMethod::kGroupSumExact};
}

// Spot check that products of random pairs stay in the list (mod phase).
inline bool spot_check_closure(const TwirlEnsemble& g, std::size_t checks, Rng& rng) {
  if (!g.is_finite()) return true;
  std::uniform_int_distribution<std::size_t> d(0, g.size() - 1);
  if (g.is_clifford()) {
    std::unordered_set<CliffordTableau> set;
    for (std::size_t i = 0; i < g.size(); i++) set.insert(g.clifford_element(i));
    for (std::size_t k = 0; k < checks; k++)
      if (!set.count(compose(g.clifford_element(d(rng)), g.clifford_element(d(rng))))) return false;
    return true;
  }
  for (std::size_t k = 0; k < checks; k++) {
    DenseMatrix p = g.element(d(rng)) * g.element(d(rng));
    bool found = false;
    for (std::size_t i = 0; i < g.size() && !found; i++)
      found = std::abs(std::abs(trace_a_bdag(p, g.element(i))) - static_cast<double>(g.dim())) < 1e-8;
    if (!found) return false;
  }
  return true;
}

// Phi_t(L) = E[U^{(x)t} L U^{dagger (x)t}]: exact for finite lists, else an
// average of m_samples draws.
inline DenseMatrix apply_twirl(const TwirlEnsemble& e, std::size_t t, const DenseMatrix& l, std::uint64_t m_samples,
                               std::uint64_t seed) {
  std::size_t expect = 1;
  for (std::size_t k = 0; k < t; k++) expect *= e.dim();
  if (l.rows() != expect || l.cols() != expect) throw DimensionError("operator dimension does not match t copies");
  DenseMatrix acc(l.rows(), l.cols());
  if (e.is_finite()) {
    for (std::size_t i = 0; i < e.size(); i++) acc += conjugate_tensor_power(l, e.element(i), t);
    acc *= 1.0 / static_cast<double>(e.size());
    return acc;
  }
  Rng rng = detail::shard_rng(seed, 0);
  for (std::uint64_t k = 0; k < m_samples; k++) acc += conjugate_tensor_power(l, e.draw_dense(rng), t);
  acc *= 1.0 / static_cast<double>(m_samples);
  return acc;
}

// ---- D-channel in the standard frame ----

struct DStage {
  std::string name;
  std::vector<std::size_t> qubits;       // qubits of one copy
  std::vector<DenseMatrix> unitaries;    // uniform mixture
};

struct DChannel {
  StandardForm sf;
  DenseMatrix w;  // dense W
  bool exact_d3 = true;
  std::vector<DStage> stages;
};

// Stages in order: D1 (S^mu per A2 qubit), D2 (CZ^nu per A2 pair), D3 (average
// over C_{n3}, exact for n3 <= 2), D4 (controlled Paulis per A2 qubit).
inline DChannel build_d_channel(const StandardForm& sf, std::size_t mc_for_d3, std::uint64_t seed) {
  const std::size_t n = sf.num_qubits(), a2 = sf.a2_begin(), a3 = sf.a3_begin();
  if (3 * n > 12) throw ResourceGuardError("D-channel needs 3n <= 12 qubits");
  DChannel dc{sf, to_matrix(sf.w), sf.n3 <= 2, {}};
  for (std::size_t j = 0; j < sf.n2; j++) {
    DStage st{"D1", {a2 + j}, {}};
    for (int mu = 0; mu < 4; mu++) {
      DenseMatrix s = DenseMatrix::identity(2);
      s(1, 1) = detail::i_pow(static_cast<unsigned>(mu));
      st.unitaries.push_back(s);
    }
    dc.stages.push_back(std::move(st));
  }
  for (std::size_t j = 0; j < sf.n2; j++)
    for (std::size_t k = j + 1; k < sf.n2; k++) {
      DStage st{"D2", {a2 + j, a2 + k}, {DenseMatrix::identity(4), to_matrix(cz(2, 0, 1))}};
      dc.stages.push_back(std::move(st));
    }
  std::vector<std::size_t> a3q;
  for (std::size_t q = a3; q < n; q++) a3q.push_back(q);
  if (sf.n3) {
    DStage st{"D3", a3q, {}};
    if (dc.exact_d3) {
      for (const auto& c : enumerate_cliffords(sf.n3)) st.unitaries.push_back(to_matrix(c));
    } else {
      Rng rng = detail::shard_rng(seed, 0xD3);
      for (std::size_t k = 0; k < mc_for_d3; k++) st.unitaries.push_back(to_matrix(random_clifford(sf.n3, rng)));
    }
    dc.stages.push_back(std::move(st));
  }
  if (sf.n3) {
    for (std::size_t j = 0; j < sf.n2; j++) {
      DStage st{"D4", {a2 + j}, {}};
      st.qubits.insert(st.qubits.end(), a3q.begin(), a3q.end());
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (2 * sf.n3)); idx++) {
        PauliOp q = embed_pauli(detail::pauli_from_index(idx, sf.n3), 1 + sf.n3, 1);
        st.unitaries.push_back(q.is_identity_up_to_phase() ? DenseMatrix::identity(std::size_t{1} << (1 + sf.n3))
                                                           : to_matrix(controlled_pauli(0, q)));
      }
      dc.stages.push_back(std::move(st));
    }
  }
  return dc;
}

inline DenseMatrix apply_d(const DChannel& dc, const DenseMatrix& l) {
  const std::size_t n = dc.sf.num_qubits();
  const std::size_t dim = std::size_t{1} << (3 * n);
  if (l.rows() != dim || l.cols() != dim) throw DimensionError("operator must act on three copies");
  DenseMatrix cur = conjugate_tensor_power(l, dc.w, 3);
  for (const auto& st : dc.stages) {
    DenseMatrix acc(dim, dim);
    for (const auto& u : st.unitaries) {
      DenseMatrix x = cur;
      for (std::size_t c = 0; c < 3; c++) {
        std::vector<std::size_t> qs;
        for (auto q : st.qubits) qs.push_back(c * n + q);
        x = conjugate_local(x, u, qs, 3 * n);
      }
      acc += x;
    }
    acc *= 1.0 / static_cast<double>(st.unitaries.size());
    cur = std::move(acc);
  }
  return conjugate_tensor_power(cur, dagger(dc.w), 3);
}

// ---- classification and certification ----

struct ClassifyReport {
  bool pauli_equivalent = false;
  PauliSubgroup q;
};

inline ClassifyReport classify_symmetry(const SymmetrySpec& spec, double tol = 1e-10, std::size_t cap = 8) {
  if (spec.n > cap) throw ResourceGuardError("classification limited to " + std::to_string(cap) + " qubits");
  ClassifyReport r;
  if (spec.kind == SymmetrySpec::Kind::kPauli) {
    r.q = pauli_support_of_unitary_group(spec.n, spec.pauli.generators());
  } else {
    Rng rng(0xC1A55);
    r.q = pauli_support_of_unitary_group(sample_group_elements(spec, 8, rng), tol);
  }
  r.pauli_equivalent = equal_constraints(spec, SymmetrySpec::pauli_spec(r.q));
  return r;
}

// Tableau sampler of the symmetric Clifford group for supported specs.
inline TwirlEnsemble symmetric_clifford_sampler(const SymmetrySpec& spec) {
  switch (spec.kind) {
    case SymmetrySpec::Kind::kPauli: {
      StandardForm sf = canonicalize(spec.pauli);
      return TwirlEnsemble::clifford_sampler(
          spec.n, [sf](Rng& rng) { return sample_pauli_symmetric(sf, rng).to_tableau(); }, spec.tag());
    }
    case SymmetrySpec::Kind::kU1: {
      std::size_t n = spec.n;
      return TwirlEnsemble::clifford_sampler(n, [n](Rng& rng) { return sample_u1(n, rng); }, spec.tag());
    }
    case SymmetrySpec::Kind::kSU2: {
      std::size_t n = spec.n;
      return TwirlEnsemble::clifford_sampler(n, [n](Rng& rng) { return sample_su2(n, rng); }, spec.tag());
    }
    case SymmetrySpec::Kind::kCustom: break;
  }
  throw UnsupportedSpecError("no symmetric Clifford sampler for custom symmetries");
}

enum class Verdict { kDesign, kNotDesign, kInconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kDesign: return "design";
    case Verdict::kNotDesign: return "not_design";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "";
}

struct DesignThresholds {
  double design_sigma = 3.0;
  double not_design_sigma = 5.0;
};

inline Verdict judge(double estimate, double stderr_, double analytic, DesignThresholds th = {}) {
  const double diff = estimate - analytic;
  const double slack = 1e-9 * std::max(1.0, std::abs(analytic));
  if (std::abs(diff) <= th.design_sigma * stderr_ + slack) return Verdict::kDesign;
  if (diff > th.not_design_sigma * stderr_ + slack) return Verdict::kNotDesign;
  return Verdict::kInconclusive;
}

struct CertifyRow {
  FramePotentialEstimate f_clifford;
  double f_haar_analytic = 0;
  Verdict verdict = Verdict::kInconclusive;
};

inline std::vector<CertifyRow> certify_design(const SymmetrySpec& spec, const std::vector<std::size_t>& ts,
                                              std::uint64_t budget, std::uint64_t seed, std::size_t threads = 1,
                                              DesignThresholds th = {}) {
  TwirlEnsemble ens = symmetric_clifford_sampler(spec);
  BlockDecomposition bd = block_decompose(spec);
  auto est = frame_potential_mc(ens, ens, ts, budget, seed, threads);
  std::vector<CertifyRow> rows;
  for (const auto& e : est) {
    double exact = analytic_frame_potential(bd, e.t).convert_to<double>();
    rows.push_back({e, exact, judge(e.value, e.stderr_, exact, th)});
  }
  return rows;
}

}  // namespace symclif
