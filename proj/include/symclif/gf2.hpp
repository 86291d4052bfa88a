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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "symclif/errors.hpp"

namespace symclif {

// Fixed-length bit vector packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  // Index of the lowest set bit, or size() when empty.
  std::size_t first_set() const {
    for (std::size_t k = 0; k < words_.size(); k++)
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    return n_;
  }

  BitVector& operator^=(const BitVector& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); k++) words_[k] ^= o.words_[k];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); k++) words_[k] &= o.words_[k];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  // Parity of popcount(a & b).
  static bool dot(const BitVector& a, const BitVector& b) {
    a.check(b);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < a.words_.size(); k++) acc ^= a.words_[k] & b.words_[k];
    return std::popcount(acc) & 1;
  }
  static std::size_t and_popcount(const BitVector& a, const BitVector& b) {
    a.check(b);
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.words_.size(); k++) c += std::popcount(a.words_[k] & b.words_[k]);
    return c;
  }

  // Lexicographic order by bit index (bit 0 most significant), for sets and sorting.
  bool operator<(const BitVector& o) const {
    for (std::size_t i = 0; i < n_ && i < o.n_; i++)
      if (get(i) != o.get(i)) return o.get(i);
    return n_ < o.n_;
  }
  bool operator==(const BitVector& o) const = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h << 6) + (h >> 2));
    return h;
  }

 private:
  void check(const BitVector& o) const {
    if (n_ != o.n_) throw DimensionError("bit vector length mismatch");
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

namespace gf2 {

// Reduced row-echelon form in place: zero rows removed, rows sorted by pivot,
// each pivot column cleared in every other row. Returns the pivot columns.
inline std::vector<std::size_t> rref(std::vector<BitVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows[0].size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); c++) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].get(c)) sel++;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t k = 0; k < rows.size(); k++)
      if (k != r && rows[k].get(c)) rows[k] ^= rows[r];
    pivots.push_back(c);
    r++;
  }
  rows.resize(r);
  return pivots;
}

inline std::size_t rank(std::vector<BitVector> rows) { return rref(rows).size(); }

// Reduces v against RREF rows; returns the residual (zero iff v is in the span).
inline BitVector reduce(const std::vector<BitVector>& rref_rows, const std::vector<std::size_t>& pivots, BitVector v) {
  for (std::size_t k = 0; k < rref_rows.size(); k++)
    if (v.get(pivots[k])) v ^= rref_rows[k];
  return v;
}

// Basis of {x : A x = 0} for A given by rows (each of length cols).
inline std::vector<BitVector> nullspace(std::vector<BitVector> a, std::size_t cols) {
  auto piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < cols; f++) {
    if (is_pivot[f]) continue;
    BitVector x(cols);
    x.set(f, true);
    for (std::size_t k = 0; k < a.size(); k++)
      if (a[k].get(f)) x.set(piv[k], true);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace gf2
}  // namespace symclif

template <>
struct std::hash<symclif::BitVector> {
  std::size_t operator()(const symclif::BitVector& b) const { return b.hash(); }
};
