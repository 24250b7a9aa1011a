/*
 * Copyright 2026 The SOTE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dense matrices and vectors over Z_q with q = 2^w, plus the gadget,
// Kronecker, vec and linearisation operators.

#ifndef SOTE_RING_HPP_
#define SOTE_RING_HPP_

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sote/error.hpp"

namespace sote {

using u128 = unsigned __int128;
using i128 = __int128;

template <class W>
concept Word = std::same_as<W, std::uint64_t> || std::same_as<W, u128>;

template <Word W>
inline constexpr unsigned kWordBits = sizeof(W) * 8;

template <Word W>
constexpr W low_mask(unsigned w) {
  return w >= kWordBits<W> ? ~W{0} : (W{1} << w) - 1;
}

template <Word W>
inline void check_width(unsigned w) {
  require(w >= 1 && w <= kWordBits<W>, ErrorCode::kParameter,
          "modulus width " + std::to_string(w) + " does not fit the word type");
}

template <Word W>
constexpr W reduce(W v, unsigned w) {
  return v & low_mask<W>(w);
}

// Bit counts that also accept u128 outside GNU dialect modes.
template <Word W>
constexpr unsigned word_popcount(W v) {
  if constexpr (sizeof(W) == 8) {
    return static_cast<unsigned>(std::popcount(v));
  } else {
    return static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(v)) +
                                 std::popcount(static_cast<std::uint64_t>(v >> 64)));
  }
}

template <Word W>
constexpr unsigned word_countr_zero(W v) {
  if constexpr (sizeof(W) == 8) {
    return static_cast<unsigned>(std::countr_zero(v));
  } else {
    const auto lo = static_cast<std::uint64_t>(v);
    return lo != 0 ? static_cast<unsigned>(std::countr_zero(lo))
                   : 64 + static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(v >> 64)));
  }
}

template <Word W>
constexpr W from_signed(std::int64_t v, unsigned w) {
  return static_cast<W>(v) & low_mask<W>(w);
}

// Signed representative in [-q/2, q/2).
template <Word W>
constexpr i128 signed_value(W v, unsigned w) {
  v &= low_mask<W>(w);
  if (w == 128) return static_cast<i128>(v);
  const W half = W{1} << (w - 1);
  if (v < half) return static_cast<i128>(v);
  return static_cast<i128>(v) - (static_cast<i128>(1) << w);
}

template <Word W>
constexpr W signed_abs(W v, unsigned w) {
  v &= low_mask<W>(w);
  const W half = W{1} << (w - 1);
  return v < half ? v : reduce<W>(W{0} - v, w);
}

template <Word W>
class Vector;

template <Word W>
class Matrix {
 public:
  using word_type = W;

  Matrix() = default;
  Matrix(unsigned w, std::size_t rows, std::size_t cols)
      : w_(w), rows_(rows), cols_(cols), data_(rows * cols, W{0}) {
    check_width<W>(w);
  }
  Matrix(unsigned w, std::size_t rows, std::size_t cols, std::vector<W> entries)
      : w_(w), rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_width<W>(w);
    require(data_.size() == rows * cols, ErrorCode::kDimension,
            "entry count does not match shape");
    reduce_all();
  }

  static Matrix identity(unsigned w, std::size_t n) {
    Matrix m(w, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  unsigned w() const { return w_; }
  W mask() const { return low_mask<W>(w_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  W operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, W v) { data_[i * cols_ + j] = v & mask(); }

  std::span<const W> entries() const { return data_; }
  std::span<const W> row(std::size_t i) const {
    return std::span<const W>(data_).subspan(i * cols_, cols_);
  }

  // Raw access for kernels; callers restore the invariant with reduce_all().
  W* raw() { return data_.data(); }
  const W* raw() const { return data_.data(); }
  void reduce_all() {
    const W m = mask();
    for (W& v : data_) v &= m;
  }

  bool operator==(const Matrix& o) const {
    return w_ == o.w_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  unsigned w_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<W> data_;
};

template <Word W>
class Vector {
 public:
  using word_type = W;

  Vector() = default;
  Vector(unsigned w, std::size_t n) : w_(w), data_(n, W{0}) { check_width<W>(w); }
  Vector(unsigned w, std::vector<W> entries) : w_(w), data_(std::move(entries)) {
    check_width<W>(w);
    reduce_all();
  }

  static Vector from_signed(unsigned w, std::span<const std::int64_t> values) {
    Vector v(w, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      v.data_[i] = sote::from_signed<W>(values[i], w);
    }
    return v;
  }

  unsigned w() const { return w_; }
  W mask() const { return low_mask<W>(w_); }
  std::size_t size() const { return data_.size(); }

  W operator[](std::size_t i) const { return data_[i]; }
  void set(std::size_t i, W v) { data_[i] = v & mask(); }

  std::span<const W> entries() const { return data_; }
  W* raw() { return data_.data(); }
  const W* raw() const { return data_.data(); }
  void reduce_all() {
    const W m = mask();
    for (W& v : data_) v &= m;
  }

  Vector slice(std::size_t offset, std::size_t len) const {
    require(offset + len <= data_.size(), ErrorCode::kDimension, "slice out of range");
    return Vector(w_, std::vector<W>(data_.begin() + offset, data_.begin() + offset + len));
  }

  Matrix<W> as_column() const { return Matrix<W>(w_, data_.size(), 1, data_); }
  Matrix<W> as_row() const { return Matrix<W>(w_, 1, data_.size(), data_); }

  static Vector from_matrix(const Matrix<W>& m) {
    require(m.rows() == 1 || m.cols() == 1, ErrorCode::kDimension,
            "matrix is not a row or column");
    return Vector(m.w(), std::vector<W>(m.entries().begin(), m.entries().end()));
  }

  bool operator==(const Vector& o) const { return w_ == o.w_ && data_ == o.data_; }

 private:
  unsigned w_ = 1;
  std::vector<W> data_;
};

template <Word W>
Vector<W> concat(std::span<const Vector<W>> parts) {
  require(!parts.empty(), ErrorCode::kDimension, "concat of nothing");
  std::vector<W> out;
  for (const auto& p : parts) {
    require(p.w() == parts[0].w(), ErrorCode::kParameter, "modulus mismatch");
    out.insert(out.end(), p.entries().begin(), p.entries().end());
  }
  return Vector<W>(parts[0].w(), std::move(out));
}

template <Word W>
inline void check_same(unsigned a, unsigned b) {
  require(a == b, ErrorCode::kParameter, "modulus mismatch");
}

// ---- Elementwise arithmetic ---------------------------------------------

template <Word W>
Matrix<W> operator+(const Matrix<W>& a, const Matrix<W>& b) {
  check_same<W>(a.w(), b.w());
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kDimension,
          "shape mismatch in add");
  Matrix<W> out = a;
  W* o = out.raw();
  const W* q = b.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] += q[i];
  out.reduce_all();
  return out;
}

template <Word W>
Matrix<W> operator-(const Matrix<W>& a) {
  Matrix<W> out = a;
  W* o = out.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] = W{0} - o[i];
  out.reduce_all();
  return out;
}

template <Word W>
Matrix<W> operator-(const Matrix<W>& a, const Matrix<W>& b) {
  return a + (-b);
}

template <Word W>
Matrix<W> scale(const Matrix<W>& a, W s) {
  Matrix<W> out = a;
  W* o = out.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] *= s;
  out.reduce_all();
  return out;
}

template <Word W>
Vector<W> operator+(const Vector<W>& a, const Vector<W>& b) {
  check_same<W>(a.w(), b.w());
  require(a.size() == b.size(), ErrorCode::kDimension, "length mismatch in add");
  Vector<W> out = a;
  W* o = out.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] += b[i];
  out.reduce_all();
  return out;
}

template <Word W>
Vector<W> operator-(const Vector<W>& a) {
  Vector<W> out = a;
  W* o = out.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] = W{0} - o[i];
  out.reduce_all();
  return out;
}

template <Word W>
Vector<W> operator-(const Vector<W>& a, const Vector<W>& b) {
  return a + (-b);
}

template <Word W>
Vector<W> scale(const Vector<W>& a, W s) {
  Vector<W> out = a;
  W* o = out.raw();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] *= s;
  out.reduce_all();
  return out;
}

// ---- Products -----------------------------------------------------------

template <Word W>
Matrix<W> mat_mul(const Matrix<W>& a, const Matrix<W>& b) {
  check_same<W>(a.w(), b.w());
  require(a.cols() == b.rows(), ErrorCode::kDimension,
          "mat_mul: a.cols != b.rows (" + std::to_string(a.cols()) + " vs " +
              std::to_string(b.rows()) + ")");
  Matrix<W> out(a.w(), a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    W* o = out.raw() + i * n;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const W s = a(i, k);
      if (s == 0) continue;
      const W* br = b.raw() + k * n;
      for (std::size_t j = 0; j < n; ++j) o[j] += s * br[j];
    }
  }
  out.reduce_all();
  return out;
}

template <Word W>
Vector<W> mat_vec(const Matrix<W>& a, const Vector<W>& x) {
  check_same<W>(a.w(), x.w());
  require(a.cols() == x.size(), ErrorCode::kDimension, "mat_vec: length mismatch");
  Vector<W> out(a.w(), a.rows());
  W* o = out.raw();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const W* ar = a.raw() + i * a.cols();
    W acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += ar[j] * x[j];
    o[i] = acc;
  }
  out.reduce_all();
  return out;
}

// Row vector times matrix: x^T a.
template <Word W>
Vector<W> vec_mat(const Vector<W>& x, const Matrix<W>& a) {
  check_same<W>(a.w(), x.w());
  require(a.rows() == x.size(), ErrorCode::kDimension, "vec_mat: length mismatch");
  Vector<W> out(a.w(), a.cols());
  W* o = out.raw();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const W s = x[i];
    if (s == 0) continue;
    const W* ar = a.raw() + i * a.cols();
    for (std::size_t j = 0; j < a.cols(); ++j) o[j] += s * ar[j];
  }
  out.reduce_all();
  return out;
}

template <Word W>
Matrix<W> transpose(const Matrix<W>& a) {
  Matrix<W> out(a.w(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.raw()[j * a.rows() + i] = a(i, j);
  }
  return out;
}

template <Word W>
Matrix<W> kron(const Matrix<W>& a, const Matrix<W>& b) {
  check_same<W>(a.w(), b.w());
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  Matrix<W> out(a.w(), rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const W s = a(i, j);
      if (s == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        W* o = out.raw() + (i * b.rows() + k) * cols + j * b.cols();
        const W* br = b.raw() + k * b.cols();
        for (std::size_t l = 0; l < b.cols(); ++l) o[l] = s * br[l];
      }
    }
  }
  out.reduce_all();
  return out;
}

// Kronecker product of two column vectors: entry i*len(y)+j is x_i*y_j.
template <Word W>
Vector<W> kron(const Vector<W>& x, const Vector<W>& y) {
  check_same<W>(x.w(), y.w());
  Vector<W> out(x.w(), x.size() * y.size());
  W* o = out.raw();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) o[i * y.size() + j] = x[i] * y[j];
  }
  out.reduce_all();
  return out;
}

// ---- Gadget machinery ---------------------------------------------------

// The row (1, 2, ..., 2^{w-1}).
template <Word W>
Vector<W> gadget_row(unsigned w) {
  Vector<W> g(w, w);
  for (unsigned t = 0; t < w; ++t) g.set(t, W{1} << t);
  return g;
}

// G = I_k ⊗ g, shape k × (k·w).
template <Word W>
Matrix<W> gadget_matrix(std::size_t k, unsigned w) {
  Matrix<W> g(w, k, k * w);
  for (std::size_t a = 0; a < k; ++a) {
    for (unsigned t = 0; t < w; ++t) g.set(a, a * w + t, W{1} << t);
  }
  return g;
}

// Column-wise bit decomposition: row i*w+t of the result holds bit t of row i.
template <Word W>
Matrix<W> g_inv(const Matrix<W>& m) {
  const unsigned w = m.w();
  Matrix<W> out(w, m.rows() * w, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const W v = m(i, j);
      for (unsigned t = 0; t < w; ++t) {
        out.raw()[(i * w + t) * m.cols() + j] = (v >> t) & 1;
      }
    }
  }
  return out;
}

template <Word W>
Vector<W> g_inv(const Vector<W>& v) {
  return Vector<W>::from_matrix(g_inv(v.as_column()));
}

// Column stacking.
template <Word W>
Vector<W> vec(const Matrix<W>& m) {
  Vector<W> out(m.w(), m.size());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) out.raw()[j * m.rows() + i] = m(i, j);
  }
  return out;
}

template <Word W>
Vector<W> bits(const Matrix<W>& m) {
  return vec(g_inv(m));
}

// Lin(B)[h, j*ell + i] = B[ell*h + i, j]; B has shape (t*ell) × m.
template <Word W>
Matrix<W> linearise(const Matrix<W>& b, std::size_t t_dim, std::size_t ell_dim,
                    std::size_t m_dim) {
  require(b.rows() == t_dim * ell_dim && b.cols() == m_dim, ErrorCode::kDimension,
          "linearise: B must have shape (t*ell) x m");
  Matrix<W> out(b.w(), t_dim, m_dim * ell_dim);
  for (std::size_t h = 0; h < t_dim; ++h) {
    for (std::size_t j = 0; j < m_dim; ++j) {
      for (std::size_t i = 0; i < ell_dim; ++i) {
        out.raw()[h * out.cols() + j * ell_dim + i] = b(ell_dim * h + i, j);
      }
    }
  }
  return out;
}

// ---- Rounding and norms -------------------------------------------------

template <Word W>
W round_to_p(W x, unsigned w, unsigned p_log) {
  const unsigned shift = w - p_log;
  const W half = shift == 0 ? W{0} : W{1} << (shift - 1);
  return (reduce<W>(x + half, w) >> shift) & low_mask<W>(p_log);
}

// Output entries are residues mod p = 2^p_log.
template <Word W>
Vector<W> round_to_p(const Vector<W>& v, unsigned p_log) {
  require(p_log >= 1 && p_log <= v.w(), ErrorCode::kParameter, "p must divide q");
  Vector<W> out(p_log, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.raw()[i] = round_to_p<W>(v[i], v.w(), p_log);
  return out;
}

template <Word W>
W inf_norm(std::span<const W> entries, unsigned w) {
  W best = 0;
  for (W v : entries) best = std::max(best, signed_abs<W>(v, w));
  return best;
}

template <Word W>
W inf_norm(const Matrix<W>& m) {
  return inf_norm<W>(m.entries(), m.w());
}

template <Word W>
W inf_norm(const Vector<W>& v) {
  return inf_norm<W>(v.entries(), v.w());
}

// Lift residues into a larger (or equal) modulus without changing values.
template <Word W>
Vector<W> with_width(const Vector<W>& v, unsigned w) {
  return Vector<W>(w, std::vector<W>(v.entries().begin(), v.entries().end()));
}

}  // namespace sote

#endif  // SOTE_RING_HPP_
