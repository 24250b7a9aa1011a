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

// Bit-packed binary matrices and the subset-sum ("four Russians") kernels
// used to multiply them against residue vectors and matrices.

#ifndef SOTE_BINARY_HPP_
#define SOTE_BINARY_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "sote/error.hpp"
#include "sote/ring.hpp"
#include "sote/sampling.hpp"

namespace sote {

// Rows are split into equal chunks; every chunk starts on a byte boundary.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t chunks, std::size_t chunk_bits)
      : rows_(rows), chunks_(chunks), chunk_bits_(chunk_bits),
        chunk_bytes_((chunk_bits + 7) / 8) {
    require(chunk_bits >= 1, ErrorCode::kDimension, "empty chunk");
    bytes_.assign(rows * chunks * chunk_bytes_, 0);
  }

  static BinaryMatrix sample(SeedStream& stream, std::size_t rows, std::size_t chunks,
                             std::size_t chunk_bits) {
    BinaryMatrix m(rows, chunks, chunk_bits);
    stream.read(m.bytes_);
    m.clear_padding();
    return m;
  }

  template <Word W>
  static BinaryMatrix from_matrix(const Matrix<W>& m, std::size_t chunk_bits) {
    require(chunk_bits >= 1 && m.cols() % chunk_bits == 0, ErrorCode::kDimension,
            "columns are not a multiple of the chunk width");
    BinaryMatrix out(m.rows(), m.cols() / chunk_bits, chunk_bits);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const W v = m(i, j);
        require(v <= 1, ErrorCode::kRange, "binary matrix entry is not 0/1");
        out.set(i, j, v == 1);
      }
    }
    return out;
  }

  template <Word W>
  Matrix<W> to_matrix(unsigned w) const {
    Matrix<W> out(w, rows_, cols());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols(); ++j) out.raw()[i * cols() + j] = get(i, j) ? 1 : 0;
    }
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return chunks_ * chunk_bits_; }
  std::size_t chunks() const { return chunks_; }
  std::size_t chunk_bits() const { return chunk_bits_; }
  std::size_t chunk_bytes() const { return chunk_bytes_; }
  std::size_t byte_size() const { return bytes_.size(); }

  const std::uint8_t* chunk(std::size_t row, std::size_t c) const {
    return bytes_.data() + (row * chunks_ + c) * chunk_bytes_;
  }

  bool get(std::size_t i, std::size_t j) const {
    const std::size_t c = j / chunk_bits_, o = j % chunk_bits_;
    return (chunk(i, c)[o / 8] >> (o % 8)) & 1;
  }

  void set(std::size_t i, std::size_t j, bool v) {
    const std::size_t c = j / chunk_bits_, o = j % chunk_bits_;
    std::uint8_t& b = bytes_[(i * chunks_ + c) * chunk_bytes_ + o / 8];
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << (o % 8));
    b = v ? (b | bit) : (b & ~bit);
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto b : bytes_) n += std::popcount(b);
    return n;
  }

  std::span<const std::uint8_t> bytes() const { return bytes_; }

  // Rebuilds a matrix from packed chunk bytes; padding bits must be clear.
  static BinaryMatrix from_bytes(std::size_t rows, std::size_t chunks, std::size_t chunk_bits,
                                 std::vector<std::uint8_t> bytes) {
    BinaryMatrix m(rows, chunks, chunk_bits);
    require(bytes.size() == m.bytes_.size(), ErrorCode::kDimension,
            "packed byte count does not match shape");
    m.bytes_ = std::move(bytes);
    const std::size_t tail = chunk_bits % 8;
    if (tail != 0) {
      const std::uint8_t extra = static_cast<std::uint8_t>(~((1u << tail) - 1));
      for (std::size_t c = 0; c < rows * chunks; ++c) {
        require((m.bytes_[c * m.chunk_bytes_ + m.chunk_bytes_ - 1] & extra) == 0,
                ErrorCode::kRange, "binary matrix has padding bits set");
      }
    }
    return m;
  }

  bool operator==(const BinaryMatrix&) const = default;

 private:
  void clear_padding() {
    const std::size_t tail = chunk_bits_ % 8;
    if (tail == 0) return;
    const std::uint8_t keep = static_cast<std::uint8_t>((1u << tail) - 1);
    for (std::size_t c = 0; c < rows_ * chunks_; ++c) {
      bytes_[c * chunk_bytes_ + chunk_bytes_ - 1] &= keep;
    }
  }

  std::size_t rows_ = 0;
  std::size_t chunks_ = 0;
  std::size_t chunk_bits_ = 1;
  std::size_t chunk_bytes_ = 1;
  std::vector<std::uint8_t> bytes_;
};

// table[g][b] = sum of u[8g + j] over the set bits j of b. Sums wrap mod 2^64
// or 2^128; callers reduce mod q at the end.
template <Word W>
class SubsetSumTable {
 public:
  SubsetSumTable() = default;
  SubsetSumTable(const W* u, std::size_t len) { assign(u, len); }

  void assign(const W* u, std::size_t len) {
    groups_ = (len + 7) / 8;
    table_.resize(groups_ * 256);
    for (std::size_t g = 0; g < groups_; ++g) {
      W* t = table_.data() + g * 256;
      W base[8];
      for (std::size_t j = 0; j < 8; ++j) base[j] = 8 * g + j < len ? u[8 * g + j] : W{0};
      t[0] = 0;
      for (unsigned b = 1; b < 256; ++b) t[b] = t[b & (b - 1)] + base[std::countr_zero(b)];
    }
  }

  W dot(const std::uint8_t* bytes) const {
    W acc = 0;
    const W* t = table_.data();
    for (std::size_t g = 0; g < groups_; ++g, t += 256) acc += t[bytes[g]];
    return acc;
  }

  std::size_t groups() const { return groups_; }

 private:
  std::size_t groups_ = 0;
  std::vector<W> table_;
};

// a (single chunk, rows × cols) times a residue vector x of length cols.
template <Word W>
Vector<W> binary_mat_vec(const BinaryMatrix& a, const Vector<W>& x) {
  require(a.chunks() == 1 && a.cols() == x.size(), ErrorCode::kDimension,
          "binary_mat_vec: length mismatch");
  SubsetSumTable<W> table(x.raw(), x.size());
  Vector<W> out(x.w(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.raw()[i] = table.dot(a.chunk(i, 0));
  out.reduce_all();
  return out;
}

// a^T · u for a single-chunk binary a (n × m) and dense u (n × N).
template <Word W>
Matrix<W> binary_transpose_mul(const BinaryMatrix& a, const Matrix<W>& u) {
  require(a.chunks() == 1 && a.rows() == u.rows(), ErrorCode::kDimension,
          "binary_transpose_mul: shape mismatch");
  const std::size_t n = a.rows(), m = a.cols(), cols = u.cols();
  const std::size_t groups = (n + 7) / 8;
  std::vector<std::uint8_t> at(m * groups, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (a.get(r, c)) at[c * groups + r / 8] |= static_cast<std::uint8_t>(1u << (r % 8));
    }
  }
  Matrix<W> out(u.w(), m, cols);
  constexpr std::size_t kBlock = 256;
  std::vector<W> table(256 * kBlock);
  for (std::size_t j0 = 0; j0 < cols; j0 += kBlock) {
    const std::size_t jb = std::min(kBlock, cols - j0);
    for (std::size_t g = 0; g < groups; ++g) {
      std::fill(table.begin(), table.begin() + jb, W{0});
      for (unsigned b = 1; b < 256; ++b) {
        W* dst = table.data() + b * kBlock;
        const W* prev = table.data() + (b & (b - 1)) * kBlock;
        const std::size_t r = 8 * g + std::countr_zero(b);
        if (r < n) {
          const W* src = u.raw() + r * cols + j0;
          for (std::size_t j = 0; j < jb; ++j) dst[j] = prev[j] + src[j];
        } else {
          std::memcpy(dst, prev, jb * sizeof(W));
        }
      }
      for (std::size_t c = 0; c < m; ++c) {
        const std::uint8_t b = at[c * groups + g];
        if (b == 0) continue;
        W* dst = out.raw() + c * cols + j0;
        const W* src = table.data() + b * kBlock;
        for (std::size_t j = 0; j < jb; ++j) dst[j] += src[j];
      }
    }
  }
  out.reduce_all();
  return out;
}

}  // namespace sote

#endif  // SOTE_BINARY_HPP_
