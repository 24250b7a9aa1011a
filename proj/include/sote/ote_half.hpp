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

// Half-succinct oblivious tensor evaluation for Z_q^m ⊗ Z_q^ell.
//
//   Hash:    d = A x
//   Enc:     C = A^T (B (I ⊗ s ⊗ g^T) + E') + Ê + I_m ⊗ y^T
//   HashEval v = C^T x,   EncEval w = -(I ⊗ s^T ⊗ g) B^T d
//
// with v + w = x ⊗ y + Ẽ^T x.

#ifndef SOTE_OTE_HALF_HPP_
#define SOTE_OTE_HALF_HPP_

#include <optional>
#include <type_traits>
#include <utility>

#include "sote/binary.hpp"
#include "sote/bounds.hpp"
#include "sote/params.hpp"
#include "sote/ring.hpp"
#include "sote/sampling.hpp"

namespace sote {

struct HalfOtePublicKey {
  RingParams params;
  std::size_t m = 0;
  std::size_t ell = 0;
  BinaryMatrix a;  // n × m
  BinaryMatrix b;  // n × (m·ell·n), one chunk per block of n columns

  std::size_t n() const { return params.n(); }
  bool operator==(const HalfOtePublicKey&) const = default;
};

template <Word W>
struct HalfDigest {
  Vector<W> d;
  bool operator==(const HalfDigest&) const = default;
};

template <Word W>
struct HalfHasherState {
  Vector<W> x;
  bool operator==(const HalfHasherState&) const = default;
};

template <Word W>
struct HalfEncoding {
  Matrix<W> c;
  bool operator==(const HalfEncoding&) const = default;
};

template <Word W>
struct HalfEncoderSecret {
  Vector<W> s;
  bool operator==(const HalfEncoderSecret&) const = default;
};

namespace half_ote {

inline constexpr std::size_t kMaxPublicBits = std::size_t{1} << 38;

inline HalfOtePublicKey setup(const RingParams& params, std::size_t m, std::size_t ell,
                              const SeedStream& stream) {
  check_ring_params(params);
  require(m >= 1 && ell >= 1, ErrorCode::kParameter, "m and ell must be positive");
  const std::size_t n = params.n();
  require(m <= kMaxPublicBits / ell && m * ell <= kMaxPublicBits / (n * n),
          ErrorCode::kParameter, "public key shape exceeds the declared limit");
  HalfOtePublicKey pk;
  pk.params = params;
  pk.m = m;
  pk.ell = ell;
  SeedStream sa = stream.derive("A");
  SeedStream sb = stream.derive("B");
  pk.a = BinaryMatrix::sample(sa, n, 1, m);
  pk.b = BinaryMatrix::sample(sb, n, m * ell, n);
  return pk;
}

// s ⊗ g^T, length k·w.
template <Word W>
Vector<W> gadget_expand(const Vector<W>& s) {
  return kron(s, gadget_row<W>(s.w()));
}

template <Word W>
void check_secret(const HalfOtePublicKey& pk, const Vector<W>& s) {
  require(s.size() == pk.params.k && s.w() == pk.params.w, ErrorCode::kDimension,
          "encoder secret must have length k");
}

template <Word W>
std::pair<HalfDigest<W>, HalfHasherState<W>> hash(const HalfOtePublicKey& pk,
                                                  const Vector<W>& x) {
  require(x.size() == pk.m && x.w() == pk.params.w, ErrorCode::kDimension,
          "hash input must have length m");
  return {HalfDigest<W>{binary_mat_vec(pk.a, x)}, HalfHasherState<W>{x}};
}

// Z = B (I_{m·ell} ⊗ u) for u of length n; shape n × (m·ell).
template <Word W>
Matrix<W> expand_secret(const HalfOtePublicKey& pk, const Vector<W>& u) {
  const std::size_t n = pk.n(), cols = pk.m * pk.ell;
  SubsetSumTable<W> table(u.raw(), u.size());
  Matrix<W> z(pk.params.w, n, cols);
  for (std::size_t r = 0; r < n; ++r) {
    W* dst = z.raw() + r * cols;
    for (std::size_t j = 0; j < cols; ++j) dst[j] = table.dot(pk.b.chunk(r, j));
  }
  z.reduce_all();
  return z;
}

template <Word W>
std::pair<HalfEncoding<W>, HalfEncoderSecret<W>> encode(
    const HalfOtePublicKey& pk, const Vector<W>& y, const SeedStream& stream,
    const std::optional<HalfEncoderSecret<std::type_identity_t<W>>>& fixed_secret = std::nullopt) {
  const RingParams& p = pk.params;
  require(y.size() == pk.ell && y.w() == p.w, ErrorCode::kDimension,
          "encoded payload must have length ell");
  HalfEncoderSecret<W> sec;
  if (fixed_secret) {
    check_secret(pk, fixed_secret->s);
    sec = *fixed_secret;
  } else {
    SeedStream ss = stream.derive("s");
    sec.s = sample_uniform_zq<W>(ss, p.k, p.w);
  }
  Matrix<W> u = expand_secret(pk, gadget_expand(sec.s));
  SeedStream se1 = stream.derive("E1");
  add_noise<W>(se1, std::span<W>(u.raw(), u.size()), p.B, p.w);
  Matrix<W> c = binary_transpose_mul(pk.a, u);
  SeedStream se2 = stream.derive("E2");
  add_noise<W>(se2, std::span<W>(c.raw(), c.size()), p.B, p.w);
  const std::size_t cols = pk.m * pk.ell;
  for (std::size_t a = 0; a < pk.m; ++a) {
    for (std::size_t b = 0; b < pk.ell; ++b) c.raw()[a * cols + a * pk.ell + b] += y[b];
  }
  c.reduce_all();
  return {HalfEncoding<W>{std::move(c)}, std::move(sec)};
}

template <Word W>
void check_encoding(const HalfOtePublicKey& pk, const HalfEncoding<W>& enc) {
  require(enc.c.rows() == pk.m && enc.c.cols() == pk.m * pk.ell && enc.c.w() == pk.params.w,
          ErrorCode::kDimension, "encoding must have shape m x (m*ell)");
}

// v = C^T x.
template <Word W>
Vector<W> hash_eval(const HalfOtePublicKey& pk, const HalfEncoding<W>& enc,
                    const HalfHasherState<W>& state) {
  check_encoding(pk, enc);
  require(state.x.size() == pk.m, ErrorCode::kDimension, "hasher state must have length m");
  return vec_mat(state.x, enc.c);
}

// w = -(I ⊗ s^T ⊗ g) B^T d, computed as -Σ_r d_r · (row r of B(I ⊗ s ⊗ g^T)).
template <Word W>
Vector<W> enc_eval(const HalfOtePublicKey& pk, const HalfDigest<W>& dig,
                   const HalfEncoderSecret<W>& sec) {
  check_secret(pk, sec.s);
  const std::size_t n = pk.n(), cols = pk.m * pk.ell;
  require(dig.d.size() == n, ErrorCode::kDimension, "digest must have length n");
  const Vector<W> u = gadget_expand(sec.s);
  SubsetSumTable<W> table(u.raw(), u.size());
  Vector<W> out(pk.params.w, cols);
  W* acc = out.raw();
  for (std::size_t r = 0; r < n; ++r) {
    const W dr = dig.d[r];
    if (dr == 0) continue;
    for (std::size_t h = 0; h < cols; ++h) acc[h] += dr * table.dot(pk.b.chunk(r, h));
  }
  for (std::size_t h = 0; h < cols; ++h) acc[h] = W{0} - acc[h];
  out.reduce_all();
  return out;
}

// P·z for P = Lin(-B^T), without materialising P: (P z)[h] = -Σ_j <B[j, h·n:(h+1)·n], z_j>.
template <Word W>
Vector<W> apply_public_matrix(const HalfOtePublicKey& pk, const Vector<W>& z) {
  const std::size_t n = pk.n(), cols = pk.m * pk.ell;
  require(z.size() == n * n, ErrorCode::kDimension, "P expects a vector of length n*n");
  Vector<W> out(z.w(), cols);
  W* acc = out.raw();
  SubsetSumTable<W> table;
  for (std::size_t j = 0; j < n; ++j) {
    table.assign(z.raw() + j * n, n);
    for (std::size_t h = 0; h < cols; ++h) acc[h] += table.dot(pk.b.chunk(j, h));
  }
  for (std::size_t h = 0; h < cols; ++h) acc[h] = W{0} - acc[h];
  out.reduce_all();
  return out;
}

// Explicit P = Lin(-B^T) of shape (m·ell) × (n·n); small shapes only.
template <Word W>
Matrix<W> public_matrix(const HalfOtePublicKey& pk) {
  const std::size_t n = pk.n();
  require(pk.b.rows() * pk.b.cols() <= (std::size_t{1} << 26), ErrorCode::kCapacity,
          "public matrix too large to materialise");
  const Matrix<W> bt = -transpose(pk.b.to_matrix<W>(pk.params.w));
  return linearise(bt, pk.m * pk.ell, n, n);
}

template <Word W>
HalfEncoding<W> simulate_encoding(const HalfOtePublicKey& pk, const SeedStream& stream) {
  SeedStream s = stream.derive("sim");
  return HalfEncoding<W>{sample_uniform_matrix<W>(s, pk.m, pk.m * pk.ell, pk.params.w)};
}

// m·(n+1)·B·||x||∞.
inline u128 error_bound(const RingParams& p, std::size_t m, u128 x_norm) {
  return sat_mul(sat_mul(sat_mul(m, p.n() + 1), p.B), x_norm);
}

}  // namespace half_ote
}  // namespace sote

#endif  // SOTE_OTE_HALF_HPP_
