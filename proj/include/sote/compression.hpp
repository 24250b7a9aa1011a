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

// Compressed lattice encodings. A compressed encoding of x is an encoding h
// of the OTE digest d = Hash(x) under authentication key r plus an OTE
// encoding of s1 ⊗ g whose final-level secret is r. Knowing x, anyone can
// expand (h, E) into a standard encoding of x under A·P^T, where P is the
// composed OTE hasher-evaluation matrix.
//
// Expansion recomputes Hash(x), so the OTE hash must be deterministic. The
// full OTE hash is, and this module depends on it.

#ifndef SOTE_COMPRESSION_HPP_
#define SOTE_COMPRESSION_HPP_

#include <utility>

#include "sote/lattice_encoding.hpp"
#include "sote/ote_full.hpp"

namespace sote {

struct CompressionKey {
  FullOtePublicKey pk;
  bool operator==(const CompressionKey&) const = default;
};

template <Word W>
struct CompressedEncoding {
  Vector<W> h;  // length n·k·w
  FullEncoding<W> e;
  bool operator==(const CompressedEncoding&) const = default;
};

namespace compression {

inline CompressionKey setup(const RingParams& params, const SeedStream& stream) {
  return {full_ote::setup(params, stream)};
}

// Length of the compressed vector x (the OTE hash input length).
inline std::size_t input_length(const CompressionKey& ck) { return ck.pk.m(); }

// Column count of A: n·k·w = n².
inline std::size_t key_width(const CompressionKey& ck) { return ck.pk.n() * ck.pk.n(); }

template <Word W>
void check_matrix(const CompressionKey& ck, const Matrix<W>& a) {
  require(a.rows() == ck.pk.params.k && a.cols() == key_width(ck) && a.w() == ck.pk.params.w,
          ErrorCode::kDimension, "compression matrix must be k x (n*k*w)");
}

// Zero-pads x to the OTE input length.
template <Word W>
Vector<W> pad_input(const CompressionKey& ck, const Vector<W>& x) {
  require(x.size() <= input_length(ck), ErrorCode::kCapacity,
          "input longer than the compression capacity");
  Vector<W> out(x.w(), input_length(ck));
  std::copy(x.entries().begin(), x.entries().end(), out.raw());
  return out;
}

// A·P^T, row by row through the implicit composed-matrix kernel.
template <Word W>
Matrix<W> expanded_matrix(const CompressionKey& ck, const Matrix<W>& a) {
  check_matrix(ck, a);
  const std::size_t cols = input_length(ck) * ck.pk.n();
  Matrix<W> out(a.w(), a.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Vector<W> row(a.w(), std::vector<W>(a.row(i).begin(), a.row(i).end()));
    const Vector<W> img = full_ote::apply_composed(ck.pk, row);
    std::copy(img.entries().begin(), img.entries().end(), out.raw() + i * cols);
  }
  return out;
}

// k·n^{2r+1}·w·B + α_full.
inline u128 error_bound(const RingParams& p) {
  const u128 n = p.n();
  const u128 lin = sat_mul(sat_mul(sat_mul(p.k, sat_pow(n, 2 * p.r + 1)), p.w), p.B);
  return sat_add(lin, full_ote::error_bound(p, 1));
}

template <Word W>
CompressedEncoding<W> compress(const CompressionKey& ck, const Matrix<W>& a, const Vector<W>& x,
                               const Vector<W>& s0, const Vector<W>& s1, const Vector<W>& r,
                               const SeedStream& stream) {
  check_matrix(ck, a);
  const RingParams& p = ck.pk.params;
  require(s0.size() == p.k && s1.size() == p.k && r.size() == p.k, ErrorCode::kDimension,
          "keys must have length k");
  const Vector<W> d = full_ote::hash(ck.pk, x).first.d;
  SeedStream noise = stream.derive("noise");
  Vector<W> h = vec_mat(s0, a) + lenc::auth_term(r, d);
  add_noise<W>(noise, std::span<W>(h.raw(), h.size()), p.B, p.w);
  auto enc = full_ote::encode(ck.pk, half_ote::gadget_expand(s1), stream.derive("ote"), r);
  return {std::move(h), std::move(enc.first)};
}

// c = h·P^T + HashEval(E, ψ) under the precomputed A·P^T.
template <Word W>
LatticeEncoding<W> expand_with(const CompressionKey& ck, const Matrix<W>& a_expanded,
                               const CompressedEncoding<W>& comp, const Vector<W>& x,
                               std::size_t enc_level = 0, std::size_t auth_level = 1) {
  require(comp.h.size() == key_width(ck), ErrorCode::kDimension,
          "compressed encoding has wrong length");
  lenc::check_shape(a_expanded, input_length(ck));
  const FullHasherState<W> state = full_ote::hash(ck.pk, x).second;
  Vector<W> c = full_ote::apply_composed(ck.pk, comp.h) + full_ote::hash_eval(ck.pk, comp.e, state);
  return {std::move(c), a_expanded, enc_level, auth_level, error_bound(ck.pk.params)};
}

template <Word W>
LatticeEncoding<W> expand(const CompressionKey& ck, const Matrix<W>& a,
                          const CompressedEncoding<W>& comp, const Vector<W>& x) {
  return expand_with(ck, expanded_matrix(ck, a), comp, x);
}

// h uniform and E from the OTE encoder simulator.
template <Word W>
CompressedEncoding<W> simulate(const CompressionKey& ck, const Matrix<W>& a,
                               const SeedStream& stream) {
  check_matrix(ck, a);
  SeedStream hs = stream.derive("h");
  return {sample_uniform_zq<W>(hs, key_width(ck), ck.pk.params.w),
          full_ote::simulate_encoding<W>(ck.pk, stream.derive("ote"))};
}

}  // namespace compression
}  // namespace sote

#endif  // SOTE_COMPRESSION_HPP_
