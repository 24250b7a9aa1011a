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

// Non-interactive matrix oblivious linear evaluation on top of the fully
// succinct OTE: hash x = bits(vec(M^T)), encode y ⊗ g, and recombine the
// x ⊗ (y ⊗ g) shares with Lin(I) into shares of M·y.

#ifndef SOTE_MOLE_HPP_
#define SOTE_MOLE_HPP_

#include <optional>
#include <utility>

#include "sote/ote_full.hpp"

namespace sote {

template <Word W>
struct MoleDigest {
  std::size_t rows = 0;
  std::size_t cols = 0;
  FullDigest<W> digest;
  bool operator==(const MoleDigest&) const = default;
};

template <Word W>
struct MoleHasherState {
  std::size_t rows = 0;
  std::size_t cols = 0;
  FullHasherState<W> state;
  bool operator==(const MoleHasherState&) const = default;
};

template <Word W>
struct MoleEncoding {
  std::size_t cols = 0;
  ExactEncoding<W> enc;  // mask_seed is set only in exact mode
  bool operator==(const MoleEncoding&) const = default;
};

template <Word W>
struct MoleEncoderSecret {
  std::size_t cols = 0;
  ExactSecret<W> sec;
  bool operator==(const MoleEncoderSecret&) const = default;
};

namespace mole {

inline FullOtePublicKey setup(const RingParams& params, const SeedStream& stream) {
  return full_ote::setup(params, stream);
}

inline std::size_t capacity(const FullOtePublicKey& pk) { return pk.m(); }

inline void check_capacity(const FullOtePublicKey& pk, std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, ErrorCode::kDimension, "empty matrix");
  require(rows * cols * pk.params.w <= capacity(pk), ErrorCode::kCapacity,
          "bits(vec(M^T)) exceeds the OTE input length t^r*n");
}

// bits(vec(M^T)) zero-padded to t^r·n; entry (i·cols + j)·w + b is bit b of M[i, j].
template <Word W>
Vector<W> hash_payload(const FullOtePublicKey& pk, const Matrix<W>& m) {
  check_capacity(pk, m.rows(), m.cols());
  const unsigned w = pk.params.w;
  require(m.w() == w, ErrorCode::kDimension, "matrix width does not match params");
  Vector<W> x(w, capacity(pk));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const W v = m(i, j);
      W* dst = x.raw() + (i * m.cols() + j) * w;
      for (unsigned b = 0; b < w; ++b) dst[b] = (v >> b) & 1;
    }
  }
  return x;
}

// y ⊗ g, entry j·w + b is y_j·2^b.
template <Word W>
Vector<W> encode_payload(const Vector<W>& y) {
  return kron(y, gadget_row<W>(y.w()));
}

template <Word W>
std::pair<MoleDigest<W>, MoleHasherState<W>> hash(const FullOtePublicKey& pk,
                                                  const Matrix<W>& m) {
  auto [d, st] = full_ote::hash(pk, hash_payload(pk, m));
  return {MoleDigest<W>{m.rows(), m.cols(), std::move(d)},
          MoleHasherState<W>{m.rows(), m.cols(), std::move(st)}};
}

template <Word W>
std::pair<MoleEncoding<W>, MoleEncoderSecret<W>> encode(const FullOtePublicKey& pk,
                                                        const Vector<W>& y,
                                                        const SeedStream& stream) {
  require(y.w() == pk.params.w && y.size() >= 1, ErrorCode::kDimension,
          "MOLE payload must be a non-empty vector over Z_q");
  auto [enc, sec] = full_ote::encode_blocks(pk, encode_payload(y), stream.derive("payload"));
  return {MoleEncoding<W>{y.size(), {std::move(enc), std::nullopt}},
          MoleEncoderSecret<W>{y.size(), {std::move(sec), std::nullopt}}};
}

// Exact mode: y over Z_p, payload (Δ·y) ⊗ g, shared rerandomization seed.
template <Word W>
std::pair<MoleEncoding<W>, MoleEncoderSecret<W>> exact_encode(const FullOtePublicKey& pk,
                                                              const Vector<W>& y,
                                                              const SeedStream& stream,
                                                              bool rerandomize = true) {
  const RingParams& p = pk.params;
  require(y.w() == p.p_log, ErrorCode::kDimension, "exact MOLE payload must be over Z_p");
  Vector<W> scaled(p.w, y.size());
  for (std::size_t i = 0; i < y.size(); ++i) scaled.raw()[i] = y[i] << p.delta_log();
  scaled.reduce_all();
  auto [enc, sec] = encode(pk, scaled, stream);
  if (rerandomize) {
    SeedStream s = stream.derive("mask");
    const Seed seed = s.next_seed();
    enc.enc.mask_seed = seed;
    sec.sec.mask_seed = seed;
  }
  return {std::move(enc), std::move(sec)};
}

// out[i] = Σ_c z[(i·ℓw + c)·ℓw + c] for c < ℓw, i.e. Lin(I) applied to a share of x ⊗ (y ⊗ g).
template <Word W>
Vector<W> recombine(const FullOtePublicKey& pk, std::size_t rows, std::size_t cols,
                    const Vector<W>& z) {
  const std::size_t lw = cols * pk.params.w;
  require(z.size() == capacity(pk) * lw, ErrorCode::kDimension, "OTE share has wrong length");
  Vector<W> out(z.w(), rows);
  for (std::size_t i = 0; i < rows; ++i) {
    W acc = 0;
    for (std::size_t c = 0; c < lw; ++c) acc += z[(i * lw + c) * lw + c];
    out.raw()[i] = acc;
  }
  out.reduce_all();
  return out;
}

template <Word W>
Vector<W> hash_eval(const FullOtePublicKey& pk, const MoleEncoding<W>& enc,
                    const MoleHasherState<W>& st) {
  require(enc.cols == st.cols, ErrorCode::kDimension, "encoding and matrix widths differ");
  return recombine(pk, st.rows, st.cols, full_ote::hash_eval_blocks(pk, enc.enc.enc, st.state));
}

template <Word W>
Vector<W> enc_eval(const FullOtePublicKey& pk, const MoleDigest<W>& dig,
                   const MoleEncoderSecret<W>& sec) {
  require(sec.cols == dig.cols, ErrorCode::kDimension, "secret and matrix widths differ");
  return recombine(pk, dig.rows, dig.cols,
                   full_ote::enc_eval_blocks(pk, dig.digest, sec.sec.sec));
}

template <Word W>
Vector<W> exact_hasher_share(const FullOtePublicKey& pk, const MoleEncoding<W>& enc,
                             const MoleHasherState<W>& st) {
  return full_ote::exact_finalize(hash_eval(pk, enc, st), pk.params.p_log, ShareRole::kHasher,
                                  enc.enc.mask_seed);
}

template <Word W>
Vector<W> exact_encoder_share(const FullOtePublicKey& pk, const MoleDigest<W>& dig,
                              const MoleEncoderSecret<W>& sec) {
  return full_ote::exact_finalize(enc_eval(pk, dig, sec), pk.params.p_log, ShareRole::kEncoder,
                                  sec.sec.mask_seed);
}

template <Word W>
MoleEncoding<W> simulate_encoding(const FullOtePublicKey& pk, std::size_t cols,
                                  const SeedStream& stream) {
  MoleEncoding<W> out;
  out.cols = cols;
  out.enc.enc.ell = cols * pk.params.w;
  const SeedStream s = stream.derive("payload");
  for (std::size_t b = 0; b < full_ote::block_count(pk, out.enc.enc.ell); ++b) {
    out.enc.enc.blocks.push_back(full_ote::simulate_encoding<W>(pk, s.derive("block", b)));
  }
  return out;
}

// ℓ_M·w·α_full for binary hashed payloads.
inline u128 error_bound(const RingParams& p, std::size_t cols) {
  return sat_mul(sat_mul(cols, p.w), full_ote::error_bound(p, 1));
}

}  // namespace mole
}  // namespace sote

#endif  // SOTE_MOLE_HPP_
