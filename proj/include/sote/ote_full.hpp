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

// Fully succinct OTE for Z_q^{t^r·n} ⊗ Z_q^n by recursive bootstrapping of the
// half-succinct scheme, the block extension to arbitrary payload length, and
// the rounding wrapper that turns approximate shares into exact shares mod p.

#ifndef SOTE_OTE_FULL_HPP_
#define SOTE_OTE_FULL_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "sote/bounds.hpp"
#include "sote/ote_half.hpp"

namespace sote {

struct FullOtePublicKey {
  RingParams params;
  HalfOtePublicKey inner;  // m_inner = t·n, ell_inner = n

  std::size_t n() const { return params.n(); }
  // Hashed input length t^r·n.
  std::size_t m() const { return checked_pow(params.t, params.r) * params.n(); }
  bool operator==(const FullOtePublicKey&) const = default;
};

template <Word W>
struct FullDigest {
  Vector<W> d;
  bool operator==(const FullDigest&) const = default;
};

// levels[i] is x_i (length t^{r-i}·n); block j of it is ψ_{i,j}.
template <Word W>
struct FullHasherState {
  std::vector<Vector<W>> levels;
  bool operator==(const FullHasherState&) const = default;
};

template <Word W>
struct FullEncoding {
  std::vector<HalfEncoding<W>> levels;
  bool operator==(const FullEncoding&) const = default;
};

template <Word W>
struct FullEncoderSecret {
  Vector<W> phi;
  bool operator==(const FullEncoderSecret&) const = default;
};

// Intermediate payloads y_0..y_{r-1}; only exposed for white-box checks.
template <Word W>
struct FullEncodeTrace {
  std::vector<Vector<W>> payloads;
};

template <Word W>
struct BlockEncoding {
  std::size_t ell = 0;
  std::vector<FullEncoding<W>> blocks;
  bool operator==(const BlockEncoding&) const = default;
};

template <Word W>
struct BlockSecret {
  std::size_t ell = 0;
  std::vector<FullEncoderSecret<W>> blocks;
  bool operator==(const BlockSecret&) const = default;
};

template <Word W>
struct ExactEncoding {
  BlockEncoding<W> enc;
  std::optional<Seed> mask_seed;
  bool operator==(const ExactEncoding&) const = default;
};

template <Word W>
struct ExactSecret {
  BlockSecret<W> sec;
  std::optional<Seed> mask_seed;
  bool operator==(const ExactSecret&) const = default;
};

enum class ShareRole { kHasher, kEncoder };

namespace full_ote {

inline FullOtePublicKey setup(const RingParams& params, const SeedStream& stream) {
  check_ring_params(params);
  FullOtePublicKey pk;
  pk.params = params;
  (void)pk.m();
  pk.inner = half_ote::setup(params, static_cast<std::size_t>(params.t) * params.n(),
                             params.n(), stream.derive("inner"));
  return pk;
}

template <Word W>
std::pair<FullDigest<W>, FullHasherState<W>> hash(const FullOtePublicKey& pk,
                                                  const Vector<W>& x) {
  const RingParams& p = pk.params;
  require(x.size() == pk.m() && x.w() == p.w, ErrorCode::kDimension,
          "hash input must have length t^r*n");
  const std::size_t n = p.n(), tn = p.t * n;
  FullHasherState<W> state;
  state.levels.reserve(p.r);
  Vector<W> cur = x;
  for (std::size_t i = 0; i < p.r; ++i) {
    const std::size_t blocks = cur.size() / tn;
    Vector<W> next(p.w, blocks * n);
    for (std::size_t j = 0; j < blocks; ++j) {
      const Vector<W> d = binary_mat_vec(pk.inner.a, cur.slice(j * tn, tn));
      std::copy(d.entries().begin(), d.entries().end(), next.raw() + j * n);
    }
    state.levels.push_back(std::move(cur));
    cur = std::move(next);
  }
  return {FullDigest<W>{std::move(cur)}, std::move(state)};
}

// fixed_phi, when given, becomes the final-level secret φ_r.
template <Word W>
std::pair<FullEncoding<W>, FullEncoderSecret<W>> encode(
    const FullOtePublicKey& pk, const Vector<W>& y, const SeedStream& stream,
    const std::optional<Vector<std::type_identity_t<W>>>& fixed_phi = std::nullopt,
    FullEncodeTrace<W>* trace = nullptr) {
  const RingParams& p = pk.params;
  require(y.size() == p.n() && y.w() == p.w, ErrorCode::kDimension,
          "encoded payload must have length n");
  FullEncoding<W> enc;
  Vector<W> payload = y;
  Vector<W> phi;
  for (std::size_t i = 0; i < p.r; ++i) {
    std::optional<HalfEncoderSecret<W>> fixed;
    if (i + 1 == p.r && fixed_phi) fixed = HalfEncoderSecret<W>{*fixed_phi};
    if (trace) trace->payloads.push_back(payload);
    auto [e, sec] = half_ote::encode(pk.inner, payload, stream.derive("level", i), fixed);
    enc.levels.push_back(std::move(e));
    payload = half_ote::gadget_expand(sec.s);
    phi = std::move(sec.s);
  }
  return {std::move(enc), FullEncoderSecret<W>{std::move(phi)}};
}

template <Word W>
void check_encoding(const FullOtePublicKey& pk, const FullEncoding<W>& enc) {
  require(enc.levels.size() == pk.params.r, ErrorCode::kDimension,
          "encoding must hold r inner encodings");
  for (const auto& e : enc.levels) half_ote::check_encoding(pk.inner, e);
}

// v_i = concat_j C_i^T x_{i,j}, length t^{r-i}·n².
template <Word W>
std::vector<Vector<W>> hash_eval_levels(const FullOtePublicKey& pk, const FullEncoding<W>& enc,
                                        const FullHasherState<W>& state) {
  check_encoding(pk, enc);
  const RingParams& p = pk.params;
  require(state.levels.size() == p.r, ErrorCode::kDimension, "hasher state has wrong depth");
  const std::size_t tn = p.t * p.n();
  std::vector<Vector<W>> out;
  for (std::size_t i = 0; i < p.r; ++i) {
    const Vector<W>& xi = state.levels[i];
    require(xi.size() % tn == 0, ErrorCode::kDimension, "hasher state has wrong shape");
    const std::size_t blocks = xi.size() / tn;
    const std::size_t len = tn * p.n();
    Vector<W> vi(p.w, blocks * len);
    for (std::size_t j = 0; j < blocks; ++j) {
      const Vector<W> v = vec_mat(xi.slice(j * tn, tn), enc.levels[i].c);
      std::copy(v.entries().begin(), v.entries().end(), vi.raw() + j * len);
    }
    out.push_back(std::move(vi));
  }
  return out;
}

// P_i z with P_i = I_{t^{r-i}} ⊗ P, for 1 <= i <= r-1 (i = r is plain P).
template <Word W>
Vector<W> apply_level(const FullOtePublicKey& pk, std::size_t i, const Vector<W>& z) {
  const RingParams& p = pk.params;
  const std::size_t nn = p.n() * p.n();
  const std::size_t blocks = checked_pow(p.t, p.r - i);
  require(z.size() == blocks * nn, ErrorCode::kDimension, "P_i applied to wrong length");
  const std::size_t out_len = p.t * nn;
  Vector<W> out(p.w, blocks * out_len);
  for (std::size_t b = 0; b < blocks; ++b) {
    const Vector<W> part = half_ote::apply_public_matrix(pk.inner, z.slice(b * nn, nn));
    std::copy(part.entries().begin(), part.entries().end(), out.raw() + b * out_len);
  }
  return out;
}

// P_1 ⋯ P_{upto} z (upto = 0 is the identity).
template <Word W>
Vector<W> apply_chain(const FullOtePublicKey& pk, std::size_t upto, Vector<W> z) {
  for (std::size_t i = upto; i >= 1; --i) z = apply_level(pk, i, z);
  return z;
}

// v = Σ_i (P_1 ⋯ P_i) v_i, evaluated innermost first.
template <Word W>
Vector<W> hash_eval(const FullOtePublicKey& pk, const FullEncoding<W>& enc,
                    const FullHasherState<W>& state) {
  auto vs = hash_eval_levels(pk, enc, state);
  Vector<W> acc = std::move(vs.back());
  for (std::size_t i = pk.params.r - 1; i >= 1; --i) acc = apply_level(pk, i, acc) + vs[i - 1];
  return acc;
}

// w = (P_1 ⋯ P_{r-1}) · EncEval_inner(d, φ_r).
template <Word W>
Vector<W> enc_eval(const FullOtePublicKey& pk, const FullDigest<W>& dig,
                   const FullEncoderSecret<W>& sec) {
  const Vector<W> w0 =
      half_ote::enc_eval(pk.inner, HalfDigest<W>{dig.d}, HalfEncoderSecret<W>{sec.phi});
  return apply_chain(pk, pk.params.r - 1, w0);
}

// (P_1 ⋯ P_{r-1}) · P · z through the implicit linearised-matrix kernel.
template <Word W>
Vector<W> apply_composed(const FullOtePublicKey& pk, const Vector<W>& z) {
  return apply_chain(pk, pk.params.r - 1, half_ote::apply_public_matrix(pk.inner, z));
}

// Explicit (P_1 ⋯ P_{r-1}) · P; small shapes only.
template <Word W>
Matrix<W> composed_public_matrix(const FullOtePublicKey& pk) {
  const RingParams& p = pk.params;
  const Matrix<W> pm = half_ote::public_matrix<W>(pk.inner);
  Matrix<W> acc = pm;
  for (std::size_t i = p.r - 1; i >= 1; --i) {
    const Matrix<W> pi = kron(Matrix<W>::identity(p.w, checked_pow(p.t, p.r - i)), pm);
    acc = mat_mul(pi, acc);
  }
  return acc;
}

template <Word W>
FullEncoding<W> simulate_encoding(const FullOtePublicKey& pk, const SeedStream& stream) {
  FullEncoding<W> enc;
  for (std::size_t i = 0; i < pk.params.r; ++i) {
    enc.levels.push_back(half_ote::simulate_encoding<W>(pk.inner, stream.derive("level", i)));
  }
  return enc;
}

// α = t·n·(n+1)·B.
inline u128 alpha(const RingParams& p) {
  return half_ote::error_bound(p, static_cast<std::size_t>(p.t) * p.n(), 1);
}

inline u128 growth(const RingParams& p) {
  const u128 n = p.n();
  return sat_mul(sat_mul(sat_mul(p.t, n), n), n);
}

// α·(t·n³)^r·||x||∞.
inline u128 error_bound(const RingParams& p, u128 x_norm) {
  return sat_mul(sat_mul(alpha(p), sat_pow(growth(p), p.r)), x_norm);
}

// α·Σ_{k=i}^{r-1} (t·n³)^k·||x||∞.
inline u128 level_error_bound(const RingParams& p, std::size_t i, u128 x_norm) {
  u128 s = 0;
  for (std::size_t k = i; k < p.r; ++k) s = sat_add(s, sat_pow(growth(p), k));
  return sat_mul(sat_mul(alpha(p), s), x_norm);
}

// (t·n)^r·||x||∞.
inline u128 digest_bound(const RingParams& p, u128 x_norm) {
  return sat_mul(sat_pow(static_cast<u128>(p.t) * p.n(), p.r), x_norm);
}

// n^{2r}.
inline u128 composed_norm_bound(const RingParams& p) { return sat_pow(p.n(), 2 * p.r); }

// ---- Block extension ----------------------------------------------------

inline std::size_t block_count(const FullOtePublicKey& pk, std::size_t ell) {
  return (ell + pk.n() - 1) / pk.n();
}

template <Word W>
std::pair<BlockEncoding<W>, BlockSecret<W>> encode_blocks(const FullOtePublicKey& pk,
                                                          const Vector<W>& y,
                                                          const SeedStream& stream) {
  const std::size_t n = pk.n();
  require(y.size() >= 1 && y.w() == pk.params.w, ErrorCode::kDimension, "empty payload");
  BlockEncoding<W> enc{y.size(), {}};
  BlockSecret<W> sec{y.size(), {}};
  for (std::size_t b = 0; b < block_count(pk, y.size()); ++b) {
    Vector<W> part(y.w(), n);
    for (std::size_t i = 0; i < n && b * n + i < y.size(); ++i) part.raw()[i] = y[b * n + i];
    auto [e, s] = encode(pk, part, stream.derive("block", b));
    enc.blocks.push_back(std::move(e));
    sec.blocks.push_back(std::move(s));
  }
  return {std::move(enc), std::move(sec)};
}

// Interleaves per-block shares of x ⊗ y_b (length m·n) into one share of
// x ⊗ y (length m·ell), dropping pad columns.
template <Word W>
Vector<W> reassemble_blocks(const FullOtePublicKey& pk, std::size_t ell,
                            const std::vector<Vector<W>>& parts) {
  const std::size_t n = pk.n(), m = pk.m();
  Vector<W> out(pk.params.w, m * ell);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = 0; c < ell; ++c) out.raw()[a * ell + c] = parts[c / n][a * n + c % n];
  }
  return out;
}

template <Word W>
Vector<W> hash_eval_blocks(const FullOtePublicKey& pk, const BlockEncoding<W>& enc,
                           const FullHasherState<W>& state) {
  require(enc.blocks.size() == block_count(pk, enc.ell), ErrorCode::kDimension,
          "block count does not match payload length");
  std::vector<Vector<W>> parts;
  for (const auto& e : enc.blocks) parts.push_back(hash_eval(pk, e, state));
  return reassemble_blocks(pk, enc.ell, parts);
}

template <Word W>
Vector<W> enc_eval_blocks(const FullOtePublicKey& pk, const FullDigest<W>& dig,
                          const BlockSecret<W>& sec) {
  require(sec.blocks.size() == block_count(pk, sec.ell), ErrorCode::kDimension,
          "block count does not match payload length");
  std::vector<Vector<W>> parts;
  for (const auto& s : sec.blocks) parts.push_back(enc_eval(pk, dig, s));
  return reassemble_blocks(pk, sec.ell, parts);
}

// ---- Exact wrapper over Z_p ---------------------------------------------

// Rounds a share to Z_p; with a mask seed the hasher adds and the encoder
// subtracts the same pseudorandom vector first.
template <Word W>
Vector<W> exact_finalize(const Vector<W>& share, unsigned p_log, ShareRole role,
                         const std::optional<Seed>& mask_seed) {
  if (!mask_seed) return round_to_p(share, p_log);
  const Vector<W> mask = prg_expand_zq<W>(*mask_seed, share.size(), share.w());
  return round_to_p(role == ShareRole::kHasher ? share + mask : share - mask, p_log);
}

// y has entries in Z_p (its width is p_log); the payload is Δ·y.
template <Word W>
std::pair<ExactEncoding<W>, ExactSecret<W>> exact_encode(const FullOtePublicKey& pk,
                                                         const Vector<W>& y,
                                                         const SeedStream& stream,
                                                         bool rerandomize = true) {
  const RingParams& p = pk.params;
  require(y.w() == p.p_log, ErrorCode::kDimension, "exact payload must be over Z_p");
  Vector<W> scaled(p.w, y.size());
  for (std::size_t i = 0; i < y.size(); ++i) scaled.raw()[i] = y[i] << p.delta_log();
  scaled.reduce_all();
  auto [enc, sec] = encode_blocks(pk, scaled, stream.derive("payload"));
  std::optional<Seed> seed;
  if (rerandomize) {
    SeedStream s = stream.derive("mask");
    seed = s.next_seed();
  }
  return {ExactEncoding<W>{std::move(enc), seed}, ExactSecret<W>{std::move(sec), seed}};
}

template <Word W>
Vector<W> exact_hasher_share(const FullOtePublicKey& pk, const ExactEncoding<W>& enc,
                             const FullHasherState<W>& state) {
  return exact_finalize(hash_eval_blocks(pk, enc.enc, state), pk.params.p_log,
                        ShareRole::kHasher, enc.mask_seed);
}

template <Word W>
Vector<W> exact_encoder_share(const FullOtePublicKey& pk, const FullDigest<W>& dig,
                              const ExactSecret<W>& sec) {
  return exact_finalize(enc_eval_blocks(pk, dig, sec.sec), pk.params.p_log,
                        ShareRole::kEncoder, sec.mask_seed);
}

}  // namespace full_ote
}  // namespace sote

#endif  // SOTE_OTE_FULL_HPP_
