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

// Weak reverse trapdoor hash for RMS programs. The hasher hashes a program f;
// the key generator encodes (x, a) into an encoding key; the hasher, who must
// also know x, and the trapdoor holder obtain additive Z_p shares of
// f(x) ⊗ a. Passing a different x to encode than to gen is not detectable and
// only shows up as a wrong reconstruction: that contract is the caller's.
//
// Level counting: inputs enter at level 1 and every multiplication adds one,
// so a depth-d program needs d + 1 level encodings (keys s_0 … s_{d+1}) and b
// is bound under the last key.

#ifndef SOTE_RTDH_HPP_
#define SOTE_RTDH_HPP_

#include <utility>
#include <vector>

#include "sote/compression.hpp"
#include "sote/mole.hpp"
#include "sote/rms.hpp"

namespace sote {

struct RtdhParams {
  RingParams ring;  // compression OTE: w, p_log, k, t, r, B
  std::uint32_t mole_t = 1;
  std::uint32_t mole_r = 1;
  std::size_t ell_f = 1;
  std::size_t t_a = 1;
  std::size_t depth = 1;
  std::int64_t bound_t = 1;

  RingParams mole_params() const {
    RingParams p = ring;
    p.t = mole_t;
    p.r = mole_r;
    return p;
  }
  std::size_t levels() const { return depth + 1; }
  std::size_t kw() const { return ring.n(); }
  // Rows of the hashed MOLE matrix F^T.
  std::size_t mole_rows() const { return ell_f * t_a * kw(); }
  // Share length ℓ_f·t_a·k.
  std::size_t share_len() const { return ell_f * t_a * ring.k; }
  bool operator==(const RtdhParams&) const = default;
};

template <Word W>
struct RtdhHashKey {
  RtdhParams params;
  CompressionKey ck;
  FullOtePublicKey mpk;
  Matrix<W> a;           // k × n·k·w
  Matrix<W> b;           // k × t_a·k·w
  Matrix<W> a_expanded;  // A·P^T; derived from (ck, a), never serialized

  bool operator==(const RtdhHashKey& o) const {
    return params == o.params && ck == o.ck && mpk == o.mpk && a == o.a && b == o.b;
  }
};

template <Word W>
using RtdhDigest = MoleDigest<W>;

template <Word W>
using RtdhHasherState = MoleHasherState<W>;

template <Word W>
struct RtdhEncodingKey {
  MoleEncoding<W> c;
  Vector<W> b;  // length t_a·k·w
  std::vector<CompressedEncoding<W>> levels;
  Seed seed{};
  bool operator==(const RtdhEncodingKey&) const = default;
};

template <Word W>
struct RtdhTrapdoor {
  MoleEncoderSecret<W> phi;
  Seed seed{};
  bool operator==(const RtdhTrapdoor&) const = default;
};

// Secrets of gen, exposed for white-box checks only.
template <Word W>
struct RtdhGenTrace {
  std::vector<Vector<W>> keys;  // s_0 … s_L
  Vector<W> a_lifted;
};

// Pre-rounding hasher value u′ and its a-priori residual bound from the
// evaluation's noise ledger.
template <Word W>
struct RtdhRaw {
  Vector<W> u;
  u128 ledger = 0;
};

namespace rtdh {

template <Word W>
void check_params(const RtdhParams& p) {
  check_ring_params_for<W>(p.ring);
  check_ring_params(p.mole_params());
  require(p.ell_f >= 1 && p.t_a >= 1 && p.depth >= 1 && p.bound_t >= 1, ErrorCode::kParameter,
          "ell_f, t_a, d, T must be positive");
}

template <Word W>
RtdhHashKey<W> setup(const RtdhParams& params, const SeedStream& stream) {
  check_params<W>(params);
  RtdhHashKey<W> hk;
  hk.params = params;
  hk.ck = compression::setup(params.ring, stream.derive("ck"));
  hk.mpk = mole::setup(params.mole_params(), stream.derive("mpk"));
  mole::check_capacity(hk.mpk, params.mole_rows(), params.ring.k);
  const unsigned w = params.ring.w;
  SeedStream as = stream.derive("A");
  hk.a = sample_uniform_matrix<W>(as, params.ring.k, compression::key_width(hk.ck), w);
  SeedStream bs = stream.derive("B");
  hk.b = sample_uniform_matrix<W>(bs, params.ring.k, params.t_a * params.kw(), w);
  hk.a_expanded = compression::expanded_matrix(hk.ck, hk.a);
  return hk;
}

// Maximum len(x): x̂ = (x, 1) must fit the compression input.
template <Word W>
std::size_t max_inputs(const RtdhHashKey<W>& hk) {
  return compression::input_length(hk.ck) - 1;
}

template <Word W>
void check_program(const RtdhHashKey<W>& hk, const RmsProgram& f) {
  rms::validate(f, hk.params.depth, hk.params.bound_t);
  require(f.outputs.size() == hk.params.ell_f, ErrorCode::kProgram,
          "program must have ell_f outputs");
  require(f.num_inputs <= max_inputs(hk), ErrorCode::kCapacity,
          "program has more inputs than the compression capacity");
}

// F = −A_f·(I_ℓ ⊗ G^{-1}(B)), shape k × ℓ·t_a·k·w.
template <Word W>
Matrix<W> program_matrix(const RtdhHashKey<W>& hk, const RmsProgram& f) {
  check_program(hk, f);
  const Matrix<W> af = lenc::eval_rms_key(hk.a_expanded, f, hk.params.levels());
  const std::size_t width = hk.b.cols(), k = hk.params.ring.k;
  Matrix<W> out(hk.a.w(), k, f.outputs.size() * width);
  for (std::size_t o = 0; o < f.outputs.size(); ++o) {
    const Matrix<W> fo = -lenc::mat_mul_ginv(lenc::detail::column_block(af, o), hk.b);
    for (std::size_t r = 0; r < k; ++r) {
      std::copy(fo.row(r).begin(), fo.row(r).end(), out.raw() + r * out.cols() + o * width);
    }
  }
  return out;
}

template <Word W>
std::pair<RtdhDigest<W>, RtdhHasherState<W>> hash(const RtdhHashKey<W>& hk, const RmsProgram& f) {
  return mole::hash(hk.mpk, transpose(program_matrix(hk, f)));
}

// x̂ = (x, 1, 0, …) over Z_q, padded to the compression input length.
template <Word W>
Vector<W> extended_input(const RtdhHashKey<W>& hk, const std::vector<std::int64_t>& x) {
  require(x.size() <= max_inputs(hk), ErrorCode::kCapacity,
          "input longer than the compression capacity");
  Vector<W> out(hk.params.ring.w, compression::input_length(hk.ck));
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] == 0 || x[i] == 1, ErrorCode::kDimension, "inputs must be bits");
    out.raw()[i] = static_cast<W>(x[i]);
  }
  out.raw()[x.size()] = 1;
  return out;
}

// a over Z_p (width p_log) lifted to its representative in [0, p).
template <Word W>
Vector<W> lift_plaintext(const RtdhParams& p, const Vector<W>& a) {
  require(a.size() == p.t_a * p.ring.k && a.w() == p.ring.p_log, ErrorCode::kDimension,
          "a must be a vector over Z_p of length t_a*k");
  return Vector<W>(p.ring.w, std::vector<W>(a.entries().begin(), a.entries().end()));
}

template <Word W>
std::pair<RtdhEncodingKey<W>, RtdhTrapdoor<W>> gen(const RtdhHashKey<W>& hk,
                                                   const std::vector<std::int64_t>& x,
                                                   const Vector<W>& a, const SeedStream& stream,
                                                   RtdhGenTrace<W>* trace = nullptr) {
  const RtdhParams& p = hk.params;
  const unsigned w = p.ring.w;
  const Vector<W> xh = extended_input(hk, x);
  const Vector<W> a_lift = lift_plaintext(p, a);
  SeedStream ks = stream.derive("keys");
  std::vector<Vector<W>> keys;
  for (std::size_t j = 0; j <= p.levels(); ++j) keys.push_back(sample_uniform_zq<W>(ks, p.ring.k, w));
  RtdhEncodingKey<W> ek;
  for (std::size_t j = 0; j < p.levels(); ++j) {
    SeedStream rs = stream.derive("r", j);
    const Vector<W> r = sample_uniform_zq<W>(rs, p.ring.k, w);
    ek.levels.push_back(
        compression::compress(hk.ck, hk.a, xh, keys[j], keys[j + 1], r, stream.derive("level", j)));
  }
  SeedStream es = stream.derive("b");
  ek.b = vec_mat(keys.back(), hk.b) + half_ote::gadget_expand(a_lift);
  add_noise<W>(es, std::span<W>(ek.b.raw(), ek.b.size()), p.ring.B, w);
  auto [c, phi] = mole::encode(hk.mpk, keys[0], stream.derive("mole"));
  ek.c = std::move(c);
  SeedStream ss = stream.derive("seed");
  ek.seed = ss.next_seed();
  if (trace) {
    trace->keys = keys;
    trace->a_lifted = a_lift;
  }
  RtdhTrapdoor<W> td{std::move(phi), ek.seed};
  return {std::move(ek), std::move(td)};
}

template <Word W>
void check_encoding_key(const RtdhHashKey<W>& hk, const RtdhEncodingKey<W>& ek) {
  require(ek.levels.size() == hk.params.levels(), ErrorCode::kDimension,
          "encoding key must hold d+1 compressed encodings");
  require(ek.b.size() == hk.b.cols(), ErrorCode::kDimension, "b has wrong length");
  require(ek.c.cols == hk.params.ring.k, ErrorCode::kDimension, "MOLE encoding has wrong width");
}

// (I ⊗ G^{-1}(Δ)) contraction: Δ = 2^{w−p_log} picks gadget entry w−p_log of
// every length-w group.
template <Word W>
Vector<W> contract_delta(const RtdhParams& p, const Vector<W>& z) {
  const unsigned w = p.ring.w;
  require(z.size() % w == 0, ErrorCode::kDimension, "contraction needs whole gadget groups");
  Vector<W> out(w, z.size() / w);
  for (std::size_t i = 0; i < out.size(); ++i) out.raw()[i] = z[i * w + p.ring.delta_log()];
  return out;
}

// u′ = (z − v^T)(I ⊗ G^{-1}(Δ)) with z = −c(I_ℓ ⊗ G^{-1}(B)) + f(x)^T ⊗ b.
template <Word W>
RtdhRaw<W> hasher_raw(const RtdhHashKey<W>& hk, const RtdhEncodingKey<W>& ek,
                      const RtdhHasherState<W>& state, const std::vector<std::int64_t>& x,
                      const RmsProgram& f) {
  check_program(hk, f);
  check_encoding_key(hk, ek);
  const RtdhParams& p = hk.params;
  const unsigned w = p.ring.w;
  const Vector<W> xh = extended_input(hk, x);
  std::vector<LatticeEncoding<W>> cs;
  for (std::size_t j = 0; j < p.levels(); ++j) {
    cs.push_back(compression::expand_with(hk.ck, hk.a_expanded, ek.levels[j], xh, j, j + 1));
  }
  const auto outs = lenc::eval_rms_cipher(f, x, cs);
  const auto fx = rms::eval_plain(f, x);
  const std::size_t width = hk.b.cols();
  Vector<W> z(w, outs.size() * width);
  u128 worst = 0;
  for (std::size_t o = 0; o < outs.size(); ++o) {
    const Vector<W> zo = scale(ek.b, from_signed<W>(fx[o], w)) - lenc::mul_ginv(outs[o].c, hk.b);
    std::copy(zo.entries().begin(), zo.entries().end(), z.raw() + o * width);
    const u128 mag = static_cast<u128>(fx[o] < 0 ? -fx[o] : fx[o]);
    worst = std::max(worst, sat_add(sat_mul(p.kw(), outs[o].noise), sat_mul(mag, p.ring.B)));
  }
  const Vector<W> v = mole::hash_eval(hk.mpk, ek.c, state);
  RtdhRaw<W> raw;
  raw.u = contract_delta(p, z - v);
  raw.ledger = sat_add(worst, mole::error_bound(p.mole_params(), p.ring.k));
  return raw;
}

template <Word W>
Vector<W> share_mask(const RtdhParams& p, const Seed& seed) {
  return prg_expand_zq<W>(seed, p.share_len(), p.ring.w);
}

// y′ = ⌈u′ + PRG(seed)⌋_p.
template <Word W>
Vector<W> finalize_hasher(const RtdhParams& p, const Vector<W>& u, const Seed& seed) {
  return round_to_p(u + share_mask<W>(p, seed), p.ring.p_log);
}

// y = ⌈−u − PRG(seed)⌋_p.
template <Word W>
Vector<W> finalize_decoder(const RtdhParams& p, const Vector<W>& u, const Seed& seed) {
  return round_to_p(-u - share_mask<W>(p, seed), p.ring.p_log);
}

template <Word W>
Vector<W> encode(const RtdhHashKey<W>& hk, const RtdhEncodingKey<W>& ek,
                 const RtdhHasherState<W>& state, const std::vector<std::int64_t>& x,
                 const RmsProgram& f) {
  return finalize_hasher(hk.params, hasher_raw(hk, ek, state, x, f).u, ek.seed);
}

// u = w^T (I ⊗ G^{-1}(Δ)).
template <Word W>
Vector<W> decoder_raw(const RtdhHashKey<W>& hk, const RtdhDigest<W>& dig,
                      const RtdhTrapdoor<W>& td) {
  require(dig.rows == hk.params.mole_rows() && dig.cols == hk.params.ring.k,
          ErrorCode::kDimension, "digest does not match the hash key");
  return contract_delta(hk.params, mole::enc_eval(hk.mpk, dig, td.phi));
}

template <Word W>
Vector<W> decode(const RtdhHashKey<W>& hk, const RtdhDigest<W>& dig, const RtdhTrapdoor<W>& td) {
  return finalize_decoder(hk.params, decoder_raw(hk, dig, td), td.seed);
}

// f(x) ⊗ a mod p: entry o·t_a·k + j is f(x)_o·a_j.
template <Word W>
Vector<W> plain_output(const RtdhParams& p, const std::vector<std::int64_t>& fx,
                       const Vector<W>& a) {
  Vector<W> out(p.ring.p_log, fx.size() * a.size());
  for (std::size_t o = 0; o < fx.size(); ++o) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      out.set(o * a.size() + j, from_signed<W>(fx[o], p.ring.p_log) * a[j]);
    }
  }
  return out;
}

template <Word W>
RtdhEncodingKey<W> simulate_ek(const RtdhHashKey<W>& hk, const SeedStream& stream) {
  const RtdhParams& p = hk.params;
  RtdhEncodingKey<W> ek;
  ek.c = mole::simulate_encoding<W>(hk.mpk, p.ring.k, stream.derive("mole"));
  SeedStream bs = stream.derive("b");
  ek.b = sample_uniform_zq<W>(bs, hk.b.cols(), p.ring.w);
  for (std::size_t j = 0; j < p.levels(); ++j) {
    ek.levels.push_back(compression::simulate(hk.ck, hk.a, stream.derive("level", j)));
  }
  SeedStream ss = stream.derive("seed");
  ek.seed = ss.next_seed();
  return ek;
}

// Parameter-level residual bound for T-bounded depth-d layered programs:
// k·w·β·C·T·(k·w)^d + T·B + α_MOLE with β the compression bound.
inline u128 error_bound(const RtdhParams& p) {
  const u128 beta = compression::error_bound(p.ring);
  const u128 cap = lenc::layered_ledger_cap(beta, p.bound_t, p.kw(), p.ring.w, p.depth);
  return sat_add(sat_add(sat_mul(p.kw(), cap), sat_mul(p.bound_t, p.ring.B)),
                 mole::error_bound(p.mole_params(), p.ring.k));
}

}  // namespace rtdh
}  // namespace sote

#endif  // SOTE_RTDH_HPP_
