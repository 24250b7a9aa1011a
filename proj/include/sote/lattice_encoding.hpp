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

// Adaptive lattice encodings c = s^T A + r^T (x^T ⊗ G) + e^T, their
// homomorphic operations, and RMS program evaluation.
//
// Each encoding carries a level tag (i, j) naming its encryption key s_i and
// authentication key s_j, and a noise ledger bounding ||e||∞.

#ifndef SOTE_LATTICE_ENCODING_HPP_
#define SOTE_LATTICE_ENCODING_HPP_

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "sote/bounds.hpp"
#include "sote/ring.hpp"
#include "sote/rms.hpp"
#include "sote/sampling.hpp"

namespace sote {

template <Word W>
struct LatticeEncoding {
  Vector<W> c;   // length blocks·k·w
  Matrix<W> a;   // k × (blocks·k·w)
  std::size_t enc_level = 0;
  std::size_t auth_level = 0;
  u128 noise = 0;

  std::size_t k() const { return a.rows(); }
  std::size_t block_len() const { return a.rows() * a.w(); }
  std::size_t blocks() const { return c.size() / block_len(); }
  bool operator==(const LatticeEncoding&) const = default;
};

namespace lenc {

template <Word W>
void check_shape(const Matrix<W>& a, std::size_t len_x) {
  require(a.rows() >= 1 && a.cols() == len_x * a.rows() * a.w(), ErrorCode::kDimension,
          "public matrix must be k x (len(x)*k*w)");
}

// r^T (x^T ⊗ G): block i is x_i·(r ⊗ g).
template <Word W>
Vector<W> auth_term(const Vector<W>& r, const Vector<W>& x) {
  return kron(x, kron(r, gadget_row<W>(r.w())));
}

template <Word W>
LatticeEncoding<W> encode(const Matrix<W>& a, const Vector<W>& x, const Vector<W>& s,
                          const Vector<W>& r, SeedStream& noise, std::uint64_t bound,
                          std::size_t enc_level = 0, std::size_t auth_level = 1) {
  check_shape(a, x.size());
  require(s.size() == a.rows() && r.size() == a.rows(), ErrorCode::kDimension,
          "keys must have length k");
  Vector<W> c = vec_mat(s, a) + auth_term(r, x);
  add_noise<W>(noise, std::span<W>(c.raw(), c.size()), bound, a.w());
  return {std::move(c), a, enc_level, auth_level, bound};
}

// c − s^T A − r^T (x^T ⊗ G).
template <Word W>
Vector<W> residual(const LatticeEncoding<W>& e, const Vector<W>& s, const Vector<W>& r,
                   const Vector<W>& x) {
  check_shape(e.a, x.size());
  return e.c - vec_mat(s, e.a) - auth_term(r, x);
}

template <Word W>
LatticeEncoding<W> block(const LatticeEncoding<W>& e, std::size_t i) {
  const std::size_t len = e.block_len();
  require(i < e.blocks(), ErrorCode::kDimension, "block index out of range");
  Matrix<W> a(e.a.w(), e.k(), len);
  for (std::size_t r = 0; r < e.k(); ++r) {
    for (std::size_t j = 0; j < len; ++j) a.raw()[r * len + j] = e.a(r, i * len + j);
  }
  return {e.c.slice(i * len, len), std::move(a), e.enc_level, e.auth_level, e.noise};
}

// v · G^{-1}(M) for v of length k·w and M of shape k × N:
// out[j] = Σ_a Σ_b v[a·w + b]·bit_b(M[a, j]).
template <Word W>
Vector<W> mul_ginv(const Vector<W>& v, const Matrix<W>& m) {
  const unsigned w = m.w();
  require(v.size() == m.rows() * w, ErrorCode::kDimension, "mul_ginv: length mismatch");
  Vector<W> out(v.w(), m.cols());
  for (std::size_t a = 0; a < m.rows(); ++a) {
    const W* va = v.raw() + a * w;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      W x = m(a, j);
      W acc = 0;
      while (x != 0) {
        const unsigned b = word_countr_zero(x);
        acc += va[b];
        x &= x - 1;
      }
      out.raw()[j] += acc;
    }
  }
  out.reduce_all();
  return out;
}

// A · G^{-1}(M), row by row.
template <Word W>
Matrix<W> mat_mul_ginv(const Matrix<W>& a, const Matrix<W>& m) {
  Matrix<W> out(a.w(), a.rows(), m.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Vector<W> row(a.w(), std::vector<W>(a.row(r).begin(), a.row(r).end()));
    const Vector<W> prod = mul_ginv(row, m);
    std::copy(prod.entries().begin(), prod.entries().end(), out.raw() + r * m.cols());
  }
  return out;
}

template <Word W>
Matrix<W> scalar_gadget(std::size_t k, unsigned w, W delta) {
  return scale(gadget_matrix<W>(k, w), reduce<W>(delta, w));
}

// Max column weight of G^{-1}(δG): max_b popcount(δ·2^b mod q).
template <Word W>
unsigned scalar_weight(W delta, unsigned w) {
  unsigned best = 0;
  for (unsigned b = 0; b < w; ++b) {
    const W v = reduce<W>(delta << b, w);
    best = std::max(best, word_popcount(v));
  }
  return best;
}

template <Word W>
W scalar_residue(std::int64_t c, unsigned w) {
  return from_signed<W>(c, w);
}

// ---- Public-matrix side ---------------------------------------------------

template <Word W>
Matrix<W> key_add(const Matrix<W>& a0, const Matrix<W>& a1) {
  return a0 + a1;
}

template <Word W>
Matrix<W> key_scalar(const Matrix<W>& a, W delta) {
  return mat_mul_ginv(a, scalar_gadget<W>(a.rows(), a.w(), delta));
}

template <Word W>
Matrix<W> key_mul(const Matrix<W>& a0, const Matrix<W>& a1) {
  return -mat_mul_ginv(a0, a1);
}

// ---- Homomorphic operations ---------------------------------------------

template <Word W>
LatticeEncoding<W> hom_add(const LatticeEncoding<W>& x, const LatticeEncoding<W>& y) {
  require(x.enc_level == y.enc_level && x.auth_level == y.auth_level, ErrorCode::kLevel,
          "addition requires matching level tags");
  require(x.c.size() == y.c.size(), ErrorCode::kDimension, "addition requires equal lengths");
  return {x.c + y.c, key_add(x.a, y.a), x.enc_level, x.auth_level, sat_add(x.noise, y.noise)};
}

// Encoding of δ·x under A·G^{-1}(δG).
template <Word W>
LatticeEncoding<W> hom_scalar(const LatticeEncoding<W>& x, W delta) {
  require(x.blocks() == 1, ErrorCode::kDimension, "scalar multiplication acts on one block");
  const unsigned w = x.a.w();
  const Matrix<W> dg = scalar_gadget<W>(x.k(), w, delta);
  return {mul_ginv(x.c, dg), mat_mul_ginv(x.a, dg), x.enc_level, x.auth_level,
          sat_mul(scalar_weight<W>(delta, w), x.noise)};
}

// c0 level (i, j) of x0, c1 level (j, j+1) of x1: level (i, j+1) of x0·x1
// under −A0·G^{-1}(A1), noise −G^{-1}(A1)^T e0 + x0·e1.
template <Word W>
LatticeEncoding<W> hom_mul(const LatticeEncoding<W>& c0, const LatticeEncoding<W>& c1,
                           std::int64_t x0) {
  require(c0.blocks() == 1 && c1.blocks() == 1, ErrorCode::kDimension,
          "multiplication acts on single blocks");
  require(c0.auth_level == c1.enc_level && c1.auth_level == c1.enc_level + 1,
          ErrorCode::kLevel, "multiplication requires levels (i, j) x (j, j+1)");
  const unsigned w = c0.a.w();
  const W xr = scalar_residue<W>(x0, w);
  Vector<W> c = scale(c1.c, xr) - mul_ginv(c0.c, c1.a);
  const u128 mag = static_cast<u128>(x0 < 0 ? -x0 : x0);
  const u128 noise = sat_add(sat_mul(c0.k() * w, c0.noise), sat_mul(mag, c1.noise));
  return {std::move(c), key_mul(c0.a, c1.a), c0.enc_level, c1.auth_level, noise};
}

// ---- RMS evaluation -------------------------------------------------------

template <Word W>
LatticeEncoding<W> concat(const std::vector<LatticeEncoding<W>>& parts) {
  require(!parts.empty(), ErrorCode::kDimension, "nothing to concatenate");
  const std::size_t k = parts[0].k(), w = parts[0].a.w();
  std::size_t cols = 0;
  for (const auto& p : parts) cols += p.c.size();
  LatticeEncoding<W> out{Vector<W>(w, cols), Matrix<W>(w, k, cols), parts[0].enc_level,
                         parts[0].auth_level, 0};
  std::size_t off = 0;
  for (const auto& p : parts) {
    require(p.enc_level == out.enc_level && p.auth_level == out.auth_level, ErrorCode::kLevel,
            "concatenated encodings must share a level");
    for (std::size_t j = 0; j < p.c.size(); ++j) out.c.raw()[off + j] = p.c[j];
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < p.c.size(); ++j) out.a.raw()[r * cols + off + j] = p.a(r, j);
    }
    out.noise = std::max(out.noise, p.noise);
    off += p.c.size();
  }
  return out;
}

// Number of level encodings an evaluation of f consumes.
inline std::size_t levels_needed(const RmsProgram& f) { return rms::analyse(f).depth + 1; }

namespace detail {

// Shared replay of f. Ops supplies input(i), one(), add, scalar, mul_input(w, i), hop(w).
template <class Value, class Ops>
std::vector<Value> replay(const RmsProgram& f, std::size_t levels, Ops& ops) {
  const RmsInfo info = rms::analyse(f);
  require(levels >= info.depth + 1, ErrorCode::kLevel,
          "a depth-" + std::to_string(info.depth) + " program needs " +
              std::to_string(info.depth + 1) + " level encodings");
  std::vector<Value> wires;
  std::vector<std::size_t> level;
  for (std::size_t i = 0; i < f.num_inputs; ++i) {
    wires.push_back(ops.input(i));
    level.push_back(1);
  }
  wires.push_back(ops.one());
  level.push_back(1);
  for (const RmsInstr& in : f.instrs) {
    switch (in.op) {
      case RmsOp::kAdd: {
        Value a = wires[in.a], b = wires[in.b];
        std::size_t la = level[in.a], lb = level[in.b];
        for (; la < lb; ++la) a = ops.hop(a, la);
        for (; lb < la; ++lb) b = ops.hop(b, lb);
        wires.push_back(ops.add(a, b));
        level.push_back(la);
        break;
      }
      case RmsOp::kSmul:
        wires.push_back(ops.scalar(wires[in.a], in.c));
        level.push_back(level[in.a]);
        break;
      case RmsOp::kMulIn:
        wires.push_back(ops.mul_input(wires[in.a], level[in.a], in.b));
        level.push_back(level[in.a] + 1);
        break;
    }
  }
  std::vector<Value> out;
  for (std::size_t o : f.outputs) {
    Value v = wires[o];
    for (std::size_t l = level[o]; l < levels; ++l) v = ops.hop(v, l);
    out.push_back(std::move(v));
  }
  return out;
}

template <Word W>
Matrix<W> column_block(const Matrix<W>& a, std::size_t i) {
  const std::size_t len = a.rows() * a.w();
  require((i + 1) * len <= a.cols(), ErrorCode::kDimension, "block index out of range");
  Matrix<W> out(a.w(), a.rows(), len);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t j = 0; j < len; ++j) out.raw()[r * len + j] = a(r, i * len + j);
  }
  return out;
}

}  // namespace detail

// A_f for the composite matrix A shared by every level, with blocks for x, the
// appended 1 and optional zero padding after it; the result concatenates one
// k × k·w block per output.
template <Word W>
Matrix<W> eval_rms_key(const Matrix<W>& a, const RmsProgram& f, std::size_t levels) {
  const std::size_t len = a.rows() * a.w();
  require(a.rows() >= 1 && a.cols() % len == 0 && a.cols() / len >= f.num_inputs + 1,
          ErrorCode::kDimension, "public matrix must cover x and the appended 1");
  struct Ops {
    const Matrix<W>& a;
    const RmsProgram& f;
    Matrix<W> input(std::size_t i) { return detail::column_block(a, i); }
    Matrix<W> one() { return detail::column_block(a, f.num_inputs); }
    Matrix<W> add(const Matrix<W>& x, const Matrix<W>& y) { return key_add(x, y); }
    Matrix<W> scalar(const Matrix<W>& x, std::int64_t c) {
      return key_scalar(x, scalar_residue<W>(c, a.w()));
    }
    Matrix<W> mul_input(const Matrix<W>& x, std::size_t, std::size_t i) {
      return key_mul(x, detail::column_block(a, i));
    }
    Matrix<W> hop(const Matrix<W>& x, std::size_t) { return mul_input(x, 0, f.num_inputs); }
  } ops{a, f};
  const auto outs = detail::replay<Matrix<W>>(f, levels, ops);
  Matrix<W> af(a.w(), a.rows(), outs.size() * len);
  for (std::size_t o = 0; o < outs.size(); ++o) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t j = 0; j < len; ++j) af.raw()[r * af.cols() + o * len + j] = outs[o](r, j);
    }
  }
  return af;
}

template <Word W>
Matrix<W> eval_rms_key(const Matrix<W>& a, const RmsProgram& f) {
  return eval_rms_key(a, f, levels_needed(f));
}

// Given level-(j, j+1) encodings c_j of x̂ = (x, 1, 0, …) for j < L, returns one
// level-(0, L) encoding of f(x)_o per output o.
template <Word W>
std::vector<LatticeEncoding<W>> eval_rms_cipher(const RmsProgram& f,
                                                const std::vector<std::int64_t>& x,
                                                const std::vector<LatticeEncoding<W>>& levels) {
  require(x.size() == f.num_inputs, ErrorCode::kDimension, "input length mismatch");
  require(!levels.empty(), ErrorCode::kLevel, "no level encodings supplied");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    require(levels[j].blocks() >= f.num_inputs + 1, ErrorCode::kDimension,
            "level encodings must cover x and the appended 1");
    require(levels[j].enc_level == j && levels[j].auth_level == j + 1, ErrorCode::kLevel,
            "level encoding j must have tag (j, j+1)");
  }
  struct Wire {
    LatticeEncoding<W> e;
    std::int64_t v;
  };
  struct Ops {
    const RmsProgram& f;
    const std::vector<std::int64_t>& x;
    const std::vector<LatticeEncoding<W>>& levels;
    Wire input(std::size_t i) { return {block(levels[0], i), x[i]}; }
    Wire one() { return {block(levels[0], f.num_inputs), 1}; }
    Wire add(const Wire& a, const Wire& b) { return {hom_add(a.e, b.e), a.v + b.v}; }
    Wire scalar(const Wire& a, std::int64_t c) {
      return {hom_scalar(a.e, scalar_residue<W>(c, a.e.a.w())), c * a.v};
    }
    Wire mul_input(const Wire& a, std::size_t lvl, std::size_t i) {
      const std::int64_t xi = i == f.num_inputs ? 1 : x[i];
      return {hom_mul(a.e, block(levels[lvl], i), a.v), a.v * xi};
    }
    Wire hop(const Wire& a, std::size_t lvl) { return mul_input(a, lvl, f.num_inputs); }
  } ops{f, x, levels};
  std::vector<LatticeEncoding<W>> out;
  for (auto& wire : detail::replay<Wire>(f, levels.size(), ops)) out.push_back(std::move(wire.e));
  return out;
}

// Published ledger constant for rms::random_layered programs:
// ledger ≤ β·C·T·(k·w)^d with C = 2·(2·ω_max + 1)^d and ω_max the largest
// scalar weight among constants 1..T.
inline u128 layered_constant(std::int64_t bound_t, unsigned w, std::size_t depth) {
  unsigned omega = 0;
  for (std::int64_t c = 1; c <= bound_t; ++c) {
    omega = std::max(omega, scalar_weight<u128>(static_cast<u128>(c), w));
  }
  return sat_mul(2, sat_pow(2 * omega + 1, depth));
}

inline u128 layered_ledger_cap(u128 beta, std::int64_t bound_t, std::size_t kw, unsigned w,
                               std::size_t depth) {
  return sat_mul(sat_mul(sat_mul(beta, layered_constant(bound_t, w, depth)),
                         static_cast<u128>(bound_t)),
                 sat_pow(kw, depth));
}

}  // namespace lenc
}  // namespace sote

#endif  // SOTE_LATTICE_ENCODING_HPP_
