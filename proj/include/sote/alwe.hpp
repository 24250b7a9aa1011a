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

// Counterexample to adaptive LWE when the number of encoded bits may exceed
// the LWE dimension. For M ∈ Z_q^{n×n} and x = Bits(M), a public binary H
// satisfies (x^T ⊗ G)·H = M. Choosing M_i = A·H − 2^i·I turns the challenger's
// encoding b_i = s^T(A − x_i^T ⊗ G) + e_i^T into b_i·H = 2^i·s^T + e_i^T·H.
//
// Decoding works from the last plane down. Plane i carries bit w−1−i of s in
// its top position once the already known lower bits, shifted by i, are
// subtracted; the bit is then read by rounding to {0, q/2}, so a plane fails
// only when |e^T H| ≥ q/4.

#ifndef SOTE_ALWE_HPP_
#define SOTE_ALWE_HPP_

#include <functional>
#include <vector>

#include "sote/bounds.hpp"
#include "sote/ring.hpp"
#include "sote/sampling.hpp"

namespace sote {

struct AlweParams {
  std::size_t n = 2;  // secret dimension
  unsigned w = 8;
  std::uint64_t B = 0;

  std::size_t m_g() const { return n * w; }
  // Bits(M) length n²·w, one column block of A per bit.
  std::size_t num_blocks() const { return n * n * w; }
  std::size_t width() const { return num_blocks() * m_g(); }
  bool operator==(const AlweParams&) const = default;
};

template <Word W>
struct AlwePlane {
  Matrix<W> a;  // n × width, the challenger's A_0 ‖ … ‖ A_{k−1}
  Vector<W> b;  // challenger's answer
};

struct AlweReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::vector<std::size_t> plane_flips;  // wrong coordinates per plane
  u128 max_plane_noise = 0;              // max |e^T H| seen
  u128 noise_bound = 0;                  // n·w·B
  double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

namespace alwe {

// Bits(M): entry (a·n + b)·w + t is bit t of M[a, b].
template <Word W>
Vector<W> bits_of(const Matrix<W>& m) {
  const unsigned w = m.w();
  Vector<W> out(w, m.rows() * m.cols() * w);
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) {
      for (unsigned t = 0; t < w; ++t) out.raw()[(a * m.cols() + b) * w + t] = (m(a, b) >> t) & 1;
    }
  }
  return out;
}

// Column block j = (a·n + b)·w + t of H is e_{a·w+t}·e_b^T.
template <Word W>
Matrix<W> build_selection_h(std::size_t n, unsigned w) {
  const std::size_t mg = n * w;
  Matrix<W> h(w, n * n * w * mg, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (unsigned t = 0; t < w; ++t) {
        const std::size_t j = (a * n + b) * w + t;
        h.set(j * mg + a * w + t, b, 1);
      }
    }
  }
  return h;
}

// v·H without materialising H: out[b] = Σ_{a,t} v[((a·n + b)·w + t)·m_g + a·w + t].
template <Word W>
Vector<W> apply_h(const AlweParams& p, std::span<const W> v) {
  require(v.size() == p.width(), ErrorCode::kDimension, "H applied to wrong length");
  Vector<W> out(p.w, p.n);
  for (std::size_t b = 0; b < p.n; ++b) {
    W acc = 0;
    for (std::size_t a = 0; a < p.n; ++a) {
      for (unsigned t = 0; t < p.w; ++t) acc += v[(((a * p.n + b) * p.w + t) * p.m_g()) + a * p.w + t];
    }
    out.raw()[b] = acc;
  }
  out.reduce_all();
  return out;
}

// A·H, row by row.
template <Word W>
Matrix<W> times_h(const AlweParams& p, const Matrix<W>& a) {
  Matrix<W> out(p.w, a.rows(), p.n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const Vector<W> row = apply_h(p, a.row(r));
    for (std::size_t b = 0; b < p.n; ++b) out.set(r, b, row[b]);
  }
  return out;
}

// x_i = Bits(A·H − 2^i·I).
template <Word W>
Vector<W> craft_adaptive_input(const AlweParams& p, const Matrix<W>& a_concat, unsigned i) {
  require(a_concat.rows() == p.n && a_concat.cols() == p.width(), ErrorCode::kDimension,
          "A must be n x (n^2*w*m_g)");
  require(i < p.w, ErrorCode::kParameter, "plane index out of range");
  Matrix<W> m = times_h(p, a_concat);
  const W shift = reduce<W>(W{1} << i, p.w);
  for (std::size_t c = 0; c < p.n; ++c) m.set(c, c, m(c, c) - shift);
  return bits_of(m);
}

// Challenger answer s^T(A − x^T ⊗ G) + e^T; block j of x^T ⊗ G is x_j·G.
template <Word W>
Vector<W> challenger_encode(const AlweParams& p, const Matrix<W>& a, const Vector<W>& x,
                            const Vector<W>& s, SeedStream& noise) {
  require(x.size() == p.num_blocks() && s.size() == p.n, ErrorCode::kDimension,
          "challenger input has wrong length");
  Vector<W> b = vec_mat(s, a);
  const std::size_t mg = p.m_g();
  for (std::size_t j = 0; j < p.num_blocks(); ++j) {
    if (x[j] == 0) continue;
    // s^T·G = s ⊗ g.
    for (std::size_t c = 0; c < p.n; ++c) {
      for (unsigned t = 0; t < p.w; ++t) b.raw()[j * mg + c * p.w + t] -= s[c] << t;
    }
  }
  b.reduce_all();
  add_noise<W>(noise, std::span<W>(b.raw(), b.size()), p.B, p.w);
  return b;
}

// Recovers s from the answers of all w planes (planes[i] answers x_i).
template <Word W>
Vector<W> recover_secret(const AlweParams& p, const std::vector<AlwePlane<W>>& planes) {
  require(planes.size() == p.w, ErrorCode::kDimension, "need one answer per bit-plane");
  Vector<W> s(p.w, p.n);
  const W half = W{1} << (p.w - 1);
  for (unsigned i = p.w; i-- > 0;) {
    const Vector<W> y = apply_h(p, planes[i].b.entries());
    const unsigned bit = p.w - 1 - i;
    for (std::size_t c = 0; c < p.n; ++c) {
      const W known = reduce<W>(s[c] << i, p.w);
      const W v = reduce<W>(y[c] - known, p.w);
      // Nearest of {0, q/2}.
      const W dist0 = std::min(v, reduce<W>(W{0} - v, p.w));
      const W dist1 = v > half ? v - half : half - v;
      if (dist1 < dist0) s.set(c, s[c] | (W{1} << bit));
    }
  }
  return s;
}

struct AlweGame {
  bool success = false;
  std::vector<std::size_t> plane_flips;  // wrong coordinates per plane
  u128 max_plane_noise = 0;
};

// One game with b = 0 on stream gs; each plane uses a fresh A. `on_answer`,
// if set, sees every answer on its way to the adversary and may replace it
// (used to route answers through the wire format).
template <Word W>
AlweGame play_alwe_game(const AlweParams& p, const SeedStream& gs,
                        const std::function<void(unsigned, Vector<W>&)>& on_answer = {}) {
  check_width<W>(p.w);
  AlweGame game;
  game.plane_flips.assign(p.w, 0);
  SeedStream ss = gs.derive("secret");
  const Vector<W> s = sample_uniform_zq<W>(ss, p.n, p.w);
  std::vector<AlwePlane<W>> planes;
  for (unsigned i = 0; i < p.w; ++i) {
    SeedStream as = gs.derive("A", i);
    SeedStream es = gs.derive("noise", i);
    AlwePlane<W> pl{sample_uniform_matrix<W>(as, p.n, p.width(), p.w), {}};
    const Vector<W> x = craft_adaptive_input(p, pl.a, i);
    pl.b = challenger_encode(p, pl.a, x, s, es);
    // Challenger-side audit of e^T H = b·H − 2^i·s^T.
    const Vector<W> y = apply_h(p, pl.b.entries());
    for (std::size_t c = 0; c < p.n; ++c) {
      const W e = reduce<W>(y[c] - (s[c] << i), p.w);
      game.max_plane_noise = std::max<u128>(game.max_plane_noise, signed_abs<W>(e, p.w));
    }
    pl.a = Matrix<W>();
    if (on_answer) on_answer(i, pl.b);
    planes.push_back(std::move(pl));
  }
  const Vector<W> guess = recover_secret(p, planes);
  game.success = guess == s;
  for (unsigned i = 0; i < p.w; ++i) {
    const unsigned bit = p.w - 1 - i;
    for (std::size_t c = 0; c < p.n; ++c) {
      if (((guess[c] ^ s[c]) >> bit) & 1) ++game.plane_flips[i];
    }
  }
  return game;
}

inline u128 alwe_noise_bound(const AlweParams& p) { return sat_mul(sat_mul(p.n, p.w), p.B); }

// Plays `trials` games; game g uses stream.derive("game", g).
template <Word W>
AlweReport run_alwe_game(const AlweParams& p, std::size_t trials, const SeedStream& stream) {
  check_width<W>(p.w);
  AlweReport rep;
  rep.trials = trials;
  rep.plane_flips.assign(p.w, 0);
  rep.noise_bound = alwe_noise_bound(p);
  for (std::size_t g = 0; g < trials; ++g) {
    const AlweGame game = play_alwe_game<W>(p, stream.derive("game", g));
    if (game.success) ++rep.successes;
    for (unsigned i = 0; i < p.w; ++i) rep.plane_flips[i] += game.plane_flips[i];
    rep.max_plane_noise = std::max(rep.max_plane_noise, game.max_plane_noise);
  }
  return rep;
}

// The b = 1 branch: uniform answers, for API completeness.
template <Word W>
Vector<W> uniform_answer(const AlweParams& p, SeedStream& stream) {
  return sample_uniform_zq<W>(stream, p.width(), p.w);
}

}  // namespace alwe
}  // namespace sote

#endif  // SOTE_ALWE_HPP_
