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

#include "sote/lattice_encoding.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sote {
namespace {

using V64 = Vector<std::uint64_t>;
using M64 = Matrix<std::uint64_t>;
using Enc = LatticeEncoding<std::uint64_t>;

constexpr unsigned kW = 32;
constexpr std::size_t kK = 2;

V64 scalar(std::uint64_t v) { return V64(kW, std::vector<std::uint64_t>{v}); }

struct Keys {
  std::vector<V64> s;
};

Keys sample_keys(SeedStream& st, std::size_t count) {
  Keys k;
  for (std::size_t i = 0; i < count; ++i) k.s.push_back(sample_uniform_zq<std::uint64_t>(st, kK, kW));
  return k;
}

TEST(LatticeEncodingTest, ZeroEncoding) {
  SeedStream st = test_stream("lenc/zero");
  const M64 a = sample_uniform_matrix<std::uint64_t>(st, kK, 3 * kK * kW, kW);
  const Enc e = lenc::encode(a, V64(kW, 3), V64(kW, kK), sample_uniform_zq<std::uint64_t>(st, kK, kW),
                             st, 0);
  EXPECT_EQ(e.c, V64(kW, 3 * kK * kW));
  EXPECT_EQ(e.blocks(), 3u);
}

TEST(LatticeEncodingTest, ResidualIsTheNoise) {
  SeedStream st = test_stream("lenc/res");
  for (int rep = 0; rep < 20; ++rep) {
    const M64 a = sample_uniform_matrix<std::uint64_t>(st, kK, 4 * kK * kW, kW);
    const V64 x = sample_uniform_zq<std::uint64_t>(st, 4, kW);
    const Keys k = sample_keys(st, 2);
    const Enc e = lenc::encode(a, x, k.s[0], k.s[1], st, 2);
    EXPECT_LE(inf_norm(lenc::residual(e, k.s[0], k.s[1], x)), 2u);
    // r = -s gives s^T (A - x^T ⊗ G) + e^T.
    const Enc b = lenc::encode(a, x, k.s[0], -k.s[0], st, 2);
    const M64 xg = kron(x.as_row(), gadget_matrix<std::uint64_t>(kK, kW));
    EXPECT_LE(inf_norm(b.c - vec_mat(k.s[0], a - xg)), 2u);
  }
  EXPECT_THROW(lenc::encode(M64(kW, kK, 5), V64(kW, 1), V64(kW, kK), V64(kW, kK), st, 1), Error);
}

TEST(LatticeEncodingTest, AdditionIdentity) {
  SeedStream st = test_stream("lenc/add");
  for (int rep = 0; rep < 100; ++rep) {
    const Keys k = sample_keys(st, 2);
    const M64 a0 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
    const M64 a1 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
    const V64 x0 = sample_uniform_zq<std::uint64_t>(st, 1, kW);
    const V64 x1 = sample_uniform_zq<std::uint64_t>(st, 1, kW);
    const Enc c0 = lenc::encode(a0, x0, k.s[0], k.s[1], st, 3);
    const Enc c1 = lenc::encode(a1, x1, k.s[0], k.s[1], st, 3);
    const Enc sum = lenc::hom_add(c0, c1);
    EXPECT_EQ(sum.a, a0 + a1);
    EXPECT_EQ(lenc::residual(sum, k.s[0], k.s[1], x0 + x1),
              lenc::residual(c0, k.s[0], k.s[1], x0) + lenc::residual(c1, k.s[0], k.s[1], x1));
    EXPECT_EQ(sum.c, lenc::hom_add(c1, c0).c);
    EXPECT_LE(static_cast<u128>(inf_norm(lenc::residual(sum, k.s[0], k.s[1], x0 + x1))),
              sum.noise);
  }
}

TEST(LatticeEncodingTest, AddingZeroEncodingKeepsPlaintext) {
  SeedStream st = test_stream("lenc/add0");
  const Keys k = sample_keys(st, 2);
  const M64 a0 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
  const M64 a1 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
  const Enc c = lenc::encode(a0, scalar(9), k.s[0], k.s[1], st, 0);
  const Enc z = lenc::encode(a1, scalar(0), k.s[0], k.s[1], st, 0);
  const Enc sum = lenc::hom_add(c, z);
  EXPECT_EQ(inf_norm(lenc::residual(sum, k.s[0], k.s[1], scalar(9))), 0u);
}

TEST(LatticeEncodingTest, ScalarIdentity) {
  SeedStream st = test_stream("lenc/smul");
  for (int rep = 0; rep < 100; ++rep) {
    const Keys k = sample_keys(st, 2);
    const M64 a = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
    const V64 x = sample_uniform_zq<std::uint64_t>(st, 1, kW);
    const std::uint64_t delta = rep < 2 ? rep : sample_uniform_zq<std::uint64_t>(st, 1, kW)[0];
    const Enc c = lenc::encode(a, x, k.s[0], k.s[1], st, 2);
    const Enc out = lenc::hom_scalar(c, delta);
    const M64 ginv = g_inv(lenc::scalar_gadget<std::uint64_t>(kK, kW, delta));
    EXPECT_EQ(out.a, mat_mul(a, ginv));
    const V64 e = lenc::residual(c, k.s[0], k.s[1], x);
    const V64 dx = scalar(delta * x[0]);
    EXPECT_EQ(lenc::residual(out, k.s[0], k.s[1], dx), vec_mat(e, ginv));
    EXPECT_LE(static_cast<u128>(inf_norm(vec_mat(e, ginv))), out.noise);
  }
}

TEST(LatticeEncodingTest, ScalarDegenerateCases) {
  SeedStream st = test_stream("lenc/smul1");
  const Keys k = sample_keys(st, 2);
  const M64 a = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
  const Enc c = lenc::encode(a, scalar(5), k.s[0], k.s[1], st, 1);
  const Enc one = lenc::hom_scalar(c, std::uint64_t{1});
  EXPECT_EQ(one.c, c.c);
  EXPECT_EQ(one.a, a);
  const Enc zero = lenc::hom_scalar(c, std::uint64_t{0});
  EXPECT_EQ(zero.c, V64(kW, kK * kW));
  EXPECT_EQ(lenc::scalar_weight<std::uint64_t>(1, kW), 1u);
  EXPECT_EQ(lenc::scalar_weight<std::uint64_t>(3, kW), 2u);
  EXPECT_EQ(lenc::scalar_weight<std::uint64_t>((1ull << kW) - 1, kW), kW);
}

TEST(LatticeEncodingTest, MultiplicationIdentity) {
  SeedStream st = test_stream("lenc/mul");
  for (int rep = 0; rep < 100; ++rep) {
    const Keys k = sample_keys(st, 3);
    const M64 a0 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
    const M64 a1 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
    const std::int64_t x0 = static_cast<std::int64_t>(uniform_below(st, 9)) - 4;
    const V64 x0r = scalar(from_signed<std::uint64_t>(x0, kW));
    const V64 x1 = sample_uniform_zq<std::uint64_t>(st, 1, kW);
    Enc c0 = lenc::encode(a0, x0r, k.s[0], k.s[1], st, 2, 0, 1);
    Enc c1 = lenc::encode(a1, x1, k.s[1], k.s[2], st, 2, 1, 2);
    const Enc out = lenc::hom_mul(c0, c1, x0);
    EXPECT_EQ(out.enc_level, 0u);
    EXPECT_EQ(out.auth_level, 2u);
    const M64 ginv = g_inv(a1);
    EXPECT_EQ(out.a, -mat_mul(a0, ginv));
    const V64 e0 = lenc::residual(c0, k.s[0], k.s[1], x0r);
    const V64 e1 = lenc::residual(c1, k.s[1], k.s[2], x1);
    const V64 expect = scale(e1, x0r[0]) - vec_mat(e0, ginv);
    EXPECT_EQ(lenc::residual(out, k.s[0], k.s[2], scalar(x0r[0] * x1[0])), expect);
    EXPECT_LE(static_cast<u128>(inf_norm(expect)), out.noise);
  }
}

TEST(LatticeEncodingTest, MultiplicationSpecialCases) {
  SeedStream st = test_stream("lenc/mul0");
  const Keys k = sample_keys(st, 3);
  const M64 a0 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
  const M64 a1 = sample_uniform_matrix<std::uint64_t>(st, kK, kK * kW, kW);
  const Enc c0 = lenc::encode(a0, scalar(0), k.s[0], k.s[1], st, 2, 0, 1);
  const Enc c1 = lenc::encode(a1, scalar(7), k.s[1], k.s[2], st, 2, 1, 2);
  const Enc z = lenc::hom_mul(c0, c1, 0);
  const V64 e0 = lenc::residual(c0, k.s[0], k.s[1], scalar(0));
  EXPECT_EQ(lenc::residual(z, k.s[0], k.s[2], scalar(0)), -vec_mat(e0, g_inv(a1)));
  // Level hop: multiply an encoding of 6 by a level-(1, 2) encoding of 1.
  const Enc six = lenc::encode(a0, scalar(6), k.s[0], k.s[1], st, 2, 0, 1);
  const Enc one = lenc::encode(a1, scalar(1), k.s[1], k.s[2], st, 2, 1, 2);
  const Enc hop = lenc::hom_mul(six, one, 6);
  EXPECT_LE(static_cast<u128>(inf_norm(lenc::residual(hop, k.s[0], k.s[2], scalar(6)))),
            hop.noise);
  EXPECT_THROW(lenc::hom_mul(c1, c0, 7), Error);
  EXPECT_THROW(lenc::hom_mul(c0, c0, 0), Error);
  EXPECT_THROW(lenc::hom_add(c0, c1), Error);
}

// Level encodings c_j = LEnc_A(x̂; s_j, s_{j+1}) for j < L.
struct RmsFixture {
  M64 a;
  std::vector<V64> keys;
  std::vector<Enc> levels;
};

RmsFixture make_levels(SeedStream& st, const std::vector<std::int64_t>& x, std::size_t L,
                       std::uint64_t B, unsigned w = kW, std::size_t k = kK) {
  RmsFixture fx;
  const std::size_t n_hat = x.size() + 1;
  fx.a = sample_uniform_matrix<std::uint64_t>(st, k, n_hat * k * w, w);
  for (std::size_t j = 0; j <= L; ++j) fx.keys.push_back(sample_uniform_zq<std::uint64_t>(st, k, w));
  V64 xh(w, n_hat);
  for (std::size_t i = 0; i < x.size(); ++i) xh.set(i, from_signed<std::uint64_t>(x[i], w));
  xh.set(x.size(), 1);
  for (std::size_t j = 0; j < L; ++j) {
    fx.levels.push_back(lenc::encode(fx.a, xh, fx.keys[j], fx.keys[j + 1], st, B, j, j + 1));
  }
  return fx;
}

V64 output_residual(const Enc& e, const RmsFixture& fx, std::int64_t value) {
  const unsigned w = e.a.w();
  return lenc::residual(e, fx.keys[0], fx.keys[e.auth_level],
                        V64(w, std::vector<std::uint64_t>{from_signed<std::uint64_t>(value, w)}));
}

TEST(LatticeEncodingTest, ConstantOneProgram) {
  SeedStream st = test_stream("lenc/const");
  const RmsProgram f = rms::parse("INPUTS 2\nOUT one\n");
  const auto fx = make_levels(st, {1, 0}, 1, 2);
  const auto out = lenc::eval_rms_cipher(f, {1, 0}, fx.levels);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].auth_level, 1u);
  EXPECT_LE(static_cast<u128>(inf_norm(output_residual(out[0], fx, 1))), out[0].noise);
}

TEST(LatticeEncodingTest, ZeroNoiseProductHasZeroResidual) {
  SeedStream st = test_stream("lenc/prod");
  const RmsProgram f = rms::parse("MULIN x0 1\nOUT t0\n");
  for (std::vector<std::int64_t> x : {std::vector<std::int64_t>{1, 1}, {1, 0}, {0, 1}}) {
    const auto fx = make_levels(st, x, 2, 0);
    const auto out = lenc::eval_rms_cipher(f, x, fx.levels);
    EXPECT_EQ(inf_norm(output_residual(out[0], fx, x[0] * x[1])), 0u);
    EXPECT_EQ(out[0].a, lenc::eval_rms_key(fx.a, f, 2));
  }
}

TEST(LatticeEncodingTest, IdentityAndSumPrograms) {
  SeedStream st = test_stream("lenc/id");
  const auto fx = make_levels(st, {1, 0, 1}, 1, 1);
  const RmsProgram id = rms::parse("INPUTS 3\nOUT x0\n");
  EXPECT_EQ(lenc::eval_rms_key(fx.a, id), lenc::detail::column_block(fx.a, 0));
  const RmsProgram sum = rms::parse("INPUTS 3\nADD x0 x1\nOUT t0\n");
  EXPECT_EQ(lenc::eval_rms_key(fx.a, sum),
            lenc::detail::column_block(fx.a, 0) + lenc::detail::column_block(fx.a, 1));
}

TEST(LatticeEncodingTest, InsufficientLevelsRejected) {
  SeedStream st = test_stream("lenc/lvl");
  const RmsProgram f = rms::parse("MULIN x0 1\nMULIN t0 0\nOUT t1\n");
  const auto fx = make_levels(st, {1, 1}, 2, 1);
  EXPECT_THROW(lenc::eval_rms_cipher(f, {1, 1}, fx.levels), Error);
  EXPECT_EQ(lenc::levels_needed(f), 3u);
}

TEST(LatticeEncodingTest, KeyAndCipherPathsAgree) {
  SeedStream st = test_stream("lenc/dual");
  for (int rep = 0; rep < 20; ++rep) {
    const RmsProgram f = rms::random_layered(st, 4, 2, 4, 3, 2);
    std::vector<std::int64_t> x(4);
    for (auto& v : x) v = static_cast<std::int64_t>(uniform_below(st, 2));
    const auto fx = make_levels(st, x, 3, 2);
    const auto outs = lenc::eval_rms_cipher(f, x, fx.levels);
    EXPECT_EQ(lenc::concat(outs).a, lenc::eval_rms_key(fx.a, f, 3));
  }
}

TEST(LatticeEncodingTest, ExampleProgramResidualWithinLedger) {
  SeedStream st = test_stream("lenc/ex");
  const RmsProgram f = rms::parse("ADD x0 x1\nMULIN t0 2\nMULIN t1 3\nOUT t2\n");
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::int64_t> x(4);
    for (auto& v : x) v = static_cast<std::int64_t>(uniform_below(st, 2));
    const auto fx = make_levels(st, x, 3, 2, 40, 4);
    const auto out = lenc::eval_rms_cipher(f, x, fx.levels);
    const std::int64_t fx_val = rms::eval_plain(f, x)[0];
    EXPECT_LE(static_cast<u128>(inf_norm(output_residual(out[0], fx, fx_val))), out[0].noise);
  }
}

TEST(LatticeEncodingTest, LedgerSoundAndWithinPublishedConstant) {
  SeedStream st = test_stream("lenc/ledger");
  const std::int64_t T = 4;
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t depth = uniform_below(st, 4);
    const RmsProgram f = rms::random_layered(st, 4, depth, T, 3, 2);
    rms::validate(f, 3, T);
    std::vector<std::int64_t> x(4);
    for (auto& v : x) v = static_cast<std::int64_t>(uniform_below(st, 2));
    const auto fx = make_levels(st, x, depth + 1, 2);
    const auto outs = lenc::eval_rms_cipher(f, x, fx.levels);
    const auto vals = rms::eval_plain(f, x);
    const u128 cap = lenc::layered_ledger_cap(2, T, kK * kW, kW, depth);
    for (std::size_t o = 0; o < outs.size(); ++o) {
      EXPECT_LE(static_cast<u128>(inf_norm(output_residual(outs[o], fx, vals[o]))), outs[o].noise);
      EXPECT_LE(outs[o].noise, cap);
    }
  }
}

}  // namespace
}  // namespace sote
