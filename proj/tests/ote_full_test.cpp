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

#include "sote/ote_full.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sote {
namespace {

using V64 = Vector<std::uint64_t>;
using M64 = Matrix<std::uint64_t>;

RingParams toy(std::uint64_t B, std::uint32_t r = 2) { return make_params(8, 2, 2, 2, r, B); }
RingParams mid(std::uint64_t B) { return make_params(64, 8, 1, 2, 2, B); }

TEST(FullOteTest, SetupShapes) {
  const auto pk = full_ote::setup(toy(1), test_stream("full/setup"));
  EXPECT_EQ(pk.m(), 64u);
  EXPECT_EQ(pk.inner.m, 32u);
  EXPECT_EQ(pk.inner.ell, 16u);
  EXPECT_EQ(pk, full_ote::setup(toy(1), test_stream("full/setup")));
}

TEST(FullOteTest, SingleLevelMatchesHalf) {
  const RingParams p = toy(1, 1);
  const auto pk = full_ote::setup(p, test_stream("full/r1"));
  SeedStream s = test_stream("full/r1/in");
  const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), 8);
  const V64 y = sample_uniform_zq<std::uint64_t>(s, 16, 8);
  EXPECT_EQ(full_ote::hash(pk, x).first.d, half_ote::hash(pk.inner, x).first.d);
  auto [enc, sec] = full_ote::encode(pk, y, test_stream("full/r1/e"));
  auto [henc, hsec] = half_ote::encode(pk.inner, y, test_stream("full/r1/e").derive("level", 0));
  ASSERT_EQ(enc.levels.size(), 1u);
  EXPECT_EQ(enc.levels[0], henc);
  EXPECT_EQ(sec.phi, hsec.s);
  auto [dig, st] = full_ote::hash(pk, x);
  EXPECT_EQ(full_ote::hash_eval(pk, enc, st), half_ote::hash_eval(pk.inner, henc,
                                                                 HalfHasherState<std::uint64_t>{x}));
}

TEST(FullOteTest, HashOfZeroIsZero) {
  const auto pk = full_ote::setup(toy(1), test_stream("full/zero"));
  auto [dig, st] = full_ote::hash(pk, V64(8, pk.m()));
  EXPECT_EQ(dig.d, V64(8, 16));
  for (const auto& lvl : st.levels) EXPECT_EQ(inf_norm(lvl), 0u);
  EXPECT_THROW(full_ote::hash(pk, V64(8, pk.m() - 1)), Error);
}

TEST(FullOteTest, DigestNormBound) {
  const RingParams p = make_params(32, 8, 1, 2, 2, 1);
  const auto pk = full_ote::setup(p, test_stream("full/dn"));
  SeedStream s = test_stream("full/dn/x");
  for (int rep = 0; rep < 10; ++rep) {
    const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), 32);
    auto [dig, st] = full_ote::hash(pk, x);
    EXPECT_LE(static_cast<u128>(inf_norm(dig.d)), full_ote::digest_bound(p, 1));
    EXPECT_EQ(st.levels.size(), 2u);
    EXPECT_EQ(st.levels[1].size(), 2u * 32);
  }
}

TEST(FullOteTest, EncodeShapes) {
  const auto pk = full_ote::setup(toy(1, 3), test_stream("full/shape"));
  FullEncodeTrace<std::uint64_t> trace;
  auto [enc, sec] =
      full_ote::encode(pk, V64(8, 16), test_stream("full/shape/e"), std::nullopt, &trace);
  EXPECT_EQ(enc.levels.size(), 3u);
  EXPECT_EQ(sec.phi.size(), 2u);
  ASSERT_EQ(trace.payloads.size(), 3u);
  for (const auto& y : trace.payloads) EXPECT_EQ(y.size(), 16u);
  EXPECT_THROW(full_ote::encode(pk, V64(8, 15), test_stream("e")), Error);
}

class FullOteZeroNoise : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(FullOteZeroNoise, ReconstructsTensorExactly) {
  const RingParams p = toy(0, GetParam());
  const auto pk = full_ote::setup(p, test_stream("full/exact"));
  SeedStream s = test_stream("full/exact/in");
  for (int rep = 0; rep < 5; ++rep) {
    const V64 x = sample_uniform_zq<std::uint64_t>(s, pk.m(), 8);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 16, 8);
    auto [dig, st] = full_ote::hash(pk, x);
    auto [enc, sec] = full_ote::encode(pk, y, test_stream("full/exact").derive("t", rep));
    EXPECT_EQ(full_ote::hash_eval(pk, enc, st) + full_ote::enc_eval(pk, dig, sec),
              tensor_oracle(x, y, 8));
  }
}

INSTANTIATE_TEST_SUITE_P(Depths, FullOteZeroNoise, ::testing::Values(1u, 2u, 3u));

TEST(FullOteTest, ErrorBoundAndPerLevelRecursion) {
  const RingParams p = mid(2);
  const auto pk = full_ote::setup(p, test_stream("full/levels"));
  SeedStream s = test_stream("full/levels/in");
  for (int rep = 0; rep < 3; ++rep) {
    const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), 64);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, p.n(), 64);
    auto [dig, st] = full_ote::hash(pk, x);
    FullEncodeTrace<std::uint64_t> trace;
    auto [enc, sec] =
        full_ote::encode(pk, y, test_stream("full/levels").derive("t", rep), std::nullopt, &trace);
    const V64 total = full_ote::hash_eval(pk, enc, st) + full_ote::enc_eval(pk, dig, sec);
    EXPECT_LE(static_cast<u128>(inf_norm(total - tensor_oracle(x, y, 64))),
              full_ote::error_bound(p, 1));

    const auto vs = full_ote::hash_eval_levels(pk, enc, st);
    V64 partial = vs[p.r - 1] + half_ote::enc_eval(pk.inner, HalfDigest<std::uint64_t>{dig.d},
                                                   HalfEncoderSecret<std::uint64_t>{sec.phi});
    for (std::size_t i = p.r; i-- > 0;) {
      if (i + 1 < p.r) partial = full_ote::apply_level(pk, i + 1, partial) + vs[i];
      const V64 err = partial - tensor_oracle(st.levels[i], trace.payloads[i], 64);
      EXPECT_LE(static_cast<u128>(inf_norm(err)), full_ote::level_error_bound(p, i, 1))
          << "level " << i;
    }
  }
}

TEST(FullOteTest, BilinearPathMatchesComposedMatrix) {
  const RingParams p = toy(1);
  const auto pk = full_ote::setup(p, test_stream("full/bil"));
  const M64 composed = full_ote::composed_public_matrix<std::uint64_t>(pk);
  EXPECT_EQ(composed.rows(), pk.m() * p.n());
  EXPECT_EQ(composed.cols(), p.n() * p.n());
  SeedStream s = test_stream("full/bil/in");
  for (int rep = 0; rep < 10; ++rep) {
    const V64 d = sample_uniform_zq<std::uint64_t>(s, p.n(), 8);
    const V64 phi = sample_uniform_zq<std::uint64_t>(s, p.k, 8);
    const V64 z = kron(d, half_ote::gadget_expand(phi));
    const V64 w = full_ote::enc_eval(pk, FullDigest<std::uint64_t>{d},
                                     FullEncoderSecret<std::uint64_t>{phi});
    EXPECT_EQ(full_ote::apply_composed(pk, z), w);
    EXPECT_EQ(mat_vec(composed, z), w);
  }
  EXPECT_EQ(full_ote::enc_eval(pk, FullDigest<std::uint64_t>{V64(8, 16)},
                               FullEncoderSecret<std::uint64_t>{V64(8, 2)}),
            V64(8, pk.m() * p.n()));
}

TEST(FullOteTest, ComposedMatrixNormBound) {
  const RingParams p = make_params(24, 8, 1, 1, 2, 1);
  const auto pk = full_ote::setup(p, test_stream("full/norm"));
  const M64 composed = full_ote::composed_public_matrix<std::uint64_t>(pk);
  EXPECT_LE(static_cast<u128>(inf_norm(composed)), full_ote::composed_norm_bound(p));
}

TEST(FullOteTest, SingleBlockMatchesEncode) {
  const auto pk = full_ote::setup(toy(1), test_stream("full/blk1"));
  SeedStream s = test_stream("full/blk1/in");
  const V64 y = sample_uniform_zq<std::uint64_t>(s, 16, 8);
  auto [benc, bsec] = full_ote::encode_blocks(pk, y, test_stream("full/blk1/e"));
  ASSERT_EQ(benc.blocks.size(), 1u);
  auto [enc, sec] = full_ote::encode(pk, y, test_stream("full/blk1/e").derive("block", 0));
  EXPECT_EQ(benc.blocks[0], enc);
  EXPECT_EQ(bsec.blocks[0], sec);
}

TEST(FullOteTest, BlocksReconstructZeroNoise) {
  const auto pk = full_ote::setup(toy(0), test_stream("full/blk"));
  SeedStream s = test_stream("full/blk/in");
  for (std::size_t ell : {std::size_t{32}, std::size_t{17}, std::size_t{3}}) {
    const V64 x = sample_uniform_zq<std::uint64_t>(s, pk.m(), 8);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, ell, 8);
    auto [dig, st] = full_ote::hash(pk, x);
    auto [enc, sec] = full_ote::encode_blocks(pk, y, test_stream("full/blk/e"));
    EXPECT_EQ(enc.blocks.size(), full_ote::block_count(pk, ell));
    EXPECT_EQ(full_ote::hash_eval_blocks(pk, enc, st) + full_ote::enc_eval_blocks(pk, dig, sec),
              tensor_oracle(x, y, 8));
  }
}

TEST(FullOteTest, ExactWrapperZeroNoise) {
  const RingParams p = make_params(48, 8, 1, 2, 2, 0);
  const auto pk = full_ote::setup(p, test_stream("full/xz"));
  SeedStream s = test_stream("full/xz/in");
  for (bool rerand : {false, true}) {
    for (int rep = 0; rep < 3; ++rep) {
      const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), p.w);
      const V64 y = sample_uniform_zq<std::uint64_t>(s, p.n(), p.p_log);
      auto [dig, st] = full_ote::hash(pk, x);
      auto [enc, sec] = full_ote::exact_encode(pk, y, test_stream("full/xz/e"), rerand);
      EXPECT_EQ(enc.mask_seed.has_value(), rerand);
      const V64 sh = full_ote::exact_hasher_share(pk, enc, st);
      const V64 se = full_ote::exact_encoder_share(pk, dig, sec);
      EXPECT_EQ(sh + se, tensor_oracle(x, y, p.p_log));
    }
  }
}

// Entry-wise rounding of two shares of Δ·v errs exactly when the hasher's
// offset sits on the -Δ/2 boundary, so the indicator is checked at a small Δ.
TEST(FullOteTest, ExactFailureIndicatorZeroNoise) {
  const RingParams p = toy(0);
  const auto pk = full_ote::setup(p, test_stream("full/ind"));
  SeedStream s = test_stream("full/ind/in");
  const std::uint64_t delta = std::uint64_t{1} << p.delta_log();
  std::size_t predicted = 0, observed = 0;
  for (int rep = 0; rep < 5; ++rep) {
    const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), p.w);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, p.n(), p.p_log);
    auto [dig, st] = full_ote::hash(pk, x);
    auto [enc, sec] = full_ote::exact_encode(pk, y, test_stream("full/ind").derive("t", rep));
    const V64 raw = full_ote::hash_eval_blocks(pk, enc.enc, st) +
                    prg_expand_zq<std::uint64_t>(*enc.mask_seed, pk.m() * p.n(), p.w);
    const V64 sum = full_ote::exact_hasher_share(pk, enc, st) +
                    full_ote::exact_encoder_share(pk, dig, sec);
    const V64 truth = tensor_oracle(x, y, p.p_log);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      const bool boundary = raw[i] % delta == delta / 2;
      const bool wrong = sum[i] != truth[i];
      predicted += boundary;
      observed += wrong;
      EXPECT_EQ(boundary, wrong) << "entry " << i;
    }
  }
  EXPECT_EQ(predicted, observed);
  EXPECT_GT(observed, 0u);
}

TEST(FullOteTest, ExactWrapperWithNoise) {
  const RingParams p = mid(2);
  const auto pk = full_ote::setup(p, test_stream("full/xn"));
  SeedStream s = test_stream("full/xn/in");
  for (int rep = 0; rep < 2; ++rep) {
    const V64 x = sample_binary_vector<std::uint64_t>(s, pk.m(), 64);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, p.n(), p.p_log);
    auto [dig, st] = full_ote::hash(pk, x);
    auto [enc, sec] = full_ote::exact_encode(pk, y, test_stream("full/xn").derive("t", rep));
    const V64 sh = full_ote::exact_hasher_share(pk, enc, st);
    const V64 se = full_ote::exact_encoder_share(pk, dig, sec);
    EXPECT_EQ(sh + se, tensor_oracle(x, y, p.p_log));
    EXPECT_EQ(sh.w(), p.p_log);
  }
}

TEST(FullOteTest, SimulatorShape) {
  const auto pk = full_ote::setup(toy(1), test_stream("full/sim"));
  const auto enc = full_ote::simulate_encoding<std::uint64_t>(pk, test_stream("full/sim/s"));
  EXPECT_NO_THROW(full_ote::check_encoding(pk, enc));
  EXPECT_EQ(enc, full_ote::simulate_encoding<std::uint64_t>(pk, test_stream("full/sim/s")));
}

}  // namespace
}  // namespace sote
