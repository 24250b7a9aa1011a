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

#include "sote/ote_half.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sote {
namespace {

using V64 = Vector<std::uint64_t>;
using M64 = Matrix<std::uint64_t>;

RingParams toy(std::uint64_t B = 1) { return make_params(8, 2, 2, 2, 2, B); }

// Dense oracle for C = A^T (B (I ⊗ s ⊗ g^T) + E') + Ê + I ⊗ y^T without noise.
M64 dense_encoding(const HalfOtePublicKey& pk, const V64& s, const V64& y) {
  const unsigned w = pk.params.w;
  const M64 a = pk.a.to_matrix<std::uint64_t>(w);
  const M64 b = pk.b.to_matrix<std::uint64_t>(w);
  const V64 u = half_ote::gadget_expand(s);
  const M64 lift = kron(M64::identity(w, pk.m * pk.ell), u.as_column());
  M64 c = mat_mul(transpose(a), mat_mul(b, lift));
  return c + kron(M64::identity(w, pk.m), y.as_row());
}

TEST(HalfOteTest, SetupShapes) {
  const auto pk = half_ote::setup(toy(), 8, 4, test_stream("half/setup"));
  EXPECT_EQ(pk.a.rows(), 16u);
  EXPECT_EQ(pk.a.cols(), 8u);
  EXPECT_EQ(pk.b.rows(), 16u);
  EXPECT_EQ(pk.b.cols(), 8u * 4 * 16);
  EXPECT_EQ(pk, half_ote::setup(toy(), 8, 4, test_stream("half/setup")));
}

TEST(HalfOteTest, SetupBitFrequency) {
  const auto pk = half_ote::setup(make_params(16, 4, 4, 2, 2, 1), 64, 8, test_stream("half/f"));
  const double f = static_cast<double>(pk.b.popcount()) / (pk.b.rows() * pk.b.cols());
  EXPECT_NEAR(f, 0.5, 0.01);
  const double fa = static_cast<double>(pk.a.popcount()) / (pk.a.rows() * pk.a.cols());
  EXPECT_NEAR(fa, 0.5, 0.05);
}

TEST(HalfOteTest, SetupRejectsBadShapes) {
  EXPECT_THROW(half_ote::setup(toy(), 0, 4, test_stream("x")), Error);
  EXPECT_THROW(half_ote::setup(toy(), std::size_t{1} << 40, 4, test_stream("x")), Error);
}

TEST(HalfOteTest, HashMatchesDenseOracleAndIsLinear) {
  const auto pk = half_ote::setup(toy(), 8, 4, test_stream("half/hash"));
  SeedStream s = test_stream("half/hash/x");
  const M64 a = pk.a.to_matrix<std::uint64_t>(8);
  for (int rep = 0; rep < 50; ++rep) {
    const V64 x1 = sample_uniform_zq<std::uint64_t>(s, 8, 8);
    const V64 x2 = sample_uniform_zq<std::uint64_t>(s, 8, 8);
    const auto d1 = half_ote::hash(pk, x1).first.d;
    EXPECT_EQ(d1, mat_vec(a, x1));
    EXPECT_EQ(half_ote::hash(pk, x1 + x2).first.d, d1 + half_ote::hash(pk, x2).first.d);
  }
  EXPECT_EQ(half_ote::hash(pk, V64(8, 8)).first.d, V64(8, 16));
  EXPECT_THROW(half_ote::hash(pk, V64(8, 7)), Error);
}

TEST(HalfOteTest, EncodeZeroNoiseMatchesDenseOracle) {
  const auto pk = half_ote::setup(toy(0), 8, 4, test_stream("half/enc"));
  SeedStream s = test_stream("half/enc/y");
  for (int rep = 0; rep < 10; ++rep) {
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 4, 8);
    auto [enc, sec] = half_ote::encode(pk, y, test_stream("half/enc").derive("t", rep));
    EXPECT_EQ(enc.c.rows(), 8u);
    EXPECT_EQ(enc.c.cols(), 32u);
    EXPECT_EQ(enc.c, dense_encoding(pk, sec.s, y));
  }
}

TEST(HalfOteTest, EncodeDegenerateCases) {
  const auto pk = half_ote::setup(toy(0), 8, 4, test_stream("half/deg"));
  const HalfEncoderSecret<std::uint64_t> zero{V64(8, 2)};
  auto [c0, s0] = half_ote::encode(pk, V64(8, 4), test_stream("e"), zero);
  EXPECT_EQ(c0.c, M64(8, 8, 32));
  const V64 y(8, std::vector<std::uint64_t>{3, 1, 4, 1});
  auto [c1, s1] = half_ote::encode(pk, y, test_stream("e"), zero);
  EXPECT_EQ(c1.c, kron(M64::identity(8, 8), y.as_row()));
  EXPECT_THROW(half_ote::encode(pk, V64(8, 3), test_stream("e")), Error);
}

TEST(HalfOteTest, ZeroNoiseIsExact) {
  const auto pk = half_ote::setup(toy(0), 8, 4, test_stream("half/exact"));
  SeedStream s = test_stream("half/exact/in");
  for (int rep = 0; rep < 50; ++rep) {
    const V64 x = sample_uniform_zq<std::uint64_t>(s, 8, 8);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 4, 8);
    auto [dig, st] = half_ote::hash(pk, x);
    auto [enc, sec] = half_ote::encode(pk, y, test_stream("half/exact").derive("t", rep));
    EXPECT_EQ(half_ote::hash_eval(pk, enc, st) + half_ote::enc_eval(pk, dig, sec),
              tensor_oracle(x, y, 8));
  }
}

template <Word W>
void check_alpha_correct(const RingParams& p, std::size_t m, std::size_t ell, int trials) {
  const auto pk = half_ote::setup(p, m, ell, test_stream("half/alpha"));
  SeedStream s = test_stream("half/alpha/in");
  const u128 bound = half_ote::error_bound(p, m, 1);
  for (int rep = 0; rep < trials; ++rep) {
    const Vector<W> x = sample_binary_vector<W>(s, m, p.w);
    const Vector<W> y = sample_uniform_zq<W>(s, ell, p.w);
    auto [dig, st] = half_ote::hash(pk, x);
    auto [enc, sec] = half_ote::encode(pk, y, test_stream("half/alpha").derive("t", rep));
    const Vector<W> err =
        half_ote::hash_eval(pk, enc, st) + half_ote::enc_eval(pk, dig, sec) -
        tensor_oracle(x, y, p.w);
    EXPECT_LE(static_cast<u128>(inf_norm(err)), bound);
  }
}

TEST(HalfOteTest, AlphaCorrectnessToy) { check_alpha_correct<std::uint64_t>(toy(1), 8, 4, 200); }

TEST(HalfOteTest, AlphaCorrectnessWide) {
  check_alpha_correct<u128>(make_params(96, 8, 1, 2, 2, 2), 16, 3, 20);
}

TEST(HalfOteTest, DigestNormBound) {
  const auto pk = half_ote::setup(make_params(32, 8, 1, 2, 2, 1), 40, 2, test_stream("dn"));
  SeedStream s = test_stream("dn/x");
  for (int rep = 0; rep < 20; ++rep) {
    const V64 x = sample_binary_vector<std::uint64_t>(s, 40, 32);
    EXPECT_LE(inf_norm(half_ote::hash(pk, x).first.d), 40u);
  }
}

TEST(HalfOteTest, EncEvalMatchesPublicMatrix) {
  const auto pk = half_ote::setup(toy(), 8, 4, test_stream("half/pm"));
  const M64 pm = half_ote::public_matrix<std::uint64_t>(pk);
  EXPECT_EQ(pm.rows(), 32u);
  EXPECT_EQ(pm.cols(), 256u);
  EXPECT_LE(inf_norm(pm), 1u);
  EXPECT_THROW(half_ote::apply_public_matrix(pk, V64(8, 16)), Error);
  SeedStream s = test_stream("half/pm/in");
  for (int rep = 0; rep < 20; ++rep) {
    const V64 d = sample_uniform_zq<std::uint64_t>(s, 16, 8);
    const V64 sec = sample_uniform_zq<std::uint64_t>(s, 2, 8);
    const V64 z = kron(d, half_ote::gadget_expand(sec));
    const V64 w = half_ote::enc_eval(pk, HalfDigest<std::uint64_t>{d},
                                     HalfEncoderSecret<std::uint64_t>{sec});
    EXPECT_EQ(mat_vec(pm, z), w);
    EXPECT_EQ(half_ote::apply_public_matrix(pk, z), w);
  }
}

TEST(HalfOteTest, PublicMatrixOfZeroKeyIsZero) {
  auto pk = half_ote::setup(toy(), 2, 2, test_stream("half/zero"));
  pk.b = BinaryMatrix(pk.b.rows(), pk.b.chunks(), pk.b.chunk_bits());
  const M64 pm = half_ote::public_matrix<std::uint64_t>(pk);
  EXPECT_EQ(pm, M64(8, pm.rows(), pm.cols()));
}

TEST(HalfOteTest, EncEvalIsBilinear) {
  const auto pk = half_ote::setup(toy(), 8, 4, test_stream("half/bil"));
  SeedStream s = test_stream("half/bil/in");
  using D = HalfDigest<std::uint64_t>;
  using S = HalfEncoderSecret<std::uint64_t>;
  for (int rep = 0; rep < 20; ++rep) {
    const V64 d1 = sample_uniform_zq<std::uint64_t>(s, 16, 8);
    const V64 d2 = sample_uniform_zq<std::uint64_t>(s, 16, 8);
    const V64 s1 = sample_uniform_zq<std::uint64_t>(s, 2, 8);
    const V64 s2 = sample_uniform_zq<std::uint64_t>(s, 2, 8);
    EXPECT_EQ(half_ote::enc_eval(pk, D{d1 + d2}, S{s1}),
              half_ote::enc_eval(pk, D{d1}, S{s1}) + half_ote::enc_eval(pk, D{d2}, S{s1}));
    EXPECT_EQ(half_ote::enc_eval(pk, D{d1}, S{s1 + s2}),
              half_ote::enc_eval(pk, D{d1}, S{s1}) + half_ote::enc_eval(pk, D{d1}, S{s2}));
  }
  EXPECT_EQ(half_ote::enc_eval(pk, D{V64(8, 16)}, S{V64(8, 2)}), V64(8, 32));
}

TEST(HalfOteTest, ProgrammedSecretIsUsed) {
  const auto pk = half_ote::setup(toy(1), 8, 4, test_stream("half/prog"));
  SeedStream s = test_stream("half/prog/in");
  const HalfEncoderSecret<std::uint64_t> fixed{sample_uniform_zq<std::uint64_t>(s, 2, 8)};
  const V64 x = sample_binary_vector<std::uint64_t>(s, 8, 8);
  const V64 y = sample_uniform_zq<std::uint64_t>(s, 4, 8);
  auto [dig, st] = half_ote::hash(pk, x);
  auto [enc, sec] = half_ote::encode(pk, y, test_stream("half/prog"), fixed);
  EXPECT_EQ(sec, fixed);
  const V64 err = half_ote::hash_eval(pk, enc, st) + half_ote::enc_eval(pk, dig, fixed) -
                  tensor_oracle(x, y, 8);
  EXPECT_LE(static_cast<u128>(inf_norm(err)), half_ote::error_bound(pk.params, 8, 1));
}

TEST(HalfOteTest, SimulatorShapeAndDeterminism) {
  const auto pk = half_ote::setup(make_params(16, 4, 2, 2, 2, 1), 8, 4, test_stream("sim"));
  const auto c1 = half_ote::simulate_encoding<std::uint64_t>(pk, test_stream("sim/1"));
  EXPECT_EQ(c1.c.rows(), 8u);
  EXPECT_EQ(c1.c.cols(), 32u);
  EXPECT_EQ(c1, half_ote::simulate_encoding<std::uint64_t>(pk, test_stream("sim/1")));
  double top = 0;
  for (auto v : c1.c.entries()) top += (v >> 15) & 1;
  EXPECT_NEAR(top / c1.c.size(), 0.5, 0.15);
}

}  // namespace
}  // namespace sote
