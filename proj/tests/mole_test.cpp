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

#include "sote/mole.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sote {
namespace {

using V64 = Vector<std::uint64_t>;
using M64 = Matrix<std::uint64_t>;

RingParams toy(std::uint64_t B) { return make_params(8, 2, 2, 2, 2, B); }
RingParams mid(std::uint64_t B) { return make_params(64, 8, 1, 2, 2, B); }

TEST(MoleTest, ReductionIdentity) {
  SeedStream s = test_stream("mole/red");
  const auto pk = mole::setup(toy(1), test_stream("mole/red/pk"));
  for (int rep = 0; rep < 50; ++rep) {
    const M64 m = sample_uniform_matrix<std::uint64_t>(s, 4, 2, 8);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 2, 8);
    const V64 x = mole::hash_payload(pk, m);
    const V64 lhs_x = x.slice(0, 4 * 2 * 8);
    const M64 lift =
        kron(M64::identity(8, 4), mole::encode_payload(y).as_row());
    EXPECT_EQ(mat_vec(lift, lhs_x), mat_vec(m, y));
    EXPECT_EQ(mole::recombine(pk, 4, 2, tensor_oracle(x, mole::encode_payload(y), 8)),
              mat_vec(m, y));
  }
}

TEST(MoleTest, PayloadShapes) {
  const auto pk = mole::setup(toy(1), test_stream("mole/shape"));
  SeedStream s = test_stream("mole/shape/in");
  const M64 m = sample_uniform_matrix<std::uint64_t>(s, 4, 2, 8);
  const V64 x = mole::hash_payload(pk, m);
  EXPECT_EQ(x.size(), mole::capacity(pk));
  for (auto b : x.entries()) EXPECT_LE(b, 1u);
  for (std::size_t i = 4 * 2 * 8; i < x.size(); ++i) EXPECT_EQ(x[i], 0u);
  const V64 y(8, std::vector<std::uint64_t>{3, 5});
  const V64 py = mole::encode_payload(y);
  ASSERT_EQ(py.size(), 16u);
  for (unsigned b = 0; b < 8; ++b) {
    EXPECT_EQ(py[b], (3u << b) & 0xff);
    EXPECT_EQ(py[8 + b], (5u << b) & 0xff);
  }
  EXPECT_THROW(mole::hash_payload(pk, M64(8, 5, 2)), Error);
  auto [enc, sec] = mole::encode(pk, y, test_stream("mole/shape/e"));
  EXPECT_EQ(enc.enc.enc.blocks.size(), full_ote::block_count(pk, 2 * 8));
}

TEST(MoleTest, ZeroMatrixGivesZeroDigest) {
  const auto pk = mole::setup(toy(1), test_stream("mole/zero"));
  auto [dig, st] = mole::hash(pk, M64(8, 4, 2));
  EXPECT_EQ(inf_norm(dig.digest.d), 0u);
}

TEST(MoleTest, ZeroNoiseIsExact) {
  const auto pk = mole::setup(toy(0), test_stream("mole/exact"));
  SeedStream s = test_stream("mole/exact/in");
  for (int rep = 0; rep < 5; ++rep) {
    const M64 m = sample_uniform_matrix<std::uint64_t>(s, 4, 2, 8);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 2, 8);
    auto [dig, st] = mole::hash(pk, m);
    auto [enc, sec] = mole::encode(pk, y, test_stream("mole/exact").derive("t", rep));
    EXPECT_EQ(mole::hash_eval(pk, enc, st) + mole::enc_eval(pk, dig, sec), mat_vec(m, y));
  }
}

TEST(MoleTest, IdentityMatrix) {
  const auto pk = mole::setup(toy(0), test_stream("mole/id"));
  const V64 y(8, std::vector<std::uint64_t>{7, 11});
  auto [dig, st] = mole::hash(pk, M64::identity(8, 2));
  auto [enc, sec] = mole::encode(pk, y, test_stream("mole/id/e"));
  EXPECT_EQ(mole::hash_eval(pk, enc, st) + mole::enc_eval(pk, dig, sec), y);
}

TEST(MoleTest, ErrorBound) {
  const RingParams p = mid(2);
  const auto pk = mole::setup(p, test_stream("mole/bound"));
  SeedStream s = test_stream("mole/bound/in");
  const u128 bound = mole::error_bound(p, 2);
  ASSERT_LT(bound, u128{1} << 63);
  for (int rep = 0; rep < 3; ++rep) {
    const M64 m = sample_uniform_matrix<std::uint64_t>(s, 2, 2, 64);
    const V64 y = sample_binary_vector<std::uint64_t>(s, 2, 64);
    auto [dig, st] = mole::hash(pk, m);
    auto [enc, sec] = mole::encode(pk, y, test_stream("mole/bound").derive("t", rep));
    const V64 err = mole::hash_eval(pk, enc, st) + mole::enc_eval(pk, dig, sec) - mat_vec(m, y);
    EXPECT_LE(static_cast<u128>(inf_norm(err)), bound);
  }
}

TEST(MoleTest, ExactMode) {
  const RingParams p = mid(2);
  const auto pk = mole::setup(p, test_stream("mole/zp"));
  SeedStream s = test_stream("mole/zp/in");
  for (int rep = 0; rep < 3; ++rep) {
    const M64 m = sample_uniform_matrix<std::uint64_t>(s, 2, 2, 64);
    const V64 y = sample_uniform_zq<std::uint64_t>(s, 2, p.p_log);
    auto [dig, st] = mole::hash(pk, m);
    auto [enc, sec] = mole::exact_encode(pk, y, test_stream("mole/zp").derive("t", rep));
    ASSERT_TRUE(enc.enc.mask_seed.has_value());
    const V64 sum = mole::exact_hasher_share(pk, enc, st) + mole::exact_encoder_share(pk, dig, sec);
    V64 truth(p.p_log, 2);
    for (std::size_t i = 0; i < 2; ++i) truth.set(i, m(i, 0) * y[0] + m(i, 1) * y[1]);
    EXPECT_EQ(sum, truth);
  }
}

TEST(MoleTest, DigestSizeIndependentOfRows) {
  const auto pk = mole::setup(toy(1), test_stream("mole/size"));
  EXPECT_EQ(mole::hash(pk, M64(8, 1, 2)).first.digest.d.size(),
            mole::hash(pk, M64(8, 4, 2)).first.digest.d.size());
}

TEST(MoleTest, SimulatorShape) {
  const auto pk = mole::setup(toy(1), test_stream("mole/sim"));
  const auto enc = mole::simulate_encoding<std::uint64_t>(pk, 2, test_stream("mole/sim/s"));
  auto [real, sec] = mole::encode(pk, V64(8, 2), test_stream("mole/sim/e"));
  ASSERT_EQ(enc.enc.enc.blocks.size(), real.enc.enc.blocks.size());
  EXPECT_EQ(enc.enc.enc.ell, real.enc.enc.ell);
}

}  // namespace
}  // namespace sote
