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

#include "sote/sampling.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <thread>

#include "test_util.hpp"

namespace sote {
namespace {

TEST(SamplingTest, ZeroBoundGivesZeros) {
  SeedStream s = test_stream("noise/zero");
  for (auto e : sample_noise(s, 1000, 0)) EXPECT_EQ(e, 0);
}

TEST(SamplingTest, NoiseStaysInBounds) {
  SeedStream s = test_stream("noise/bound");
  for (std::uint64_t b : {1u, 2u, 4u, 200u, 100000u}) {
    for (auto e : sample_noise(s, 20000, b)) {
      EXPECT_LE(e, static_cast<std::int64_t>(b));
      EXPECT_GE(e, -static_cast<std::int64_t>(b));
    }
  }
}

TEST(SamplingTest, NoiseMeanIsNearZero) {
  SeedStream s = test_stream("noise/mean");
  const auto e = sample_noise(s, 100000, 4);
  const double mean = std::accumulate(e.begin(), e.end(), 0.0) / e.size();
  EXPECT_LT(std::abs(mean), 0.1);
  std::array<int, 9> hist{};
  for (auto v : e) hist[v + 4]++;
  for (int h : hist) EXPECT_NEAR(h / 100000.0, 1.0 / 9, 0.01);
}

TEST(SamplingTest, StreamsAreDeterministic) {
  SeedStream a = test_stream("det");
  SeedStream b = test_stream("det");
  EXPECT_EQ(sample_uniform_zq<std::uint64_t>(a, 100, 40),
            sample_uniform_zq<std::uint64_t>(b, 100, 40));
  EXPECT_EQ(sample_uniform_bits(a, 100), sample_uniform_bits(b, 100));
  EXPECT_EQ(sample_noise(a, 100, 3), sample_noise(b, 100, 3));
}

TEST(SamplingTest, DistinctTagsDiffer) {
  SeedStream a = test_stream("tag-a");
  SeedStream b = test_stream("tag-b");
  EXPECT_NE(sample_uniform_zq<std::uint64_t>(a, 16, 64),
            sample_uniform_zq<std::uint64_t>(b, 16, 64));
  SeedStream c = a.derive("x", 0);
  SeedStream d = a.derive("x", 1);
  EXPECT_NE(c.next_u64(), d.next_u64());
  EXPECT_EQ(a.derive("x", 3).tag(), "tag-a/x#3");
}

TEST(SamplingTest, DeterministicAcrossThreads) {
  std::vector<std::uint64_t> seq(8), par(8);
  for (int i = 0; i < 8; ++i) seq[i] = test_stream("thr").derive("trial", i).next_u64();
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) {
    ts.emplace_back([&par, i] { par[i] = test_stream("thr").derive("trial", i).next_u64(); });
  }
  for (auto& t : ts) t.join();
  EXPECT_EQ(seq, par);
}

TEST(SamplingTest, BitFrequency) {
  SeedStream s = test_stream("bits");
  const auto bits = sample_uniform_bits(s, 100000);
  const double f = std::accumulate(bits.begin(), bits.end(), 0.0) / bits.size();
  EXPECT_GE(f, 0.49);
  EXPECT_LE(f, 0.51);
  for (auto b : bits) EXPECT_LE(b, 1);
}

TEST(SamplingTest, ResiduesInRange) {
  SeedStream s = test_stream("residues");
  for (unsigned w : {8u, 13u, 40u, 63u}) {
    const auto v = sample_uniform_zq<std::uint64_t>(s, 5000, w);
    for (auto x : v.entries()) EXPECT_LT(x, std::uint64_t{1} << w);
  }
  const auto v = sample_uniform_zq<u128>(s, 5000, 96);
  for (auto x : v.entries()) EXPECT_LT(x, u128{1} << 96);
  const auto top = sample_uniform_zq<std::uint64_t>(s, 20000, 8);
  double ones = 0;
  for (auto x : top.entries()) ones += (x >> 7) & 1;
  EXPECT_NEAR(ones / 20000, 0.5, 0.02);
}

TEST(SamplingTest, PrgExpandIsSeedDeterministic) {
  const Seed a = test_seed();
  Seed b = a;
  b.bytes[0] ^= 1;
  EXPECT_EQ(prg_expand_zq<std::uint64_t>(a, 64, 40), prg_expand_zq<std::uint64_t>(a, 64, 40));
  EXPECT_NE(prg_expand_zq<std::uint64_t>(a, 64, 40), prg_expand_zq<std::uint64_t>(b, 64, 40));
  const auto v = prg_expand_zq<std::uint64_t>(a, 1000, 12);
  for (auto x : v.entries()) EXPECT_LT(x, 4096u);
}

TEST(SamplingTest, SeedHexRoundTrip) {
  const Seed s = test_seed();
  EXPECT_EQ(Seed::from_hex(s.hex()), s);
  EXPECT_THROW(Seed::from_hex("zz"), Error);
}

TEST(SamplingTest, UniformBelowIsUnbiased) {
  SeedStream s = test_stream("below");
  std::array<int, 7> hist{};
  for (int i = 0; i < 70000; ++i) hist[uniform_below(s, 7)]++;
  for (int h : hist) EXPECT_NEAR(h, 10000, 400);
  std::array<int, 3> big{};
  const std::uint64_t range = 3 * (std::uint64_t{1} << 40);
  for (int i = 0; i < 30000; ++i) big[uniform_below(s, range) >> 40]++;
  for (int h : big) EXPECT_NEAR(h, 10000, 400);
}

}  // namespace
}  // namespace sote
