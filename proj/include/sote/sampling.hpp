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

// Seeded deterministic randomness. A stream is keyed by
// BLAKE2b-256(key = seed, message = domain tag) and expanded with ChaCha20.

#ifndef SOTE_SAMPLING_HPP_
#define SOTE_SAMPLING_HPP_

#include <sodium.h>

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sote/error.hpp"
#include "sote/ring.hpp"

namespace sote {

inline void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  require(ok, ErrorCode::kParameter, "libsodium failed to initialise");
}

struct Seed {
  std::array<std::uint8_t, 32> bytes{};

  static Seed from_hex(std::string_view hex) {
    require(hex.size() == 64, ErrorCode::kParameter, "seed must be 64 hex digits");
    Seed s;
    for (std::size_t i = 0; i < 32; ++i) {
      auto nib = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw Error(ErrorCode::kParameter, "seed is not hexadecimal");
      };
      s.bytes[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) * 16 + nib(hex[2 * i + 1]));
    }
    return s;
  }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (auto b : bytes) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 15]);
    }
    return out;
  }

  bool operator==(const Seed&) const = default;
};

class SeedStream {
 public:
  SeedStream(const Seed& seed, std::string tag) : seed_(seed), tag_(std::move(tag)) {
    ensure_sodium();
    crypto_generichash(key_.data(), key_.size(),
                       reinterpret_cast<const unsigned char*>(tag_.data()), tag_.size(),
                       seed_.bytes.data(), seed_.bytes.size());
  }

  SeedStream derive(std::string_view sub) const {
    return SeedStream(seed_, tag_ + "/" + std::string(sub));
  }
  SeedStream derive(std::string_view sub, std::uint64_t index) const {
    return SeedStream(seed_, tag_ + "/" + std::string(sub) + "#" + std::to_string(index));
  }

  const Seed& seed() const { return seed_; }
  const std::string& tag() const { return tag_; }

  std::uint8_t next_byte() {
    if (pos_ == kBuffer) refill();
    return buf_[pos_++];
  }

  void read(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
      if (pos_ == kBuffer && out.size() - done >= kBuffer) {
        // Whole buffers go straight to the caller; the byte sequence is the same.
        const std::size_t len = (out.size() - done) / kBuffer * kBuffer;
        keystream(out.data() + done, len);
        done += len;
        continue;
      }
      if (pos_ == kBuffer) refill();
      const std::size_t take = std::min(out.size() - done, kBuffer - pos_);
      std::memcpy(out.data() + done, buf_.data() + pos_, take);
      pos_ += take;
      done += take;
    }
  }

  std::uint64_t next_u64() {
    std::uint8_t b[8];
    read(b);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  Seed next_seed() {
    Seed s;
    read(s.bytes);
    return s;
  }

 private:
  static constexpr std::size_t kBuffer = 4096;

  // Keystream blocks starting at block_; len is a multiple of 64.
  void keystream(std::uint8_t* dst, std::size_t len) {
    static const std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
    std::memset(dst, 0, len);
    crypto_stream_chacha20_xor_ic(dst, dst, len, nonce.data(), block_, key_.data());
    block_ += len / 64;
  }

  void refill() {
    keystream(buf_.data(), kBuffer);
    pos_ = 0;
  }

  Seed seed_;
  std::string tag_;
  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, kBuffer> buf_{};
  std::size_t pos_ = kBuffer;
  std::uint64_t block_ = 0;
};

// Uniform integer in [0, range) by rejection.
inline std::uint64_t uniform_below(SeedStream& stream, std::uint64_t range) {
  assert(range > 0);
  if (range <= 256) {
    const unsigned limit = 256 - 256 % static_cast<unsigned>(range);
    for (;;) {
      const unsigned b = stream.next_byte();
      if (b < limit) return b % range;
    }
  }
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
  for (;;) {
    const std::uint64_t v = stream.next_u64();
    if (v <= limit) return v % range;
  }
}

// χ: uniform on {-B, ..., B}.
struct NoiseDist {
  std::uint64_t bound = 0;

  std::int64_t sample(SeedStream& stream) const {
    if (bound == 0) return 0;
    const auto e = static_cast<std::int64_t>(uniform_below(stream, 2 * bound + 1)) -
                   static_cast<std::int64_t>(bound);
    assert(e >= -static_cast<std::int64_t>(bound) && e <= static_cast<std::int64_t>(bound));
    return e;
  }
};

inline std::vector<std::int64_t> sample_noise(SeedStream& stream, std::size_t count,
                                              std::uint64_t bound) {
  require(bound < (std::uint64_t{1} << 62), ErrorCode::kParameter, "noise bound too large");
  NoiseDist chi{bound};
  std::vector<std::int64_t> out(count);
  for (auto& e : out) e = chi.sample(stream);
  return out;
}

// Adds fresh χ samples to every entry (mod 2^w).
template <Word W>
void add_noise(SeedStream& stream, std::span<W> dst, std::uint64_t bound, unsigned w) {
  if (bound == 0) return;
  NoiseDist chi{bound};
  const W m = low_mask<W>(w);
  for (W& v : dst) v = (v + static_cast<W>(chi.sample(stream))) & m;
}

template <Word W>
Vector<W> sample_noise_vector(SeedStream& stream, std::size_t count, std::uint64_t bound,
                              unsigned w) {
  Vector<W> v(w, count);
  add_noise<W>(stream, std::span<W>(v.raw(), count), bound, w);
  return v;
}

template <Word W>
Matrix<W> sample_noise_matrix(SeedStream& stream, std::size_t rows, std::size_t cols,
                              std::uint64_t bound, unsigned w) {
  Matrix<W> m(w, rows, cols);
  add_noise<W>(stream, std::span<W>(m.raw(), m.size()), bound, w);
  return m;
}

// Uniform residues: ceil(w/8) little-endian stream bytes, masked to w bits.
template <Word W>
void fill_uniform(SeedStream& stream, std::span<W> dst, unsigned w) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  constexpr std::size_t kChunk = 1 << 14;
  const unsigned nbytes = (w + 7) / 8;
  const W m = low_mask<W>(w);
  std::vector<std::uint8_t> buf(std::min(kChunk, dst.size()) * nbytes);
  for (std::size_t off = 0; off < dst.size(); off += kChunk) {
    const std::size_t cnt = std::min(kChunk, dst.size() - off);
    stream.read(std::span<std::uint8_t>(buf.data(), cnt * nbytes));
    for (std::size_t i = 0; i < cnt; ++i) {
      W x = 0;
      std::memcpy(&x, buf.data() + i * nbytes, nbytes);
      dst[off + i] = x & m;
    }
  }
}

template <Word W>
Vector<W> sample_uniform_zq(SeedStream& stream, std::size_t count, unsigned w) {
  Vector<W> v(w, count);
  fill_uniform<W>(stream, std::span<W>(v.raw(), count), w);
  return v;
}

template <Word W>
Matrix<W> sample_uniform_matrix(SeedStream& stream, std::size_t rows, std::size_t cols,
                                unsigned w) {
  Matrix<W> m(w, rows, cols);
  fill_uniform<W>(stream, std::span<W>(m.raw(), m.size()), w);
  return m;
}

// Bits are taken least-significant first from successive stream bytes.
inline std::vector<std::uint8_t> sample_uniform_bits(SeedStream& stream, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 8 == 0) byte = stream.next_byte();
    out[i] = (byte >> (i % 8)) & 1;
  }
  return out;
}

template <Word W>
Vector<W> sample_binary_vector(SeedStream& stream, std::size_t count, unsigned w) {
  const auto b = sample_uniform_bits(stream, count);
  Vector<W> v(w, count);
  for (std::size_t i = 0; i < count; ++i) v.raw()[i] = b[i];
  return v;
}

// Pseudorandom expansion used for rerandomize-then-round masks.
template <Word W>
Vector<W> prg_expand_zq(SeedStream& stream, std::size_t count, unsigned w) {
  return sample_uniform_zq<W>(stream, count, w);
}

template <Word W>
Vector<W> prg_expand_zq(const Seed& seed, std::size_t count, unsigned w) {
  SeedStream stream(seed, "sote/prg");
  return prg_expand_zq<W>(stream, count, w);
}

}  // namespace sote

#endif  // SOTE_SAMPLING_HPP_
