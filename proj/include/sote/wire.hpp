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

// Binary wire format. A message is
//   "SOTE" | version u16 | type tag u16 | RingParams block | payload
// with every integer little-endian. The RingParams block is
//   w u8 | p_log u8 | k u32 | t u32 | r u32 | B u64.
// Residue matrices are rows u64 | cols u64 | entries, 8 bytes per entry when
// w <= 64 and 16 bytes otherwise, all at the header's w. Vectors are 1-column
// matrices, lists carry a u32 count, and composites concatenate their fields.
// Public keys start with their own RingParams block. Binary public matrices
// are rows u64 | chunks u64 | chunk_bits u64 | packed chunk bytes. Scalars are
// u64 (u128 noise tags take 16 bytes), seeds are 32 raw bytes and optional
// seeds are a u8 presence flag followed by the seed when present.

#ifndef SOTE_WIRE_HPP_
#define SOTE_WIRE_HPP_

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sote/binary.hpp"
#include "sote/compression.hpp"
#include "sote/error.hpp"
#include "sote/lattice_encoding.hpp"
#include "sote/mole.hpp"
#include "sote/ote_full.hpp"
#include "sote/ote_half.hpp"
#include "sote/params.hpp"
#include "sote/ring.hpp"
#include "sote/rtdh.hpp"

namespace sote::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic{'S', 'O', 'T', 'E'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 4 + 2 + 2 + 22;

enum class TypeTag : std::uint16_t {
  kMatrix = 1,
  kVector = 2,
  kHalfPublicKey = 3,
  kHalfDigest = 4,
  kHalfHasherState = 5,
  kHalfEncoding = 6,
  kHalfEncoderSecret = 7,
  kFullPublicKey = 8,
  kFullDigest = 9,
  kFullHasherState = 10,
  kFullEncoding = 11,
  kFullEncoderSecret = 12,
  kBlockEncoding = 13,
  kBlockSecret = 14,
  kExactEncoding = 15,
  kExactSecret = 16,
  kMoleDigest = 17,
  kMoleHasherState = 18,
  kMoleEncoding = 19,
  kMoleEncoderSecret = 20,
  kLatticeEncoding = 21,
  kCompressionKey = 22,
  kCompressedEncoding = 23,
  kRtdhHashKey = 24,
  kRtdhEncodingKey = 25,
  kRtdhTrapdoor = 26,
};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { put_le(v, 2); }
  void u32(std::uint32_t v) { put_le(v, 4); }
  void u64(std::uint64_t v) { put_le(v, 8); }
  void u128v(u128 v) {
    put_le(static_cast<std::uint64_t>(v), 8);
    put_le(static_cast<std::uint64_t>(v >> 64), 8);
  }
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

  std::vector<std::uint8_t> take() { return std::move(buf_); }

  unsigned w = 8;  // residue width of the message being written

 private:
  void put_le(std::uint64_t v, unsigned n) {
    for (unsigned i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
  std::uint64_t u64() { return get_le(8); }
  u128 u128v() {
    const std::uint64_t lo = get_le(8);
    return static_cast<u128>(lo) | (static_cast<u128>(get_le(8)) << 64);
  }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  // Fails with a truncation error unless n bytes remain.
  void need(std::size_t n) const {
    require(n <= remaining(), ErrorCode::kTruncated,
            "stream ends " + std::to_string(n - remaining()) + " bytes early");
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  void finish() const {
    require(remaining() == 0, ErrorCode::kWireFormat,
            std::to_string(remaining()) + " trailing bytes after message");
  }

  unsigned w = 8;  // residue width of the message being read

 private:
  std::uint64_t get_le(unsigned n) {
    need(n);
    std::uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

inline unsigned entry_bytes(unsigned w) { return w <= 64 ? 8 : 16; }

// n·size with an explicit truncation error instead of overflow.
inline void need_items(const Reader& r, std::uint64_t n, std::uint64_t size) {
  require(size == 0 || n <= r.remaining() / size, ErrorCode::kTruncated,
          "declared length exceeds the remaining stream");
}

// ---- scalars, seeds and parameters ----------------------------------------

inline void put(Writer& wr, const Seed& s) { wr.bytes(s.bytes); }
inline void get(Reader& rd, Seed& s) {
  const auto b = rd.bytes(32);
  std::memcpy(s.bytes.data(), b.data(), 32);
}

inline void put(Writer& wr, const std::optional<Seed>& s) {
  wr.u8(s ? 1 : 0);
  if (s) put(wr, *s);
}
inline void get(Reader& rd, std::optional<Seed>& s) {
  const std::uint8_t flag = rd.u8();
  require(flag <= 1, ErrorCode::kWireFormat, "optional-seed flag must be 0 or 1");
  s.reset();
  if (flag) {
    Seed v;
    get(rd, v);
    s = v;
  }
}

inline void put_size(Writer& wr, std::size_t v) { wr.u64(v); }
inline std::size_t get_size(Reader& rd) {
  const std::uint64_t v = rd.u64();
  require(v <= (std::uint64_t{1} << 48), ErrorCode::kWireFormat, "size field out of range");
  return static_cast<std::size_t>(v);
}

inline void put(Writer& wr, const RingParams& p) {
  wr.u8(static_cast<std::uint8_t>(p.w));
  wr.u8(static_cast<std::uint8_t>(p.p_log));
  wr.u32(p.k);
  wr.u32(p.t);
  wr.u32(p.r);
  wr.u64(p.B);
}
inline void get(Reader& rd, RingParams& p) {
  p = RingParams{};
  p.w = rd.u8();
  p.p_log = rd.u8();
  p.k = rd.u32();
  p.t = rd.u32();
  p.r = rd.u32();
  p.B = rd.u64();
  try {
    check_ring_params(p);
  } catch (const Error& e) {
    throw Error(ErrorCode::kWireFormat, std::string("bad parameter block: ") + e.what());
  }
}

// ---- residue containers -----------------------------------------------------

template <Word W>
void put_entries(Writer& wr, std::span<const W> v, unsigned w) {
  require(v.empty() || w == wr.w, ErrorCode::kParameter,
          "entry width " + std::to_string(w) + " differs from the header width");
  for (W x : v) {
    if (entry_bytes(wr.w) == 8) {
      wr.u64(static_cast<std::uint64_t>(x));
    } else {
      wr.u128v(static_cast<u128>(x));
    }
  }
}

template <Word W>
std::vector<W> get_entries(Reader& rd, std::uint64_t count) {
  const unsigned eb = entry_bytes(rd.w);
  require(eb <= sizeof(W), ErrorCode::kWireFormat,
          "w=" + std::to_string(rd.w) + " needs a wider word type");
  need_items(rd, count, eb);
  const u128 q_mask = low_mask<u128>(rd.w);
  std::vector<W> out(static_cast<std::size_t>(count));
  for (auto& x : out) {
    const u128 v = eb == 8 ? static_cast<u128>(rd.u64()) : rd.u128v();
    require((v & ~q_mask) == 0, ErrorCode::kRange, "entry is not below q");
    x = static_cast<W>(v);
  }
  return out;
}

template <Word W>
void put(Writer& wr, const Matrix<W>& m) {
  wr.u64(m.rows());
  wr.u64(m.cols());
  put_entries<W>(wr, m.entries(), m.w());
}
template <Word W>
void get(Reader& rd, Matrix<W>& m) {
  const std::uint64_t rows = rd.u64(), cols = rd.u64();
  require(cols == 0 || rows <= (std::uint64_t{1} << 48) / cols, ErrorCode::kWireFormat,
          "matrix shape overflows");
  auto e = get_entries<W>(rd, rows * cols);
  m = Matrix<W>(rd.w, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                std::move(e));
}

template <Word W>
void put(Writer& wr, const Vector<W>& v) {
  wr.u64(v.size());
  wr.u64(1);
  put_entries<W>(wr, v.entries(), v.w());
}
template <Word W>
void get(Reader& rd, Vector<W>& v) {
  const std::uint64_t rows = rd.u64(), cols = rd.u64();
  require(cols == 1, ErrorCode::kWireFormat, "vector must be a 1-column matrix");
  v = Vector<W>(rd.w, get_entries<W>(rd, rows));
}

template <class T>
void put(Writer& wr, const std::vector<T>& list) {
  require(list.size() <= 0xffffffffu, ErrorCode::kWireFormat, "list too long");
  wr.u32(static_cast<std::uint32_t>(list.size()));
  for (const auto& x : list) put(wr, x);
}
template <class T>
void get(Reader& rd, std::vector<T>& list) {
  const std::uint32_t n = rd.u32();
  need_items(rd, n, 1);
  list.clear();
  list.resize(n);
  for (auto& x : list) get(rd, x);
}

inline void put(Writer& wr, const BinaryMatrix& m) {
  wr.u64(m.rows());
  wr.u64(m.chunks());
  wr.u64(m.chunk_bits());
  wr.bytes(m.bytes());
}
inline void get(Reader& rd, BinaryMatrix& m) {
  const std::size_t rows = get_size(rd), chunks = get_size(rd), bits = get_size(rd);
  require(bits >= 1, ErrorCode::kWireFormat, "binary matrix chunk width is zero");
  const std::size_t chunk_bytes = (bits + 7) / 8;
  require(chunks == 0 || rows <= (std::size_t{1} << 48) / chunks, ErrorCode::kWireFormat,
          "binary matrix shape overflows");
  need_items(rd, rows * chunks, chunk_bytes);
  const auto b = rd.bytes(rows * chunks * chunk_bytes);
  m = BinaryMatrix::from_bytes(rows, chunks, bits, std::vector<std::uint8_t>(b.begin(), b.end()));
}

// ---- OTE family -----------------------------------------------------------

inline void put(Writer& wr, const HalfOtePublicKey& pk) {
  put(wr, pk.params);
  put_size(wr, pk.m);
  put_size(wr, pk.ell);
  put(wr, pk.a);
  put(wr, pk.b);
}
inline void get(Reader& rd, HalfOtePublicKey& pk) {
  get(rd, pk.params);
  pk.m = get_size(rd);
  pk.ell = get_size(rd);
  get(rd, pk.a);
  get(rd, pk.b);
  const std::size_t n = pk.params.n();
  require(pk.a.rows() == n && pk.a.chunks() == 1 && pk.a.cols() == pk.m &&
              pk.b.rows() == n && pk.b.cols() == pk.m * pk.ell * n,
          ErrorCode::kWireFormat, "public key matrices do not match (n, m, ell)");
}

template <Word W>
void put(Writer& wr, const HalfDigest<W>& v) { put(wr, v.d); }
template <Word W>
void get(Reader& rd, HalfDigest<W>& v) { get(rd, v.d); }
template <Word W>
void put(Writer& wr, const HalfHasherState<W>& v) { put(wr, v.x); }
template <Word W>
void get(Reader& rd, HalfHasherState<W>& v) { get(rd, v.x); }
template <Word W>
void put(Writer& wr, const HalfEncoding<W>& v) { put(wr, v.c); }
template <Word W>
void get(Reader& rd, HalfEncoding<W>& v) { get(rd, v.c); }
template <Word W>
void put(Writer& wr, const HalfEncoderSecret<W>& v) { put(wr, v.s); }
template <Word W>
void get(Reader& rd, HalfEncoderSecret<W>& v) { get(rd, v.s); }

inline void put(Writer& wr, const FullOtePublicKey& pk) {
  put(wr, pk.params);
  put(wr, pk.inner);
}
inline void get(Reader& rd, FullOtePublicKey& pk) {
  get(rd, pk.params);
  get(rd, pk.inner);
  require(pk.inner.params == pk.params && pk.inner.m == pk.params.t * pk.params.n() &&
              pk.inner.ell == pk.params.n(),
          ErrorCode::kWireFormat, "inner key does not match the bootstrapped shape");
}

template <Word W>
void put(Writer& wr, const FullDigest<W>& v) { put(wr, v.d); }
template <Word W>
void get(Reader& rd, FullDigest<W>& v) { get(rd, v.d); }
template <Word W>
void put(Writer& wr, const FullHasherState<W>& v) { put(wr, v.levels); }
template <Word W>
void get(Reader& rd, FullHasherState<W>& v) { get(rd, v.levels); }
template <Word W>
void put(Writer& wr, const FullEncoding<W>& v) { put(wr, v.levels); }
template <Word W>
void get(Reader& rd, FullEncoding<W>& v) { get(rd, v.levels); }
template <Word W>
void put(Writer& wr, const FullEncoderSecret<W>& v) { put(wr, v.phi); }
template <Word W>
void get(Reader& rd, FullEncoderSecret<W>& v) { get(rd, v.phi); }

template <Word W>
void put(Writer& wr, const BlockEncoding<W>& v) {
  put_size(wr, v.ell);
  put(wr, v.blocks);
}
template <Word W>
void get(Reader& rd, BlockEncoding<W>& v) {
  v.ell = get_size(rd);
  get(rd, v.blocks);
}
template <Word W>
void put(Writer& wr, const BlockSecret<W>& v) {
  put_size(wr, v.ell);
  put(wr, v.blocks);
}
template <Word W>
void get(Reader& rd, BlockSecret<W>& v) {
  v.ell = get_size(rd);
  get(rd, v.blocks);
}
template <Word W>
void put(Writer& wr, const ExactEncoding<W>& v) {
  put(wr, v.enc);
  put(wr, v.mask_seed);
}
template <Word W>
void get(Reader& rd, ExactEncoding<W>& v) {
  get(rd, v.enc);
  get(rd, v.mask_seed);
}
template <Word W>
void put(Writer& wr, const ExactSecret<W>& v) {
  put(wr, v.sec);
  put(wr, v.mask_seed);
}
template <Word W>
void get(Reader& rd, ExactSecret<W>& v) {
  get(rd, v.sec);
  get(rd, v.mask_seed);
}

// ---- MOLE -------------------------------------------------------------------

template <Word W>
void put(Writer& wr, const MoleDigest<W>& v) {
  put_size(wr, v.rows);
  put_size(wr, v.cols);
  put(wr, v.digest);
}
template <Word W>
void get(Reader& rd, MoleDigest<W>& v) {
  v.rows = get_size(rd);
  v.cols = get_size(rd);
  get(rd, v.digest);
}
template <Word W>
void put(Writer& wr, const MoleHasherState<W>& v) {
  put_size(wr, v.rows);
  put_size(wr, v.cols);
  put(wr, v.state);
}
template <Word W>
void get(Reader& rd, MoleHasherState<W>& v) {
  v.rows = get_size(rd);
  v.cols = get_size(rd);
  get(rd, v.state);
}
template <Word W>
void put(Writer& wr, const MoleEncoding<W>& v) {
  put_size(wr, v.cols);
  put(wr, v.enc);
}
template <Word W>
void get(Reader& rd, MoleEncoding<W>& v) {
  v.cols = get_size(rd);
  get(rd, v.enc);
}
template <Word W>
void put(Writer& wr, const MoleEncoderSecret<W>& v) {
  put_size(wr, v.cols);
  put(wr, v.sec);
}
template <Word W>
void get(Reader& rd, MoleEncoderSecret<W>& v) {
  v.cols = get_size(rd);
  get(rd, v.sec);
}

// ---- lattice encodings, compression, reverse TDH ---------------------------

template <Word W>
void put(Writer& wr, const LatticeEncoding<W>& v) {
  put(wr, v.c);
  put(wr, v.a);
  put_size(wr, v.enc_level);
  put_size(wr, v.auth_level);
  wr.u128v(v.noise);
}
template <Word W>
void get(Reader& rd, LatticeEncoding<W>& v) {
  get(rd, v.c);
  get(rd, v.a);
  v.enc_level = get_size(rd);
  v.auth_level = get_size(rd);
  v.noise = rd.u128v();
}

inline void put(Writer& wr, const CompressionKey& v) { put(wr, v.pk); }
inline void get(Reader& rd, CompressionKey& v) { get(rd, v.pk); }

template <Word W>
void put(Writer& wr, const CompressedEncoding<W>& v) {
  put(wr, v.h);
  put(wr, v.e);
}
template <Word W>
void get(Reader& rd, CompressedEncoding<W>& v) {
  get(rd, v.h);
  get(rd, v.e);
}

// The ring part of RtdhParams is the header block; the rest follows here.
inline void put_rtdh_extra(Writer& wr, const RtdhParams& p) {
  wr.u32(p.mole_t);
  wr.u32(p.mole_r);
  put_size(wr, p.ell_f);
  put_size(wr, p.t_a);
  put_size(wr, p.depth);
  wr.u64(static_cast<std::uint64_t>(p.bound_t));
}
inline void get_rtdh_extra(Reader& rd, RtdhParams& p) {
  p.mole_t = rd.u32();
  p.mole_r = rd.u32();
  p.ell_f = get_size(rd);
  p.t_a = get_size(rd);
  p.depth = get_size(rd);
  p.bound_t = static_cast<std::int64_t>(rd.u64());
}

template <Word W>
void put(Writer& wr, const RtdhHashKey<W>& v) {
  put(wr, v.params.ring);
  put_rtdh_extra(wr, v.params);
  put(wr, v.ck);
  put(wr, v.mpk);
  put(wr, v.a);
  put(wr, v.b);
}
template <Word W>
void get(Reader& rd, RtdhHashKey<W>& v) {
  get(rd, v.params.ring);
  get_rtdh_extra(rd, v.params);
  get(rd, v.ck);
  get(rd, v.mpk);
  get(rd, v.a);
  get(rd, v.b);
  try {
    rtdh::check_params<W>(v.params);
    require(v.ck.pk.params == v.params.ring && v.mpk.params == v.params.mole_params(),
            ErrorCode::kParameter, "embedded keys disagree with the parameters");
    require(v.b.rows() == v.params.ring.k && v.b.cols() == v.params.t_a * v.params.kw(),
            ErrorCode::kDimension, "B has the wrong shape");
    v.a_expanded = compression::expanded_matrix(v.ck, v.a);
  } catch (const Error& e) {
    throw Error(ErrorCode::kWireFormat, std::string("inconsistent hash key: ") + e.what());
  }
}

template <Word W>
void put(Writer& wr, const RtdhEncodingKey<W>& v) {
  put(wr, v.c);
  put(wr, v.b);
  put(wr, v.levels);
  put(wr, v.seed);
}
template <Word W>
void get(Reader& rd, RtdhEncodingKey<W>& v) {
  get(rd, v.c);
  get(rd, v.b);
  get(rd, v.levels);
  get(rd, v.seed);
}
template <Word W>
void put(Writer& wr, const RtdhTrapdoor<W>& v) {
  put(wr, v.phi);
  put(wr, v.seed);
}
template <Word W>
void get(Reader& rd, RtdhTrapdoor<W>& v) {
  get(rd, v.phi);
  get(rd, v.seed);
}

// ---- type tags ----------------------------------------------------------------

template <class T>
struct Tag;

#define SOTE_WIRE_TAG(Type, Value) \
  template <Word W>                \
  struct Tag<Type<W>> {            \
    static constexpr TypeTag value = TypeTag::Value; \
  }
#define SOTE_WIRE_TAG_PLAIN(Type, Value) \
  template <>                            \
  struct Tag<Type> {                     \
    static constexpr TypeTag value = TypeTag::Value; \
  }

SOTE_WIRE_TAG(Matrix, kMatrix);
SOTE_WIRE_TAG(Vector, kVector);
SOTE_WIRE_TAG_PLAIN(HalfOtePublicKey, kHalfPublicKey);
SOTE_WIRE_TAG(HalfDigest, kHalfDigest);
SOTE_WIRE_TAG(HalfHasherState, kHalfHasherState);
SOTE_WIRE_TAG(HalfEncoding, kHalfEncoding);
SOTE_WIRE_TAG(HalfEncoderSecret, kHalfEncoderSecret);
SOTE_WIRE_TAG_PLAIN(FullOtePublicKey, kFullPublicKey);
SOTE_WIRE_TAG(FullDigest, kFullDigest);
SOTE_WIRE_TAG(FullHasherState, kFullHasherState);
SOTE_WIRE_TAG(FullEncoding, kFullEncoding);
SOTE_WIRE_TAG(FullEncoderSecret, kFullEncoderSecret);
SOTE_WIRE_TAG(BlockEncoding, kBlockEncoding);
SOTE_WIRE_TAG(BlockSecret, kBlockSecret);
SOTE_WIRE_TAG(ExactEncoding, kExactEncoding);
SOTE_WIRE_TAG(ExactSecret, kExactSecret);
SOTE_WIRE_TAG(MoleDigest, kMoleDigest);
SOTE_WIRE_TAG(MoleHasherState, kMoleHasherState);
SOTE_WIRE_TAG(MoleEncoding, kMoleEncoding);
SOTE_WIRE_TAG(MoleEncoderSecret, kMoleEncoderSecret);
SOTE_WIRE_TAG(LatticeEncoding, kLatticeEncoding);
SOTE_WIRE_TAG_PLAIN(CompressionKey, kCompressionKey);
SOTE_WIRE_TAG(CompressedEncoding, kCompressedEncoding);
SOTE_WIRE_TAG(RtdhHashKey, kRtdhHashKey);
SOTE_WIRE_TAG(RtdhEncodingKey, kRtdhEncodingKey);
SOTE_WIRE_TAG(RtdhTrapdoor, kRtdhTrapdoor);

#undef SOTE_WIRE_TAG
#undef SOTE_WIRE_TAG_PLAIN

// ---- messages ---------------------------------------------------------------

// Serializes v under the header parameters `ctx`; ctx.w fixes the entry width.
template <class T>
std::vector<std::uint8_t> encode(const RingParams& ctx, const T& v) {
  check_ring_params(ctx);
  Writer wr;
  wr.w = ctx.w;
  wr.bytes(kMagic);
  wr.u16(kVersion);
  wr.u16(static_cast<std::uint16_t>(Tag<T>::value));
  put(wr, ctx);
  put(wr, v);
  return wr.take();
}

struct Header {
  TypeTag tag{};
  RingParams params;
};

inline Header read_header(Reader& rd) {
  rd.need(4);
  const auto magic = rd.bytes(4);
  require(std::equal(magic.begin(), magic.end(), kMagic.begin()), ErrorCode::kWireFormat,
          "bad magic");
  const std::uint16_t version = rd.u16();
  require(version == kVersion, ErrorCode::kWireFormat,
          "unsupported format version " + std::to_string(version));
  Header h;
  const std::uint16_t tag = rd.u16();
  require(tag >= 1 && tag <= static_cast<std::uint16_t>(TypeTag::kRtdhTrapdoor),
          ErrorCode::kWireFormat, "unknown type tag " + std::to_string(tag));
  h.tag = static_cast<TypeTag>(tag);
  get(rd, h.params);
  rd.w = h.params.w;
  return h;
}

// Parses a message of type T; returns the header parameters alongside.
template <class T>
std::pair<RingParams, T> decode_with_params(std::span<const std::uint8_t> bytes) {
  Reader rd(bytes);
  const Header h = read_header(rd);
  require(h.tag == Tag<T>::value, ErrorCode::kWireFormat,
          "type tag " + std::to_string(static_cast<unsigned>(h.tag)) + " where " +
              std::to_string(static_cast<unsigned>(Tag<T>::value)) + " was expected");
  T v{};
  get(rd, v);
  rd.finish();
  return {h.params, std::move(v)};
}

template <class T>
T decode(std::span<const std::uint8_t> bytes) {
  return decode_with_params<T>(bytes).second;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(out), ErrorCode::kIo, "write to " + path.string() + " failed");
}

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  require(!in.bad(), ErrorCode::kIo, "read from " + path.string() + " failed");
  return out;
}

// Writes v to path and reads it back, so a protocol run only ever
// continues from the bytes a peer would receive.
template <class T>
T round_trip_file(const std::filesystem::path& path, const RingParams& ctx, const T& v) {
  write_file(path, encode(ctx, v));
  return decode<T>(read_file(path));
}

}  // namespace sote::wire

#endif  // SOTE_WIRE_HPP_
