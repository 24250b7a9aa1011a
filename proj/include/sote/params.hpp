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

#ifndef SOTE_PARAMS_HPP_
#define SOTE_PARAMS_HPP_

#include <cstdint>
#include <string>

#include "sote/error.hpp"
#include "sote/ring.hpp"
#include "sote/sampling.hpp"

namespace sote {

struct RingParams {
  unsigned w = 8;
  unsigned p_log = 1;
  std::uint32_t k = 1;
  std::uint32_t t = 1;
  std::uint32_t r = 1;
  std::uint64_t B = 0;
  Seed master_seed{};

  std::size_t n() const { return static_cast<std::size_t>(k) * w; }
  // Δ = q/p as a shift amount.
  unsigned delta_log() const { return w - p_log; }

  // The seed is run configuration and never part of a key or message.
  bool operator==(const RingParams& o) const {
    return w == o.w && p_log == o.p_log && k == o.k && t == o.t && r == o.r && B == o.B;
  }

  std::string describe() const {
    return "w=" + std::to_string(w) + " p_log=" + std::to_string(p_log) +
           " k=" + std::to_string(k) + " t=" + std::to_string(t) +
           " r=" + std::to_string(r) + " B=" + std::to_string(B);
  }
};

inline void check_ring_params(const RingParams& p) {
  require(p.w >= 8 && p.w <= 128, ErrorCode::kParameter, "w must lie in [8, 128]");
  require(p.p_log >= 1 && p.p_log < p.w, ErrorCode::kParameter,
          "p_log must satisfy 1 <= p_log < w");
  require(p.k >= 1 && p.t >= 1 && p.r >= 1, ErrorCode::kParameter, "k, t, r must be >= 1");
  require(p.B < (std::uint64_t{1} << 62), ErrorCode::kParameter, "noise bound too large");
}

template <Word W>
void check_ring_params_for(const RingParams& p) {
  check_ring_params(p);
  require(p.w <= kWordBits<W>, ErrorCode::kParameter,
          "w=" + std::to_string(p.w) + " needs a wider word type");
}

// t^e with overflow detection.
inline std::size_t checked_pow(std::size_t base, std::size_t e) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    require(base == 0 || out <= (std::size_t{1} << 48) / base, ErrorCode::kParameter,
            "dimension overflow");
    out *= base;
  }
  return out;
}

}  // namespace sote

#endif  // SOTE_PARAMS_HPP_
