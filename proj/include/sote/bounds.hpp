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

// Saturating 128-bit arithmetic for error bounds. A saturated bound means
// "at least 2^128 - 1" and compares as larger than every residue.

#ifndef SOTE_BOUNDS_HPP_
#define SOTE_BOUNDS_HPP_

#include <cmath>
#include <string>

#include "sote/ring.hpp"

namespace sote {

inline constexpr u128 kBoundMax = ~u128{0};

constexpr u128 sat_add(u128 a, u128 b) { return a > kBoundMax - b ? kBoundMax : a + b; }

constexpr u128 sat_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  return a > kBoundMax / b ? kBoundMax : a * b;
}

constexpr u128 sat_pow(u128 a, std::size_t e) {
  u128 out = 1;
  for (std::size_t i = 0; i < e; ++i) out = sat_mul(out, a);
  return out;
}

inline std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

inline double bound_log2(u128 v) {
  if (v == 0) return -INFINITY;
  const double hi = static_cast<double>(static_cast<std::uint64_t>(v >> 64));
  const double lo = static_cast<double>(static_cast<std::uint64_t>(v));
  return std::log2(hi * 18446744073709551616.0 + lo);
}

// q/2 for modulus 2^w, as a bound value.
inline u128 half_modulus(unsigned w) { return u128{1} << (w - 1); }

}  // namespace sote

#endif  // SOTE_BOUNDS_HPP_
