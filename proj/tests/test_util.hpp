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

#ifndef SOTE_TESTS_TEST_UTIL_HPP_
#define SOTE_TESTS_TEST_UTIL_HPP_

#include <string>

#include "sote/params.hpp"
#include "sote/sampling.hpp"

namespace sote {

inline Seed test_seed() {
  return Seed::from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
}

inline SeedStream test_stream(const std::string& tag) { return SeedStream(test_seed(), tag); }

inline RingParams make_params(unsigned w, unsigned p_log, std::uint32_t k, std::uint32_t t,
                              std::uint32_t r, std::uint64_t B) {
  RingParams p;
  p.w = w;
  p.p_log = p_log;
  p.k = k;
  p.t = t;
  p.r = r;
  p.B = B;
  p.master_seed = test_seed();
  return p;
}

// Brute-force x ⊗ y over the integers reduced mod 2^w.
template <Word W>
Vector<W> tensor_oracle(const Vector<W>& x, const Vector<W>& y, unsigned w) {
  Vector<W> out(w, x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out.set(i * y.size() + j, static_cast<W>(static_cast<u128>(x[i]) * y[j]));
    }
  }
  return out;
}

}  // namespace sote

#endif  // SOTE_TESTS_TEST_UTIL_HPP_
