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

// Parameter profiles, the key=value config grammar and the validator.
//
// Config grammar: one `key = value` per line; '#' starts a comment; blank
// lines are ignored; keys may appear at most once. `base = <profile>` (if
// present) starts from a shipped profile and the remaining keys override it.
// Keys: name base w p_log k t r B half_m half_ell ote_ell mole_t mole_r
// mole_rows mole_cols ell_f t_a d T inputs memory_budget_mib protocols.
// `protocols` is a comma list of run targets such as `ote:exact` or `rtdh`.

#ifndef SOTE_PROFILE_HPP_
#define SOTE_PROFILE_HPP_

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <sodium.h>

#include "sote/bounds.hpp"
#include "sote/compression.hpp"
#include "sote/error.hpp"
#include "sote/mole.hpp"
#include "sote/ote_full.hpp"
#include "sote/params.hpp"
#include "sote/rtdh.hpp"

namespace sote {

enum class Protocol { kOteHalf, kOte, kMole, kLenc, kCompress, kRtdh, kAlwe };

inline const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::kOteHalf: return "ote-half";
    case Protocol::kOte: return "ote";
    case Protocol::kMole: return "mole";
    case Protocol::kLenc: return "lenc";
    case Protocol::kCompress: return "compress";
    case Protocol::kRtdh: return "rtdh";
    case Protocol::kAlwe: return "alwe";
  }
  return "unknown";
}

inline Protocol parse_protocol(std::string_view s) {
  for (Protocol p : {Protocol::kOteHalf, Protocol::kOte, Protocol::kMole, Protocol::kLenc,
                     Protocol::kCompress, Protocol::kRtdh, Protocol::kAlwe}) {
    if (s == protocol_name(p)) return p;
  }
  throw Error(ErrorCode::kParameter, "unknown protocol '" + std::string(s) + "'");
}

// The reverse TDH always rounds, so it is exact regardless of the flag.
inline bool effective_exact(Protocol p, bool exact) { return exact || p == Protocol::kRtdh; }

struct RunTarget {
  Protocol protocol = Protocol::kOte;
  bool exact = false;
  bool operator==(const RunTarget&) const = default;
};

inline std::string target_name(const RunTarget& t) {
  return std::string(protocol_name(t.protocol)) + (t.exact ? ":exact" : "");
}

struct Profile {
  std::string name = "custom";
  RingParams ring;
  std::size_t half_m = 0;    // ote-half input length; 0 means t·n
  std::size_t half_ell = 0;  // ote-half payload length; 0 means n
  std::size_t ote_ell = 0;   // bootstrapped OTE payload length; 0 means n
  std::uint32_t mole_t = 1;
  std::uint32_t mole_r = 1;
  std::size_t mole_rows = 1;
  std::size_t mole_cols = 1;
  std::size_t ell_f = 1;
  std::size_t t_a = 1;
  std::size_t depth = 1;
  std::int64_t bound_t = 1;
  std::size_t inputs = 1;
  std::uint64_t memory_budget_mib = 4096;
  std::vector<RunTarget> protocols;  // targets this profile is shipped for

  std::size_t half_m_or_default() const { return half_m ? half_m : ring.t * ring.n(); }
  std::size_t half_ell_or_default() const { return half_ell ? half_ell : ring.n(); }
  std::size_t ote_ell_or_default() const { return ote_ell ? ote_ell : ring.n(); }

  RingParams mole_params() const {
    RingParams p = ring;
    p.t = mole_t;
    p.r = mole_r;
    return p;
  }

  RtdhParams rtdh_params() const {
    RtdhParams p;
    p.ring = ring;
    p.mole_t = mole_t;
    p.mole_r = mole_r;
    p.ell_f = ell_f;
    p.t_a = t_a;
    p.depth = depth;
    p.bound_t = bound_t;
    return p;
  }

  bool operator==(const Profile&) const = default;
};

namespace profiles {

inline Profile make(std::string name, unsigned w, unsigned p_log, std::uint32_t k,
                    std::uint32_t t, std::uint32_t r, std::uint64_t B) {
  Profile p;
  p.name = std::move(name);
  p.ring.w = w;
  p.ring.p_log = p_log;
  p.ring.k = k;
  p.ring.t = t;
  p.ring.r = r;
  p.ring.B = B;
  return p;
}

inline std::vector<Profile> shipped() {
  std::vector<Profile> out;
  {
    Profile p = make("toy8", 8, 2, 2, 2, 2, 1);
    p.mole_t = 2;
    p.mole_r = 2;
    p.mole_rows = 4;
    p.mole_cols = 2;
    p.ell_f = 1;
    p.depth = 1;
    p.bound_t = 2;
    p.inputs = 3;
    p.protocols = {{Protocol::kOteHalf, false}, {Protocol::kOte, false},
                   {Protocol::kMole, false}};
    out.push_back(p);
  }
  {
    Profile p = make("desk40", 40, 8, 4, 2, 2, 2);
    p.mole_t = 4;
    p.mole_r = 2;
    p.mole_rows = 16;
    p.mole_cols = 3;
    p.depth = 2;
    p.bound_t = 4;
    p.inputs = 4;
    p.protocols = {{Protocol::kOteHalf, false}, {Protocol::kOte, true},
                   {Protocol::kMole, false}, {Protocol::kMole, true},
                   {Protocol::kLenc, false}};
    out.push_back(p);
  }
  {
    Profile p = make("mid64", 64, 8, 1, 2, 2, 2);
    p.mole_t = 2;
    p.mole_r = 2;
    p.mole_rows = 2;
    p.mole_cols = 2;
    p.depth = 3;
    p.bound_t = 4;
    p.inputs = 4;
    p.protocols = {{Protocol::kOteHalf, false}, {Protocol::kOte, false},
                   {Protocol::kMole, false}, {Protocol::kCompress, false},
                   {Protocol::kLenc, false}};
    out.push_back(p);
  }
  {
    // Compression at t = r = 1; MOLE at t^r = 784 >= ell_f·t_a·k·w = 768.
    Profile p = make("desk96", 96, 8, 4, 1, 1, 2);
    p.mole_t = 28;
    p.mole_r = 2;
    p.ell_f = 2;
    p.t_a = 1;
    p.depth = 2;
    p.bound_t = 4;
    p.inputs = 4;
    p.protocols = {{Protocol::kRtdh, true}};
    out.push_back(p);
  }
  {
    Profile p = make("lite64", 64, 4, 1, 2, 1, 1);
    p.mole_t = 8;
    p.mole_r = 2;
    p.ell_f = 1;
    p.t_a = 1;
    p.depth = 2;
    p.bound_t = 4;
    p.inputs = 4;
    p.protocols = {{Protocol::kRtdh, true}};
    out.push_back(p);
  }
  {
    // k is the secret dimension of the attacked LWE instance.
    Profile p = make("alwe32", 32, 1, 8, 1, 1, 2);
    p.protocols = {{Protocol::kAlwe, false}};
    out.push_back(p);
  }
  return out;
}

inline Profile get(std::string_view name) {
  for (auto& p : shipped()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::kParameter, "unknown profile '" + std::string(name) + "'");
}

}  // namespace profiles

// ---- config files -------------------------------------------------------------

namespace config {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_uint(const std::string& v, const std::string& key) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  require(res.ec == std::errc() && res.ptr == v.data() + v.size(), ErrorCode::kParameter,
          "config key '" + key + "' needs a non-negative integer, got '" + v + "'");
  return out;
}

inline std::vector<RunTarget> parse_targets(const std::string& v) {
  std::vector<RunTarget> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    RunTarget t;
    const auto colon = item.find(':');
    if (colon != std::string::npos) {
      require(item.substr(colon + 1) == "exact", ErrorCode::kParameter,
              "protocol suffix must be ':exact' in '" + item + "'");
      t.exact = true;
      item = item.substr(0, colon);
    }
    t.protocol = parse_protocol(item);
    out.push_back(t);
  }
  return out;
}

inline void apply(Profile& p, const std::string& key, const std::string& v) {
  if (key == "name") {
    p.name = v;
  } else if (key == "w") {
    p.ring.w = parse_uint<unsigned>(v, key);
  } else if (key == "p_log") {
    p.ring.p_log = parse_uint<unsigned>(v, key);
  } else if (key == "k") {
    p.ring.k = parse_uint<std::uint32_t>(v, key);
  } else if (key == "t") {
    p.ring.t = parse_uint<std::uint32_t>(v, key);
  } else if (key == "r") {
    p.ring.r = parse_uint<std::uint32_t>(v, key);
  } else if (key == "B") {
    p.ring.B = parse_uint<std::uint64_t>(v, key);
  } else if (key == "half_m") {
    p.half_m = parse_uint<std::size_t>(v, key);
  } else if (key == "half_ell") {
    p.half_ell = parse_uint<std::size_t>(v, key);
  } else if (key == "ote_ell") {
    p.ote_ell = parse_uint<std::size_t>(v, key);
  } else if (key == "mole_t") {
    p.mole_t = parse_uint<std::uint32_t>(v, key);
  } else if (key == "mole_r") {
    p.mole_r = parse_uint<std::uint32_t>(v, key);
  } else if (key == "mole_rows") {
    p.mole_rows = parse_uint<std::size_t>(v, key);
  } else if (key == "mole_cols") {
    p.mole_cols = parse_uint<std::size_t>(v, key);
  } else if (key == "ell_f") {
    p.ell_f = parse_uint<std::size_t>(v, key);
  } else if (key == "t_a") {
    p.t_a = parse_uint<std::size_t>(v, key);
  } else if (key == "d") {
    p.depth = parse_uint<std::size_t>(v, key);
  } else if (key == "T") {
    p.bound_t = static_cast<std::int64_t>(parse_uint<std::uint32_t>(v, key));
  } else if (key == "inputs") {
    p.inputs = parse_uint<std::size_t>(v, key);
  } else if (key == "memory_budget_mib") {
    p.memory_budget_mib = parse_uint<std::uint64_t>(v, key);
  } else if (key == "protocols") {
    p.protocols = parse_targets(v);
  } else {
    throw Error(ErrorCode::kParameter, "unknown config key '" + key + "'");
  }
}

// Parses the key=value grammar; `base` names a shipped profile that the
// remaining keys override.
inline Profile parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::optional<std::string> base;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    require(eq != std::string::npos, ErrorCode::kParameter,
            "config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    require(!key.empty(), ErrorCode::kParameter,
            "config line " + std::to_string(line_no) + ": empty key");
    require(seen.insert(key).second, ErrorCode::kParameter,
            "config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    if (key == "base") {
      base = value;
    } else {
      entries.emplace_back(key, value);
    }
  }
  Profile p = base ? profiles::get(*base) : Profile{};
  for (const auto& [k, v] : entries) apply(p, k, v);
  return p;
}

// Canonical text form; parse(to_text(p)) == p.
inline std::string to_text(const Profile& p) {
  std::ostringstream out;
  out << "name = " << p.name << "\n"
      << "w = " << p.ring.w << "\n"
      << "p_log = " << p.ring.p_log << "\n"
      << "k = " << p.ring.k << "\n"
      << "t = " << p.ring.t << "\n"
      << "r = " << p.ring.r << "\n"
      << "B = " << p.ring.B << "\n"
      << "half_m = " << p.half_m << "\n"
      << "half_ell = " << p.half_ell << "\n"
      << "ote_ell = " << p.ote_ell << "\n"
      << "mole_t = " << p.mole_t << "\n"
      << "mole_r = " << p.mole_r << "\n"
      << "mole_rows = " << p.mole_rows << "\n"
      << "mole_cols = " << p.mole_cols << "\n"
      << "ell_f = " << p.ell_f << "\n"
      << "t_a = " << p.t_a << "\n"
      << "d = " << p.depth << "\n"
      << "T = " << p.bound_t << "\n"
      << "inputs = " << p.inputs << "\n"
      << "memory_budget_mib = " << p.memory_budget_mib << "\n"
      << "protocols = ";
  for (std::size_t i = 0; i < p.protocols.size(); ++i) {
    out << (i ? "," : "") << target_name(p.protocols[i]);
  }
  out << "\n";
  return out.str();
}

}  // namespace config

// BLAKE2b-256 over the canonical text form, hex encoded.
inline std::string params_digest(const Profile& p) {
  ensure_sodium();
  const std::string text = config::to_text(p);
  std::array<unsigned char, 32> h{};
  crypto_generichash(h.data(), h.size(), reinterpret_cast<const unsigned char*>(text.data()),
                     text.size(), nullptr, 0);
  Seed s;
  std::copy(h.begin(), h.end(), s.bytes.begin());
  return s.hex();
}

// ---- validator ----------------------------------------------------------------

struct Violation {
  std::string rule;    // the violated inequality
  std::string detail;  // the numbers that violate it
};

namespace validator {

inline constexpr double kSlackLog2 = -40.0;

inline std::string log2_text(u128 v) {
  std::ostringstream s;
  s.precision(4);
  s << "2^" << bound_log2(v);
  return s.str();
}

// Worst-case bound on the pre-rounding error of one run of the target.
inline u128 error_bound(const Profile& p, Protocol proto) {
  switch (proto) {
    case Protocol::kOteHalf:
      return half_ote::error_bound(p.ring, p.half_m_or_default(), 1);
    case Protocol::kOte:
      return full_ote::error_bound(p.ring, 1);
    case Protocol::kMole:
      return mole::error_bound(p.mole_params(), p.mole_cols);
    case Protocol::kLenc:
      return lenc::layered_ledger_cap(p.ring.B, p.bound_t, p.ring.n(), p.ring.w, p.depth);
    case Protocol::kCompress:
      return compression::error_bound(p.ring);
    case Protocol::kRtdh:
      return rtdh::error_bound(p.rtdh_params());
    case Protocol::kAlwe:
      return sat_mul(sat_mul(p.ring.k, p.ring.w), p.ring.B);
  }
  return kBoundMax;
}

// Bytes of the dominant objects a run materialises (keys, encodings, shares).
inline u128 estimated_bytes(const Profile& p, Protocol proto) {
  const RingParams& rp = p.ring;
  const u128 eb = rp.w <= 64 ? 8 : 16;
  auto half_key_bits = [](u128 n, u128 m, u128 ell) {
    return sat_add(sat_mul(n, m), sat_mul(sat_mul(sat_mul(n, m), ell), n));
  };
  auto full_cost = [&](const RingParams& q, u128 blocks) {
    const u128 n = q.n(), tn = sat_mul(q.t, n);
    const u128 key = half_key_bits(n, tn, n) / 8;
    const u128 enc = sat_mul(sat_mul(sat_mul(sat_mul(q.r, tn), tn), n), eb);
    const u128 xin = sat_mul(sat_mul(sat_pow(q.t, q.r), n), eb);
    return sat_add(sat_add(key, sat_mul(blocks, enc)), xin);
  };
  auto blocks_for = [](const RingParams& q, u128 ell) { return (ell + q.n() - 1) / q.n(); };
  switch (proto) {
    case Protocol::kOteHalf: {
      const u128 n = rp.n(), m = p.half_m_or_default(), ell = p.half_ell_or_default();
      return sat_add(half_key_bits(n, m, ell) / 8, sat_mul(sat_mul(sat_mul(m, m), ell), eb));
    }
    case Protocol::kOte:
      return full_cost(rp, blocks_for(rp, p.ote_ell_or_default()));
    case Protocol::kMole: {
      const RingParams mp = p.mole_params();
      return full_cost(mp, blocks_for(mp, sat_mul(p.mole_cols, rp.w)));
    }
    case Protocol::kLenc: {
      const u128 len = sat_mul(p.inputs + 1, rp.n());
      return sat_mul(sat_mul(sat_mul(len, rp.k), p.depth + 2), eb);
    }
    case Protocol::kCompress: {
      const u128 n = rp.n(), m = sat_mul(sat_pow(rp.t, rp.r), n);
      return sat_add(full_cost(rp, 1), sat_mul(sat_mul(sat_mul(rp.k, m), n), eb));
    }
    case Protocol::kRtdh: {
      const RingParams mp = p.mole_params();
      const u128 n = rp.n(), m = sat_mul(sat_pow(rp.t, rp.r), n);
      const u128 comp = sat_mul(p.depth + 1, full_cost(rp, 1));
      const u128 mole_cost = full_cost(mp, blocks_for(mp, sat_mul(rp.k, rp.w)));
      return sat_add(sat_add(comp, mole_cost), sat_mul(sat_mul(sat_mul(rp.k, m), n), eb));
    }
    case Protocol::kAlwe: {
      const u128 n = rp.k;
      return sat_mul(sat_mul(sat_mul(sat_mul(sat_mul(n, n), n), n), sat_mul(rp.w, rp.w)), eb);
    }
  }
  return kBoundMax;
}

inline std::vector<Violation> validate(const Profile& p, const RunTarget& target) {
  std::vector<Violation> out;
  auto fail = [&](std::string rule, std::string detail) {
    out.push_back({std::move(rule), std::move(detail)});
  };
  const RingParams& rp = p.ring;
  if (rp.w < 8 || rp.w > 128) fail("8 <= w <= 128", "w = " + std::to_string(rp.w));
  if (rp.p_log < 1) fail("p >= 2", "p_log = " + std::to_string(rp.p_log));
  if (rp.p_log >= rp.w) {
    fail("p < q (Delta = q/p >= 2)",
         "p_log = " + std::to_string(rp.p_log) + ", w = " + std::to_string(rp.w));
  }
  if (rp.k < 1 || rp.t < 1 || rp.r < 1) fail("k, t, r >= 1", rp.describe());
  if (rp.B >= (std::uint64_t{1} << 62)) fail("B < 2^62", "B = " + std::to_string(rp.B));
  if (!out.empty()) return out;  // later rules assume a well-formed ring

  const Protocol proto = target.protocol;
  const bool exact = effective_exact(proto, target.exact);
  if (proto == Protocol::kMole || proto == Protocol::kRtdh) {
    const RingParams mp = p.mole_params();
    if (mp.t < 1 || mp.r < 1) fail("mole_t, mole_r >= 1", "");
  }
  if (proto == Protocol::kMole) {
    const u128 need = sat_mul(sat_mul(p.mole_rows, p.mole_cols), rp.w);
    const u128 have = sat_mul(sat_pow(p.mole_t, p.mole_r), rp.n());
    if (need > have) {
      fail("MOLE capacity: rows*cols*w <= mole_t^mole_r * n",
           to_decimal(need) + " > " + to_decimal(have));
    }
  }
  if (proto == Protocol::kRtdh) {
    const RtdhParams tp = p.rtdh_params();
    const u128 need = sat_mul(sat_mul(tp.mole_rows(), rp.k), rp.w);
    const u128 have = sat_mul(sat_pow(p.mole_t, p.mole_r), rp.n());
    if (need > have) {
      fail("MOLE capacity: ell_f*t_a*k*w * k*w <= mole_t^mole_r * n",
           to_decimal(need) + " > " + to_decimal(have));
    }
    const u128 m = sat_mul(sat_pow(rp.t, rp.r), rp.n());
    if (sat_add(p.inputs, 1) > m) {
      fail("len(x) + 1 <= t^r * n", std::to_string(p.inputs + 1) + " > " + to_decimal(m));
    }
    if (p.ell_f < 1 || p.t_a < 1 || p.depth < 1 || p.bound_t < 1) {
      fail("ell_f, t_a, d, T >= 1", "");
    }
  }
  if (proto == Protocol::kLenc && (p.inputs < 1 || p.bound_t < 1)) {
    fail("inputs, T >= 1", "");
  }
  if (proto == Protocol::kAlwe) {
    const u128 noise = error_bound(p, proto);
    if (noise >= (u128{1} << (rp.w - 2))) {
      fail("n*w*B < q/4", log2_text(noise) + " >= 2^" + std::to_string(rp.w - 2));
    }
  }
  if (exact && proto != Protocol::kAlwe) {
    const u128 bound = error_bound(p, proto);
    const double slack = bound_log2(bound) + rp.p_log - rp.w;
    if (bound != 0 && slack > kSlackLog2) {
      std::ostringstream d;
      d.precision(4);
      d << "bound " << log2_text(bound) << ", p/q = 2^-" << rp.delta_log()
        << ", product 2^" << slack;
      fail("exact slack: error_bound * p/q <= 2^-40", d.str());
    }
  }
  const u128 bytes = estimated_bytes(p, proto);
  const u128 budget = sat_mul(p.memory_budget_mib, u128{1} << 20);
  if (bytes > budget) {
    fail("estimated memory <= memory_budget_mib",
         to_decimal(bytes >> 20) + " MiB > " + std::to_string(p.memory_budget_mib) + " MiB");
  }
  return out;
}

}  // namespace validator
}  // namespace sote

#endif  // SOTE_PROFILE_HPP_
