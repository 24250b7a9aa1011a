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

// Restricted-multiplication straight-line programs.
//
// Wire numbering: inputs x_0..x_{N-1} are wires 0..N-1, the constant 1 is
// wire N, and the k-th value-producing instruction defines wire N+1+k.
//
// Text format, one instruction per line, '#' starts a comment:
//   INPUTS n        optional; otherwise 1 + the largest input index used
//   ADD a b         a + b
//   SMUL c a        c·a for an integer constant c
//   MULIN a i       a·x_i (i may be N to multiply by the constant 1)
//   OUT a           append wire a to the outputs
// Operands are written x<k> (input), one (constant), or t<k> (result of the
// k-th value-producing instruction). MULIN accepts i or x<i>.

#ifndef SOTE_RMS_HPP_
#define SOTE_RMS_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sote/error.hpp"
#include "sote/sampling.hpp"

namespace sote {

enum class RmsOp { kAdd, kSmul, kMulIn };

struct RmsInstr {
  RmsOp op = RmsOp::kAdd;
  std::size_t a = 0;
  std::size_t b = 0;     // second operand for kAdd, input index for kMulIn
  std::int64_t c = 0;    // constant for kSmul
  bool operator==(const RmsInstr&) const = default;
};

struct RmsProgram {
  std::size_t num_inputs = 0;
  std::vector<RmsInstr> instrs;
  std::vector<std::size_t> outputs;

  std::size_t one_wire() const { return num_inputs; }
  std::size_t num_wires() const { return num_inputs + 1 + instrs.size(); }
  std::size_t temp_wire(std::size_t k) const { return num_inputs + 1 + k; }
  bool operator==(const RmsProgram&) const = default;
};

struct RmsInfo {
  std::size_t depth = 0;           // max multiplicative depth over outputs
  std::int64_t magnitude = 0;      // max |wire| over binary inputs, all wires
  std::vector<std::size_t> wire_depth;
  std::vector<std::int64_t> wire_lo, wire_hi;
};

namespace rms {

inline RmsInfo analyse(const RmsProgram& f) {
  require(f.num_inputs >= 1, ErrorCode::kProgram, "program must have at least one input");
  require(!f.outputs.empty(), ErrorCode::kProgram, "program has no outputs");
  RmsInfo info;
  const std::size_t nw = f.num_wires();
  info.wire_depth.assign(nw, 0);
  info.wire_lo.assign(nw, 0);
  info.wire_hi.assign(nw, 1);
  info.wire_lo[f.one_wire()] = 1;
  constexpr std::int64_t kMax = std::int64_t{1} << 40;
  for (std::size_t k = 0; k < f.instrs.size(); ++k) {
    const RmsInstr& in = f.instrs[k];
    const std::size_t out = f.temp_wire(k);
    require(in.a < out, ErrorCode::kProgram, "operand refers to an undefined wire");
    std::int64_t lo = 0, hi = 0;
    std::size_t depth = info.wire_depth[in.a];
    switch (in.op) {
      case RmsOp::kAdd:
        require(in.b < out, ErrorCode::kProgram, "operand refers to an undefined wire");
        lo = info.wire_lo[in.a] + info.wire_lo[in.b];
        hi = info.wire_hi[in.a] + info.wire_hi[in.b];
        depth = std::max(depth, info.wire_depth[in.b]);
        break;
      case RmsOp::kSmul:
        require(in.c > -kMax && in.c < kMax, ErrorCode::kProgram, "constant out of range");
        lo = std::min(in.c * info.wire_lo[in.a], in.c * info.wire_hi[in.a]);
        hi = std::max(in.c * info.wire_lo[in.a], in.c * info.wire_hi[in.a]);
        break;
      case RmsOp::kMulIn:
        require(in.b <= f.num_inputs, ErrorCode::kProgram,
                "multiplication right operand must be an input");
        if (in.b == f.one_wire()) {
          lo = info.wire_lo[in.a];
          hi = info.wire_hi[in.a];
        } else {
          lo = std::min<std::int64_t>(0, info.wire_lo[in.a]);
          hi = std::max<std::int64_t>(0, info.wire_hi[in.a]);
        }
        depth += 1;
        break;
    }
    require(lo > -kMax && hi < kMax, ErrorCode::kProgram, "wire magnitude overflows");
    info.wire_lo[out] = lo;
    info.wire_hi[out] = hi;
    info.wire_depth[out] = depth;
  }
  for (std::size_t o : f.outputs) {
    require(o < nw, ErrorCode::kProgram, "output refers to an undefined wire");
    info.depth = std::max(info.depth, info.wire_depth[o]);
  }
  for (std::size_t i = 0; i < nw; ++i) {
    info.magnitude = std::max({info.magnitude, -info.wire_lo[i], info.wire_hi[i]});
  }
  return info;
}

// Checks multiplicative depth ≤ max_depth and T-boundedness over binary inputs.
inline RmsInfo validate(const RmsProgram& f, std::size_t max_depth, std::int64_t bound_t) {
  RmsInfo info = analyse(f);
  require(info.depth <= max_depth, ErrorCode::kProgram,
          "program depth " + std::to_string(info.depth) + " exceeds " +
              std::to_string(max_depth));
  require(info.magnitude <= bound_t, ErrorCode::kProgram,
          "program is not " + std::to_string(bound_t) + "-bounded (magnitude " +
              std::to_string(info.magnitude) + ")");
  for (const RmsInstr& in : f.instrs) {
    if (in.op == RmsOp::kSmul) {
      require(in.c >= -bound_t && in.c <= bound_t, ErrorCode::kProgram,
              "scalar constant exceeds the magnitude bound");
    }
  }
  return info;
}

// Evaluates f over the integers on x (without the appended 1).
inline std::vector<std::int64_t> eval_plain(const RmsProgram& f,
                                            const std::vector<std::int64_t>& x) {
  require(x.size() == f.num_inputs, ErrorCode::kDimension, "input length mismatch");
  std::vector<std::int64_t> wires(x);
  wires.push_back(1);
  for (const RmsInstr& in : f.instrs) {
    require(in.a < wires.size(), ErrorCode::kProgram, "operand refers to an undefined wire");
    switch (in.op) {
      case RmsOp::kAdd:
        require(in.b < wires.size(), ErrorCode::kProgram, "operand refers to an undefined wire");
        wires.push_back(wires[in.a] + wires[in.b]);
        break;
      case RmsOp::kSmul:
        wires.push_back(in.c * wires[in.a]);
        break;
      case RmsOp::kMulIn:
        require(in.b <= f.num_inputs, ErrorCode::kProgram,
                "multiplication right operand must be an input");
        wires.push_back(wires[in.a] * wires[in.b]);
        break;
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t o : f.outputs) {
    require(o < wires.size(), ErrorCode::kProgram, "output refers to an undefined wire");
    out.push_back(wires[o]);
  }
  return out;
}

namespace detail {

struct RawRef {
  char kind = 0;  // 'x', 'o', 't'
  std::size_t index = 0;
};

inline std::size_t parse_index(std::string_view s, std::size_t line) {
  require(!s.empty() && s.size() <= 12 && std::all_of(s.begin(), s.end(), ::isdigit),
          ErrorCode::kProgram, "line " + std::to_string(line) + ": bad index '" +
                                   std::string(s) + "'");
  return std::stoull(std::string(s));
}

inline RawRef parse_ref(std::string_view tok, std::size_t line) {
  if (tok == "one") return {'o', 0};
  require(tok.size() >= 2 && (tok[0] == 'x' || tok[0] == 't'), ErrorCode::kProgram,
          "line " + std::to_string(line) + ": bad operand '" + std::string(tok) + "'");
  return {tok[0], parse_index(tok.substr(1), line)};
}

}  // namespace detail

inline RmsProgram parse(std::string_view text) {
  struct RawInstr {
    std::string op;
    detail::RawRef a, b;
    std::int64_t c = 0;
    std::size_t line = 0;
  };
  std::vector<RawInstr> raw;
  std::optional<std::size_t> declared_inputs;
  std::size_t max_input = 0;
  bool any_input = false;
  std::istringstream in{std::string(text)};
  std::string line_text;
  std::size_t line_no = 0;
  auto note_input = [&](const detail::RawRef& r) {
    if (r.kind == 'x') {
      any_input = true;
      max_input = std::max(max_input, r.index);
    }
  };
  while (std::getline(in, line_text)) {
    ++line_no;
    if (auto h = line_text.find('#'); h != std::string::npos) line_text.resize(h);
    std::istringstream ls(line_text);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const std::string& op = tok[0];
    auto expect = [&](std::size_t n) {
      require(tok.size() == n, ErrorCode::kProgram,
              where + op + " takes " + std::to_string(n - 1) + " operand(s)");
    };
    RawInstr r;
    r.op = op;
    r.line = line_no;
    if (op == "INPUTS") {
      expect(2);
      require(!declared_inputs && raw.empty(), ErrorCode::kProgram,
              where + "INPUTS must appear once, before any instruction");
      declared_inputs = detail::parse_index(tok[1], line_no);
      continue;
    } else if (op == "ADD") {
      expect(3);
      r.a = detail::parse_ref(tok[1], line_no);
      r.b = detail::parse_ref(tok[2], line_no);
      note_input(r.a);
      note_input(r.b);
    } else if (op == "SMUL") {
      expect(3);
      std::size_t used = 0;
      try {
        r.c = std::stoll(tok[1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == tok[1].size() && used > 0, ErrorCode::kProgram,
              where + "bad constant '" + tok[1] + "'");
      r.a = detail::parse_ref(tok[2], line_no);
      note_input(r.a);
    } else if (op == "MULIN") {
      expect(3);
      r.a = detail::parse_ref(tok[1], line_no);
      const std::string_view idx = tok[2][0] == 'x' ? std::string_view(tok[2]).substr(1)
                                                    : std::string_view(tok[2]);
      r.b = {'x', detail::parse_index(idx, line_no)};
      note_input(r.a);
    } else if (op == "OUT") {
      expect(2);
      r.a = detail::parse_ref(tok[1], line_no);
      note_input(r.a);
    } else {
      throw Error(ErrorCode::kProgram, where + "unknown instruction '" + op + "'");
    }
    raw.push_back(r);
  }
  RmsProgram f;
  if (declared_inputs) {
    f.num_inputs = *declared_inputs;
  } else {
    // MULIN indices may name the constant wire N, so only operands count here.
    std::size_t max_mul = 0;
    for (const auto& r : raw) {
      if (r.op == "MULIN") max_mul = std::max(max_mul, r.b.index + 1);
    }
    f.num_inputs = std::max(any_input ? max_input + 1 : 0, max_mul);
  }
  require(f.num_inputs >= 1, ErrorCode::kProgram, "program must have at least one input");
  std::size_t temps = 0;
  for (const auto& r : raw) {
    const std::string where = "line " + std::to_string(r.line) + ": ";
    auto resolve = [&](const detail::RawRef& ref) -> std::size_t {
      switch (ref.kind) {
        case 'x':
          require(ref.index < f.num_inputs, ErrorCode::kProgram, where + "input out of range");
          return ref.index;
        case 'o':
          return f.one_wire();
        default:
          require(ref.index < temps, ErrorCode::kProgram,
                  where + "t" + std::to_string(ref.index) + " is not yet defined");
          return f.temp_wire(ref.index);
      }
    };
    if (r.op == "OUT") {
      f.outputs.push_back(resolve(r.a));
      continue;
    }
    RmsInstr ins;
    ins.a = resolve(r.a);
    if (r.op == "ADD") {
      ins.op = RmsOp::kAdd;
      ins.b = resolve(r.b);
    } else if (r.op == "SMUL") {
      ins.op = RmsOp::kSmul;
      ins.c = r.c;
    } else {
      ins.op = RmsOp::kMulIn;
      require(r.b.index <= f.num_inputs, ErrorCode::kProgram,
              where + "MULIN index out of range");
      ins.b = r.b.index;
    }
    f.instrs.push_back(ins);
    ++temps;
  }
  require(!f.outputs.empty(), ErrorCode::kProgram, "program has no OUT instruction");
  analyse(f);
  return f;
}

inline std::string to_text(const RmsProgram& f) {
  auto name = [&](std::size_t w) -> std::string {
    if (w < f.num_inputs) return "x" + std::to_string(w);
    if (w == f.one_wire()) return "one";
    return "t" + std::to_string(w - f.num_inputs - 1);
  };
  std::ostringstream out;
  out << "INPUTS " << f.num_inputs << "\n";
  for (const RmsInstr& in : f.instrs) {
    switch (in.op) {
      case RmsOp::kAdd:
        out << "ADD " << name(in.a) << " " << name(in.b) << "\n";
        break;
      case RmsOp::kSmul:
        out << "SMUL " << in.c << " " << name(in.a) << "\n";
        break;
      case RmsOp::kMulIn:
        out << "MULIN " << name(in.a) << " " << in.b << "\n";
        break;
    }
  }
  for (std::size_t o : f.outputs) out << "OUT " << name(o) << "\n";
  return out.str();
}

// Random layered program: each layer-l wire is (c1·a + c2·b)·x_i with a, b
// from layer l-1 and positive constants chosen so every wire stays ≤ T on
// binary inputs; the outputs are num_outputs wires of the final layer.
inline RmsProgram random_layered(SeedStream& s, std::size_t num_inputs, std::size_t depth,
                                 std::int64_t bound_t, std::size_t width,
                                 std::size_t num_outputs) {
  require(bound_t >= 1 && width >= 1 && num_outputs >= 1, ErrorCode::kParameter,
          "bad random program shape");
  RmsProgram f;
  f.num_inputs = num_inputs;
  std::vector<std::size_t> layer;
  std::vector<std::int64_t> mag;
  for (std::size_t i = 0; i < num_inputs; ++i) {
    layer.push_back(i);
    mag.push_back(1);
  }
  auto emit = [&](RmsInstr in) {
    f.instrs.push_back(in);
    return f.temp_wire(f.instrs.size() - 1);
  };
  for (std::size_t l = 0; l < depth; ++l) {
    std::vector<std::size_t> next;
    std::vector<std::int64_t> next_mag;
    for (std::size_t u = 0; u < width; ++u) {
      const std::size_t ia = uniform_below(s, layer.size());
      std::int64_t ca = 1 + static_cast<std::int64_t>(
                                uniform_below(s, static_cast<std::uint64_t>(bound_t / mag[ia])));
      std::size_t acc = ca == 1 ? layer[ia] : emit({RmsOp::kSmul, layer[ia], 0, ca});
      std::int64_t m = ca * mag[ia];
      const std::size_t ib = uniform_below(s, layer.size());
      if (layer.size() > 1 && ib != ia && m + mag[ib] <= bound_t && uniform_below(s, 4) != 0) {
        const std::int64_t cb =
            1 + static_cast<std::int64_t>(
                    uniform_below(s, static_cast<std::uint64_t>((bound_t - m) / mag[ib])));
        const std::size_t wb = cb == 1 ? layer[ib] : emit({RmsOp::kSmul, layer[ib], 0, cb});
        acc = emit({RmsOp::kAdd, acc, wb, 0});
        m += cb * mag[ib];
      }
      next.push_back(emit({RmsOp::kMulIn, acc, uniform_below(s, num_inputs), 0}));
      next_mag.push_back(m);
    }
    layer = std::move(next);
    mag = std::move(next_mag);
  }
  for (std::size_t o = 0; o < num_outputs; ++o) f.outputs.push_back(layer[o % layer.size()]);
  return f;
}

}  // namespace rms
}  // namespace sote

#endif  // SOTE_RMS_HPP_
