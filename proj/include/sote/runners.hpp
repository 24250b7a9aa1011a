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

// End-to-end trial runners, one per protocol. Setup draws from
// SeedStream(seed, "sote/<protocol>").derive("setup") and trial i from
// .derive("trial", i), so a report depends only on (profile, seed, trials,
// flags) and never on the thread count.

#ifndef SOTE_RUNNERS_HPP_
#define SOTE_RUNNERS_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sote/alwe.hpp"
#include "sote/compression.hpp"
#include "sote/lattice_encoding.hpp"
#include "sote/mole.hpp"
#include "sote/ote_full.hpp"
#include "sote/ote_half.hpp"
#include "sote/parallel.hpp"
#include "sote/profile.hpp"
#include "sote/report.hpp"
#include "sote/rms.hpp"
#include "sote/rtdh.hpp"
#include "sote/wire.hpp"

namespace sote {

struct RunOptions {
  std::size_t trials = 10;
  Seed seed{};
  bool exact = false;
  unsigned threads = 1;
  std::optional<std::filesystem::path> messages_dir;  // route messages through files
  std::optional<RmsProgram> program;                  // lenc and rtdh; random if unset
  std::vector<Violation> violations;                  // recorded in the report
  bool validator_override = false;
};

// Outcome of one trial.
struct TrialResult {
  bool exact = false;  // output reconstructed exactly
  u128 error = 0;      // measured pre-rounding error
  u128 bound = 0;      // bound that error must respect
  std::vector<std::string> failures;
  std::size_t wrong_entries = 0;
  std::size_t total_entries = 0;
  std::size_t checks = 0;       // protocol-specific identity checks run
  std::size_t checks_ok = 0;    // and passed
  std::vector<std::size_t> counts;  // protocol-specific per-trial tallies
  std::size_t digest_bytes = 0;
  std::size_t key_bytes = 0;
};

namespace runners {

inline constexpr std::size_t kMaxListedFailures = 32;

// Sends messages through the wire format, via files when a directory is set.
class Channel {
 public:
  Channel(const std::optional<std::filesystem::path>& dir, std::string protocol)
      : dir_(dir), protocol_(std::move(protocol)) {
    if (dir_) {
      std::error_code ec;
      std::filesystem::create_directories(*dir_, ec);
      require(!ec, ErrorCode::kIo, "cannot create messages directory " + dir_->string());
    }
  }

  template <class T>
  T send(const RingParams& ctx, const std::string& name, const T& v) const {
    if (!dir_) return v;
    return wire::round_trip_file(*dir_ / (protocol_ + "-" + name + ".bin"), ctx, v);
  }

  template <class T>
  T send(const RingParams& ctx, std::size_t trial, const std::string& name, const T& v) const {
    return send(ctx, "trial" + std::to_string(trial) + "-" + name, v);
  }

 private:
  std::optional<std::filesystem::path> dir_;
  std::string protocol_;
};

template <Word W>
Vector<W> scale_to_q(const Vector<W>& y, const RingParams& p) {
  Vector<W> out(p.w, y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out.raw()[i] = y[i] << p.delta_log();
  out.reduce_all();
  return out;
}

// The same entries reduced into Z_{2^w}.
template <Word W>
Vector<W> rewidth(const Vector<W>& v, unsigned w) {
  Vector<W> out(w, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.raw()[i] = v[i];
  out.reduce_all();
  return out;
}

template <Word W>
std::size_t count_mismatches(const Vector<W>& a, const Vector<W>& b) {
  require(a.size() == b.size(), ErrorCode::kDimension, "length mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

template <Word W>
u128 diff_norm(const Vector<W>& a, const Vector<W>& b) {
  return static_cast<u128>(inf_norm(a - b));
}

inline std::vector<std::int64_t> sample_bits(SeedStream& s, std::size_t n) {
  std::vector<std::int64_t> x(n);
  for (auto& v : x) v = static_cast<std::int64_t>(uniform_below(s, 2));
  return x;
}

template <Word W>
Vector<W> bits_vector(const std::vector<std::int64_t>& x, unsigned w, std::size_t len) {
  Vector<W> v(w, len);
  for (std::size_t i = 0; i < x.size(); ++i) v.raw()[i] = static_cast<W>(x[i]);
  return v;
}

inline std::string trial_tag(std::size_t i) { return "trial " + std::to_string(i) + ": "; }

inline void check_bound(TrialResult& r, std::size_t i) {
  if (r.error > r.bound) {
    r.failures.push_back(trial_tag(i) + "error " + to_decimal(r.error) + " exceeds bound " +
                         to_decimal(r.bound));
  }
}

// Runs the trials and folds them into a report in index order.
template <class Fn>
TrialReport aggregate(const char* protocol, const Profile& prof, const RunOptions& o, bool exact,
                      Fn&& trial, nlohmann::json extra = nlohmann::json::object()) {
  const auto results = parallel_map<TrialResult>(o.trials, o.threads, trial);
  TrialReport rep;
  rep.protocol = protocol;
  rep.exact = exact;
  rep.profile = prof;
  rep.seed_hex = o.seed.hex();
  rep.trials = o.trials;
  rep.violations = o.violations;
  rep.validator_override = o.validator_override;
  std::size_t wrong = 0, total = 0, checks = 0, checks_ok = 0;
  std::vector<std::size_t> counts;
  for (const auto& r : results) {
    rep.exact_success += r.exact;
    rep.max_error = std::max(rep.max_error, r.error);
    rep.bound = std::max(rep.bound, r.bound);
    wrong += r.wrong_entries;
    total += r.total_entries;
    checks += r.checks;
    checks_ok += r.checks_ok;
    if (counts.size() < r.counts.size()) counts.resize(r.counts.size(), 0);
    for (std::size_t j = 0; j < r.counts.size(); ++j) counts[j] += r.counts[j];
    if (!r.failures.empty()) ++rep.failed_trials;
    for (const auto& f : r.failures) {
      if (rep.failures.size() < kMaxListedFailures) rep.failures.push_back(f);
    }
  }
  if (total > 0) {
    extra["wrong_entries"] = wrong;
    extra["total_entries"] = total;
  }
  if (checks > 0) {
    extra["identity_checks"] = checks;
    extra["identity_checks_passed"] = checks_ok;
  }
  if (!counts.empty()) extra["counts"] = counts;
  if (!results.empty() && results.front().digest_bytes > 0) {
    extra["digest_bytes"] = results.front().digest_bytes;
    extra["encoding_key_bytes"] = results.front().key_bytes;
  }
  rep.extra = std::move(extra);
  return rep;
}

// ---- ote-half --------------------------------------------------------------

template <Word W>
TrialReport run_ote_half(const Profile& prof, const RunOptions& o) {
  const RingParams& rp = prof.ring;
  const bool exact = o.exact;
  const SeedStream root(o.seed, "sote/ote-half");
  const Channel ch(o.messages_dir, "ote-half");
  const std::size_t m = prof.half_m_or_default(), ell = prof.half_ell_or_default();
  const auto pk = ch.send(rp, "pk", half_ote::setup(rp, m, ell, root.derive("setup")));
  const u128 bound = half_ote::error_bound(rp, m, 1);
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream xs = ts.derive("x"), ys = ts.derive("y");
    const Vector<W> x = sample_binary_vector<W>(xs, m, rp.w);
    const Vector<W> y = sample_uniform_zq<W>(ys, ell, exact ? rp.p_log : rp.w);
    const Vector<W> payload = exact ? scale_to_q(y, rp) : y;
    auto [dig, st] = half_ote::hash(pk, x);
    auto [enc, sec] = half_ote::encode(pk, payload, ts.derive("encode"));
    const auto dig_rx = ch.send(rp, i, "digest", dig);
    const auto enc_rx = ch.send(rp, i, "encoding", enc);
    const Vector<W> v = half_ote::hash_eval(pk, enc_rx, st);
    const Vector<W> u = half_ote::enc_eval(pk, dig_rx, sec);
    TrialResult r;
    r.bound = bound;
    r.error = diff_norm(v + u, kron(x, payload));
    check_bound(r, i);
    if (exact) {
      const Vector<W> sum = full_ote::exact_finalize(v, rp.p_log, ShareRole::kHasher, std::nullopt) +
                            full_ote::exact_finalize(u, rp.p_log, ShareRole::kEncoder, std::nullopt);
      r.wrong_entries = count_mismatches(sum, kron(rewidth(x, rp.p_log), y));
      r.total_entries = sum.size();
      r.exact = r.wrong_entries == 0;
      if (!r.exact) {
        r.failures.push_back(trial_tag(i) + std::to_string(r.wrong_entries) + " of " +
                             std::to_string(r.total_entries) + " entries wrong after rounding");
      }
    } else {
      r.exact = r.error == 0;
      if (rp.B == 0 && !r.exact) r.failures.push_back(trial_tag(i) + "noiseless run is not exact");
    }
    return r;
  };
  return aggregate("ote-half", prof, o, exact, trial);
}

// ---- ote -------------------------------------------------------------------

template <Word W>
TrialReport run_ote(const Profile& prof, const RunOptions& o) {
  const RingParams& rp = prof.ring;
  const bool exact = o.exact;
  const SeedStream root(o.seed, "sote/ote");
  const Channel ch(o.messages_dir, "ote");
  const auto pk = ch.send(rp, "pk", full_ote::setup(rp, root.derive("setup")));
  const u128 bound = full_ote::error_bound(rp, 1);
  const std::size_t m = pk.m(), ell = exact ? prof.ote_ell_or_default() : rp.n();
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream xs = ts.derive("x"), ys = ts.derive("y");
    const Vector<W> x = sample_binary_vector<W>(xs, m, rp.w);
    auto [dig, st] = full_ote::hash(pk, x);
    const auto dig_rx = ch.send(rp, i, "digest", dig);
    TrialResult r;
    r.bound = bound;
    if (!exact) {
      const Vector<W> y = sample_uniform_zq<W>(ys, ell, rp.w);
      auto [enc, sec] = full_ote::encode(pk, y, ts.derive("encode"));
      const auto enc_rx = ch.send(rp, i, "encoding", enc);
      const Vector<W> v = full_ote::hash_eval(pk, enc_rx, st);
      const Vector<W> u = full_ote::enc_eval(pk, dig_rx, sec);
      r.error = diff_norm(v + u, kron(x, y));
      r.exact = r.error == 0;
      check_bound(r, i);
      if (rp.B == 0 && !r.exact) r.failures.push_back(trial_tag(i) + "noiseless run is not exact");
      // The encoder's share is a fixed linear map of d ⊗ (φ ⊗ g).
      r.checks = 1;
      r.checks_ok = u == full_ote::apply_composed(pk, kron(dig_rx.d, half_ote::gadget_expand(sec.phi)));
      if (!r.checks_ok) r.failures.push_back(trial_tag(i) + "bilinear identity does not hold");
      return r;
    }
    const Vector<W> y = sample_uniform_zq<W>(ys, ell, rp.p_log);
    auto [enc, sec] = full_ote::exact_encode(pk, y, ts.derive("encode"));
    const auto enc_rx = ch.send(rp, i, "encoding", enc);
    const Vector<W> v = full_ote::hash_eval_blocks(pk, enc_rx.enc, st);
    const Vector<W> u = full_ote::enc_eval_blocks(pk, dig_rx, sec.sec);
    r.error = diff_norm(v + u, kron(x, scale_to_q(y, rp)));
    check_bound(r, i);
    const Vector<W> sum =
        full_ote::exact_finalize(v, rp.p_log, ShareRole::kHasher, enc_rx.mask_seed) +
        full_ote::exact_finalize(u, rp.p_log, ShareRole::kEncoder, sec.mask_seed);
    r.wrong_entries = count_mismatches(sum, kron(rewidth(x, rp.p_log), y));
    r.total_entries = sum.size();
    r.exact = r.wrong_entries == 0;
    if (!r.exact) {
      r.failures.push_back(trial_tag(i) + std::to_string(r.wrong_entries) + " of " +
                           std::to_string(r.total_entries) + " entries wrong after rounding");
    }
    return r;
  };
  return aggregate("ote", prof, o, exact, trial);
}

// ---- mole ------------------------------------------------------------------

template <Word W>
TrialReport run_mole(const Profile& prof, const RunOptions& o) {
  const RingParams mp = prof.mole_params();
  const bool exact = o.exact;
  const SeedStream root(o.seed, "sote/mole");
  const Channel ch(o.messages_dir, "mole");
  const auto pk = ch.send(mp, "pk", mole::setup(mp, root.derive("setup")));
  mole::check_capacity(pk, prof.mole_rows, prof.mole_cols);
  const u128 bound = mole::error_bound(mp, prof.mole_cols);
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream ms = ts.derive("M"), ys = ts.derive("y");
    const Matrix<W> mat = sample_uniform_matrix<W>(ms, prof.mole_rows, prof.mole_cols, mp.w);
    const Vector<W> y = sample_uniform_zq<W>(ys, prof.mole_cols, exact ? mp.p_log : mp.w);
    auto [dig, st] = mole::hash(pk, mat);
    const auto dig_rx = ch.send(mp, i, "digest", dig);
    auto [enc, sec] = exact ? mole::exact_encode(pk, y, ts.derive("encode"))
                            : mole::encode(pk, y, ts.derive("encode"));
    const auto enc_rx = ch.send(mp, i, "encoding", enc);
    const Vector<W> v = mole::hash_eval(pk, enc_rx, st);
    const Vector<W> u = mole::enc_eval(pk, dig_rx, sec);
    TrialResult r;
    r.bound = bound;
    const Vector<W> payload = exact ? scale_to_q(y, mp) : y;
    r.error = diff_norm(v + u, mat_vec(mat, payload));
    check_bound(r, i);
    if (!exact) {
      r.exact = r.error == 0;
      if (mp.B == 0 && !r.exact) r.failures.push_back(trial_tag(i) + "noiseless run is not exact");
      return r;
    }
    const Vector<W> sum =
        full_ote::exact_finalize(v, mp.p_log, ShareRole::kHasher, enc_rx.enc.mask_seed) +
        full_ote::exact_finalize(u, mp.p_log, ShareRole::kEncoder, sec.sec.mask_seed);
    // M·y mod p equals (M·y mod q) mod p because p divides q.
    const Vector<W> truth = rewidth(mat_vec(mat, rewidth(y, mp.w)), mp.p_log);
    r.wrong_entries = count_mismatches(sum, truth);
    r.total_entries = sum.size();
    r.exact = r.wrong_entries == 0;
    if (!r.exact) {
      r.failures.push_back(trial_tag(i) + std::to_string(r.wrong_entries) + " of " +
                           std::to_string(r.total_entries) + " entries wrong after rounding");
    }
    return r;
  };
  return aggregate("mole", prof, o, exact, trial);
}

// ---- lenc ------------------------------------------------------------------

template <Word W>
TrialReport run_lenc(const Profile& prof, const RunOptions& o) {
  const RingParams& rp = prof.ring;
  const SeedStream root(o.seed, "sote/lenc");
  const Channel ch(o.messages_dir, "lenc");
  const unsigned w = rp.w;
  const std::size_t k = rp.k, kw = rp.n();
  if (o.program) rms::validate(*o.program, prof.depth, prof.bound_t);
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream ps = ts.derive("program"), xs = ts.derive("x"), ks = ts.derive("keys");
    SeedStream ns = ts.derive("noise");
    std::size_t depth = prof.depth;
    RmsProgram f;
    if (o.program) {
      f = *o.program;
      depth = rms::analyse(f).depth;
    } else {
      depth = static_cast<std::size_t>(uniform_below(ps, prof.depth + 1));
      f = rms::random_layered(ps, prof.inputs, depth, prof.bound_t, 3, 2);
    }
    const std::size_t levels = lenc::levels_needed(f);
    const std::vector<std::int64_t> x = sample_bits(xs, f.num_inputs);
    const std::size_t n_hat = f.num_inputs + 1;
    const Matrix<W> a = sample_uniform_matrix<W>(ks, k, n_hat * kw, w);
    std::vector<Vector<W>> keys;
    for (std::size_t j = 0; j <= levels; ++j) keys.push_back(sample_uniform_zq<W>(ks, k, w));
    Vector<W> xh = bits_vector<W>(x, w, n_hat);
    xh.set(f.num_inputs, 1);
    std::vector<LatticeEncoding<W>> encs;
    for (std::size_t j = 0; j < levels; ++j) {
      encs.push_back(ch.send(rp, i, "level" + std::to_string(j),
                             lenc::encode(a, xh, keys[j], keys[j + 1], ns, rp.B, j, j + 1)));
    }
    const auto outs = lenc::eval_rms_cipher(f, x, encs);
    const auto fx = rms::eval_plain(f, x);
    TrialResult r;
    r.checks = 1;
    r.checks_ok = lenc::concat(outs).a == lenc::eval_rms_key(a, f, levels);
    if (!r.checks_ok) r.failures.push_back(trial_tag(i) + "key path and cipher path disagree");
    bool ok = r.checks_ok;
    for (std::size_t j = 0; j < outs.size(); ++j) {
      Vector<W> truth(w, 1);
      truth.set(0, from_signed<W>(fx[j], w));
      const u128 e =
          static_cast<u128>(inf_norm(lenc::residual(outs[j], keys[0], keys[outs[j].auth_level], truth)));
      r.error = std::max(r.error, e);
      r.bound = std::max(r.bound, outs[j].noise);
      if (e > outs[j].noise) {
        ok = false;
        r.failures.push_back(trial_tag(i) + "output " + std::to_string(j) + " residual " +
                             to_decimal(e) + " exceeds its ledger " + to_decimal(outs[j].noise));
      }
    }
    if (!o.program) {
      const u128 cap = lenc::layered_ledger_cap(rp.B, prof.bound_t, kw, w, depth);
      if (r.bound > cap) {
        ok = false;
        r.failures.push_back(trial_tag(i) + "ledger " + to_decimal(r.bound) +
                             " exceeds the layered cap " + to_decimal(cap));
      }
    }
    r.exact = ok;
    return r;
  };
  nlohmann::json extra;
  if (!o.program) {
    extra["layered_cap"] =
        report::bound_json(lenc::layered_ledger_cap(rp.B, prof.bound_t, kw, w, prof.depth));
  } else {
    extra["program"] = rms::to_text(*o.program);
  }
  return aggregate("lenc", prof, o, false, trial, std::move(extra));
}

// ---- compress --------------------------------------------------------------

template <Word W>
TrialReport run_compress(const Profile& prof, const RunOptions& o) {
  const RingParams& rp = prof.ring;
  const SeedStream root(o.seed, "sote/compress");
  const Channel ch(o.messages_dir, "compress");
  const unsigned w = rp.w;
  const auto ck = ch.send(rp, "ck", compression::setup(rp, root.derive("setup")));
  SeedStream as = root.derive("A");
  const std::size_t m = compression::input_length(ck);
  const Matrix<W> a = sample_uniform_matrix<W>(as, rp.k, compression::key_width(ck), w);
  const Matrix<W> a_exp = compression::expanded_matrix(ck, a);
  const u128 bound = compression::error_bound(rp);
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream xs = ts.derive("x"), ks = ts.derive("keys");
    const Vector<W> x = sample_binary_vector<W>(xs, m, w);
    std::vector<Vector<W>> s;
    for (int j = 0; j < 5; ++j) s.push_back(sample_uniform_zq<W>(ks, rp.k, w));
    const auto c01 = ch.send(rp, i, "c01", compression::compress(ck, a, x, s[0], s[1], s[3], ts.derive("c01")));
    const auto c12 = ch.send(rp, i, "c12", compression::compress(ck, a, x, s[1], s[2], s[4], ts.derive("c12")));
    const LatticeEncoding<W> e01 = compression::expand_with(ck, a_exp, c01, x, 0, 1);
    const LatticeEncoding<W> e12 = compression::expand_with(ck, a_exp, c12, x, 1, 2);
    TrialResult r;
    r.bound = bound;
    r.error = std::max(static_cast<u128>(inf_norm(lenc::residual(e01, s[0], s[1], x))),
                       static_cast<u128>(inf_norm(lenc::residual(e12, s[1], s[2], x))));
    check_bound(r, i);
    // Expanded encodings must combine like fresh ones.
    const std::size_t b0 = 0, b1 = std::min<std::size_t>(1, m - 1);
    const W x0 = x[b0], x1 = x[b1];
    const auto sum = lenc::hom_add(lenc::block(e01, b0), lenc::block(e01, b1));
    const auto prod = lenc::hom_mul(lenc::block(e01, b0), lenc::block(e12, b1),
                                    static_cast<std::int64_t>(x0));
    Vector<W> t_sum(w, 1), t_prod(w, 1);
    t_sum.set(0, x0 + x1);
    t_prod.set(0, x0 * x1);
    const bool add_ok = static_cast<u128>(inf_norm(lenc::residual(sum, s[0], s[1], t_sum))) <= sum.noise;
    const bool mul_ok = static_cast<u128>(inf_norm(lenc::residual(prod, s[0], s[2], t_prod))) <= prod.noise;
    r.checks = 2;
    r.checks_ok = add_ok + mul_ok;
    if (!add_ok) r.failures.push_back(trial_tag(i) + "hom_add on expanded encodings exceeds its ledger");
    if (!mul_ok) r.failures.push_back(trial_tag(i) + "hom_mul on expanded encodings exceeds its ledger");
    r.exact = r.error == 0;
    if (rp.B == 0 && !r.exact) r.failures.push_back(trial_tag(i) + "noiseless run is not exact");
    return r;
  };
  return aggregate("compress", prof, o, false, trial);
}

// ---- rtdh ------------------------------------------------------------------

template <Word W>
TrialReport run_rtdh(const Profile& prof, const RunOptions& o) {
  const RtdhParams tp = prof.rtdh_params();
  const RingParams& rp = tp.ring;
  const SeedStream root(o.seed, "sote/rtdh");
  const Channel ch(o.messages_dir, "rtdh");
  const auto hk = ch.send(rp, "hk", rtdh::setup<W>(tp, root.derive("setup")));
  if (o.program) rtdh::check_program(hk, *o.program);
  auto trial = [&](std::size_t i) {
    const SeedStream ts = root.derive("trial", i);
    SeedStream ps = ts.derive("program"), xs = ts.derive("x"), as = ts.derive("a");
    const RmsProgram f = o.program ? *o.program
                                   : rms::random_layered(ps, prof.inputs, tp.depth, tp.bound_t,
                                                         std::max<std::size_t>(2, tp.ell_f), tp.ell_f);
    const std::vector<std::int64_t> x = sample_bits(xs, f.num_inputs);
    const Vector<W> a = sample_uniform_zq<W>(as, tp.t_a * rp.k, rp.p_log);
    auto [dig, st] = rtdh::hash(hk, f);
    auto [ek, td] = rtdh::gen(hk, x, a, ts.derive("gen"));
    const auto dig_rx = ch.send(rp, i, "digest", dig);
    const auto ek_rx = ch.send(rp, i, "ek", ek);
    const RtdhRaw<W> raw = rtdh::hasher_raw(hk, ek_rx, st, x, f);
    const Vector<W> du = rtdh::decoder_raw(hk, dig_rx, td);
    const Vector<W> y1 = rtdh::finalize_hasher(tp, raw.u, ek_rx.seed);
    const Vector<W> y2 = rtdh::finalize_decoder(tp, du, td.seed);
    const Vector<W> truth = rtdh::plain_output(tp, rms::eval_plain(f, x), a);
    TrialResult r;
    r.bound = raw.ledger;
    r.error = diff_norm(raw.u - du, scale_to_q(truth, rp));
    check_bound(r, i);
    const Vector<W> sum = y1 + y2;
    r.wrong_entries = count_mismatches(sum, truth);
    r.total_entries = sum.size();
    r.exact = r.wrong_entries == 0;
    if (!r.exact) {
      r.failures.push_back(trial_tag(i) + std::to_string(r.wrong_entries) + " of " +
                           std::to_string(r.total_entries) + " output entries wrong");
    }
    if (i == 0) {
      r.digest_bytes = wire::encode(rp, dig).size();
      r.key_bytes = wire::encode(rp, ek).size();
    }
    return r;
  };
  nlohmann::json extra;
  extra["parameter_bound"] = report::bound_json(rtdh::error_bound(tp));
  extra["max_inputs"] = rtdh::max_inputs(hk);
  return aggregate("rtdh", prof, o, true, trial, std::move(extra));
}

// ---- alwe ------------------------------------------------------------------

inline AlweParams alwe_params(const Profile& prof) {
  return AlweParams{prof.ring.k, prof.ring.w, prof.ring.B};
}

template <Word W>
TrialReport run_alwe(const Profile& prof, const RunOptions& o) {
  const AlweParams ap = alwe_params(prof);
  const RingParams& rp = prof.ring;
  const SeedStream root(o.seed, "sote/alwe");
  const Channel ch(o.messages_dir, "alwe");
  const u128 bound = alwe::alwe_noise_bound(ap);
  const u128 quarter = u128{1} << (ap.w - 2);
  auto trial = [&](std::size_t g) {
    const auto relay = [&](unsigned plane, Vector<W>& b) {
      b = ch.send(rp, g, "answer" + std::to_string(plane), b);
    };
    const alwe::AlweGame game = alwe::play_alwe_game<W>(ap, root.derive("game", g), relay);
    TrialResult r;
    r.exact = game.success;
    r.error = game.max_plane_noise;
    r.bound = bound;
    r.counts = game.plane_flips;
    check_bound(r, g);
    // Decoding is guaranteed only while every plane stays below q/4.
    if (!game.success && game.max_plane_noise < quarter) {
      r.failures.push_back(trial_tag(g) + "secret not recovered although noise stayed below q/4");
    }
    return r;
  };
  nlohmann::json extra;
  extra["noise_bound"] = report::bound_json(bound);
  extra["decoding_threshold"] = report::bound_json(quarter);
  TrialReport rep = aggregate("alwe", prof, o, false, trial, std::move(extra));
  rep.extra["plane_flips"] = rep.extra.value("counts", nlohmann::json::array());
  rep.extra.erase("counts");
  return rep;
}

template <Word W>
TrialReport run_typed(Protocol proto, const Profile& prof, const RunOptions& o) {
  switch (proto) {
    case Protocol::kOteHalf: return run_ote_half<W>(prof, o);
    case Protocol::kOte: return run_ote<W>(prof, o);
    case Protocol::kMole: return run_mole<W>(prof, o);
    case Protocol::kLenc: return run_lenc<W>(prof, o);
    case Protocol::kCompress: return run_compress<W>(prof, o);
    case Protocol::kRtdh: return run_rtdh<W>(prof, o);
    case Protocol::kAlwe: return run_alwe<W>(prof, o);
  }
  throw Error(ErrorCode::kParameter, "unknown protocol");
}

}  // namespace runners

// Runs `o.trials` trials of `proto` under `prof`; the word type follows w.
inline TrialReport run_protocol(Protocol proto, const Profile& prof, RunOptions o) {
  o.exact = effective_exact(proto, o.exact);
  const auto start = std::chrono::steady_clock::now();
  TrialReport rep = prof.ring.w <= 64 ? runners::run_typed<std::uint64_t>(proto, prof, o)
                                      : runners::run_typed<u128>(proto, prof, o);
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace sote

#endif  // SOTE_RUNNERS_HPP_
