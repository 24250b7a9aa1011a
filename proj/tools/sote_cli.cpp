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

// Command-line front end. Exit status: 0 all assertions passed, 1 assertion
// failure, 2 parameters rejected, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sote/runners.hpp"

namespace {

using namespace sote;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitRejected = 2;
constexpr int kExitIo = 3;

constexpr const char* kZeroSeed =
    "0000000000000000000000000000000000000000000000000000000000000000";

struct CommonFlags {
  std::string profile = "toy8";
  std::string config;
  std::size_t trials = 10;
  std::string seed = kZeroSeed;
  std::string report;
  std::string messages_dir;
  std::string program;
  bool exact = false;
  bool allow_invalid = false;
  bool quiet = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  require(!in.bad(), ErrorCode::kIo, "reading " + path + " failed");
  return s.str();
}

Profile resolve_profile(const CommonFlags& f) {
  if (!f.config.empty()) return config::parse(read_text(f.config));
  return profiles::get(f.profile);
}

void add_common(CLI::App* cmd, CommonFlags& f, bool with_program) {
  cmd->add_option("--profile", f.profile, "Shipped profile: toy8, desk40, mid64, desk96, lite64, alwe32")
      ->capture_default_str();
  cmd->add_option("--config", f.config, "key = value profile file (overrides --profile)");
  cmd->add_option("--trials", f.trials, "Number of trials")->capture_default_str()->check(
      CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  cmd->add_option("--seed", f.seed, "Master seed, 64 hex digits")->capture_default_str();
  cmd->add_option("--report", f.report, "Write the JSON report here instead of stdout");
  cmd->add_option("--messages-dir", f.messages_dir,
                  "Route every message through wire-format files in this directory");
  cmd->add_flag("--exact", f.exact, "Use the exact Z_p wrapper");
  cmd->add_flag("--allow-invalid", f.allow_invalid,
                "Run even if the validator rejects the parameters (recorded in the report)");
  cmd->add_flag("--quiet", f.quiet, "No summary line on stderr");
  if (with_program) cmd->add_option("--program", f.program, "RMS program file");
}

void print_violations(const std::vector<Violation>& v) {
  for (const auto& x : v) std::cerr << "  violated: " << x.rule << " (" << x.detail << ")\n";
}

int run(Protocol proto, const CommonFlags& f) {
  const Profile prof = resolve_profile(f);
  RunOptions o;
  o.trials = f.trials;
  o.seed = Seed::from_hex(f.seed);
  o.exact = effective_exact(proto, f.exact);
  o.threads = default_thread_count();
  if (!f.messages_dir.empty()) o.messages_dir = f.messages_dir;
  if (!f.program.empty()) o.program = rms::parse(read_text(f.program));
  const RunTarget target{proto, o.exact};
  o.violations = validator::validate(prof, target);
  if (!o.violations.empty()) {
    std::cerr << "sote: parameters rejected for " << target_name(target) << " under profile "
              << prof.name << "\n";
    print_violations(o.violations);
    if (!f.allow_invalid) return kExitRejected;
    o.validator_override = true;
    std::cerr << "sote: continuing because --allow-invalid was given\n";
  }
  const TrialReport rep = run_protocol(proto, prof, o);
  if (f.report.empty()) {
    std::cout << report::to_text(rep);
  } else {
    report::write(f.report, rep);
  }
  if (!f.quiet) {
    std::cerr << protocol_name(proto) << (rep.exact ? " exact" : "") << " " << prof.name << ": "
              << rep.exact_success << "/" << rep.trials << " exact, max error "
              << to_decimal(rep.max_error) << " <= bound " << to_decimal(rep.bound) << ": "
              << (rep.within_bound() ? "yes" : "NO") << ", " << rep.failed_trials
              << " failed trials, " << rep.wall_time_s << " s\n";
    for (const auto& msg : rep.failures) std::cerr << "  " << msg << "\n";
  }
  return rep.assertions_passed() ? kExitOk : kExitAssertion;
}

int validate_cmd(const CommonFlags& f, const std::string& protocol) {
  const Profile prof = resolve_profile(f);
  std::vector<RunTarget> targets = prof.protocols;
  if (!protocol.empty()) targets = {RunTarget{parse_protocol(protocol), f.exact}};
  bool ok = true;
  for (const auto& t : targets) {
    const auto v = validator::validate(prof, t);
    std::cout << prof.name << " " << target_name(t) << ": " << (v.empty() ? "ok" : "rejected")
              << "\n";
    for (const auto& x : v) std::cout << "  violated: " << x.rule << " (" << x.detail << ")\n";
    ok = ok && v.empty();
  }
  return ok ? kExitOk : kExitRejected;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kParameter:
    case ErrorCode::kCapacity:
    case ErrorCode::kProgram: return kExitRejected;
    default: return kExitAssertion;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SOTE protocol harness"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::string validate_protocol;
  int status = kExitOk;

  struct Entry {
    const char* group;
    const char* verb;
    Protocol proto;
    const char* help;
  };
  const Entry entries[] = {
      {"ote-half", "run", Protocol::kOteHalf, "Half oblivious tensor evaluation"},
      {"ote", "run", Protocol::kOte, "Bootstrapped oblivious tensor evaluation"},
      {"mole", "run", Protocol::kMole, "Oblivious matrix-vector evaluation"},
      {"lenc", "eval", Protocol::kLenc, "Lattice encodings under an RMS program"},
      {"compress", "demo", Protocol::kCompress, "Encoding compression and expansion"},
      {"rtdh", "run", Protocol::kRtdh, "Reverse trapdoor hash"},
      {"attack", "alwe", Protocol::kAlwe, "Adaptive LWE attack"},
  };
  for (const auto& e : entries) {
    CLI::App* group = app.add_subcommand(e.group, e.help);
    group->require_subcommand(1);
    CLI::App* verb = group->add_subcommand(e.verb, e.help);
    const bool programs = e.proto == Protocol::kLenc || e.proto == Protocol::kRtdh;
    add_common(verb, flags, programs);
    const Protocol proto = e.proto;
    verb->callback([&flags, &status, proto] { status = run(proto, flags); });
  }
  {
    CLI::App* prof = app.add_subcommand("profile", "Inspect and validate parameter profiles");
    prof->require_subcommand(1);
    CLI::App* show = prof->add_subcommand("show", "Print a profile in config-file form");
    show->add_option("--profile", flags.profile, "Shipped profile")->capture_default_str();
    show->add_option("--config", flags.config, "key = value profile file");
    show->callback([&] { std::cout << config::to_text(resolve_profile(flags)); });
    CLI::App* list = prof->add_subcommand("list", "List shipped profiles");
    list->callback([] {
      for (const auto& p : profiles::shipped()) std::cout << p.name << "\n";
    });
    CLI::App* val = prof->add_subcommand("validate", "Check a profile against the validator");
    val->add_option("--profile", flags.profile, "Shipped profile")->capture_default_str();
    val->add_option("--config", flags.config, "key = value profile file");
    val->add_option("--protocol", validate_protocol, "Check one protocol instead of all targets");
    val->add_flag("--exact", flags.exact, "With --protocol: the exact variant");
    val->callback([&] { status = validate_cmd(flags, validate_protocol); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitRejected;
  } catch (const Error& e) {
    std::cerr << "sote: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "sote: out of memory\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "sote: " << e.what() << "\n";
    return kExitAssertion;
  }
  return status;
}
