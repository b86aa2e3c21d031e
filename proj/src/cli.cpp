// Copyright 2026 The dioexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dioexp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dioexp/best_approx.hpp"
#include "dioexp/construction.hpp"
#include "dioexp/run_io.hpp"
#include "dioexp/target.hpp"
#include "dioexp/verify.hpp"

namespace dioexp::cli {
namespace {

using Json = nlohmann::json;

void CheckWritable(const std::string& path, const char* what) {
  if (path.empty() || path == "-") return;
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (parent.empty()) parent = ".";
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec)) {
    throw Error(ErrorCode::kBadInput,
                std::string(what) + " path '" + path + "': directory does not exist");
  }
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kBadInput, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::kBadInput, "write to '" + path + "' failed");
}

Vec3 ParseVec3(const std::string& text) {
  std::vector<Int> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(ParseInteger(part));
  if (c.size() != 3) throw Error(ErrorCode::kBadInput, "expected x,y,z in '" + text + "'");
  return Vec3{c[0], c[1], c[2]};
}

std::pair<Vec3, Vec3> ParseSeed(const std::string& text) {
  std::size_t semi = text.find(';');
  if (semi == std::string::npos) {
    throw Error(ErrorCode::kBadInput, "seed must be 'line;point', got '" + text + "'");
  }
  return {ParseVec3(text.substr(0, semi)), ParseVec3(text.substr(semi + 1))};
}

// Values from the config file replace those given on the command line.
// Keys are the long flag names; values may be strings or numbers.
void ApplyConfig(const std::string& path, CLI::App& cmd) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kBadInput, "cannot read config '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kBadInput, "config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kBadInput, "config must be a JSON object");
  for (auto& [key, value] : doc.items()) {
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw Error(ErrorCode::kBadInput, "config key '" + key + "' is not a flag of '" +
                                            cmd.get_name() + "'");
    }
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->clear();
    opt->add_result(text);
    opt->run_callback();
  }
}

struct ConstructArgs {
  std::string mode = "finite";
  std::string w, tau0, tau1, sigma;
  std::string v_prime = "inf";
  std::string h1;
  double digit_budget = 2.0e6;
};

int CmdConstruct(const ConstructArgs& a, const CliConfig& cfg, std::ostream& out) {
  ConstructionParams params;
  params.mode = ParseMode(a.mode);
  auto need = [&](const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorCode::kBadInput, std::string("missing --") + flag);
    return ParseRational(v);
  };
  if (params.mode == Mode::kFinite) {
    params.w = need(a.w, "w");
    params.tau0 = need(a.tau0, "tau0");
    params.tau1 = need(a.tau1, "tau1");
    params.sigma = need(a.sigma, "sigma");
  } else if (params.mode == Mode::kVInfinite) {
    params.w = need(a.w, "w");
    params.v_prime = ExtendedReal::Parse(a.v_prime);
  }
  Schedule schedule = BuildSchedule(params);
  RunOptions options;
  options.digit_budget = a.digit_budget;
  if (cfg.seed) options.seed = ParseSeed(*cfg.seed);
  Int h1 = a.h1.empty() ? MinimalInitialHeight(schedule, cfg.depth) : ParseInteger(a.h1);
  ConstructionRun run = RunConstruction(params, h1, cfg.depth, options);

  std::string text = RunToJson(run);
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
  } else {
    WriteText(cfg.out, text);
  }
  int hard = 0, soft = 0, soft_failing = 0;
  for (const Certificate& c : run.certificates) {
    if (c.hard) {
      ++hard;
    } else {
      ++soft;
      if (!c.holds) ++soft_failing;
    }
  }
  out << "mode " << ModeName(params.mode) << ", h1 = " << run.h1.get_str() << ", depth "
      << run.depth << "\n";
  out << "predicted Ω = " << run.predicted.ToString() << "\n";
  out << "certificates: " << hard << " hard passed, " << soft << " soft (" << soft_failing
      << " outside bound)\n";
  if (!cfg.out.empty() && cfg.out != "-") out << "wrote " << cfg.out << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string target;
  std::string hmax = "1000";
  std::string which = "L";
  int workers = 1;
};

int CmdAnalyze(const AnalyzeArgs& a, const CliConfig& cfg, std::ostream& out,
               std::ostream& err) {
  TargetPoint target = ParseTarget(a.target, cfg.digits);
  Int h_max = ParseInteger(a.hmax);
  if (h_max < 2) throw Error(ErrorCode::kBadInput, "--hmax must be at least 2");
  if (a.workers < 1) throw Error(ErrorCode::kBadInput, "--workers must be positive");
  Which which = ParseWhich(a.which);
  ExponentTrace trace;
  try {
    trace = BruteForceMinima(target, h_max, which, a.workers);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kTargetTooCoarse) {
      throw Error(e.code(), std::string(e.what()) +
                                "; the target ball is too wide to separate the first minima "
                                "(raise --digits or use a deeper target)");
    }
    if (e.code() == ErrorCode::kRationalDependence) {
      throw Error(e.code(), std::string(e.what()) +
                                "; 1, alpha, beta are linearly dependent over Q, so the "
                                "minimal points are not defined");
    }
    throw;
  }
  ExponentSummary summary = Summarize(trace, cfg.window);
  std::string csv = TraceCsv(trace);
  std::ostream& info = cfg.out.empty() || cfg.out == "-" ? err : out;
  if (cfg.out.empty() || cfg.out == "-") {
    out << csv;
  } else {
    WriteText(cfg.out, csv);
  }
  if (!cfg.plot.empty()) {
    WriteText(cfg.plot, PlotCsv(trace));
    WriteText(cfg.plot + ".json", PlotSidecarJson(trace, target, summary));
  }
  int certified = 0;
  for (const ApproxRecord& r : trace.records) certified += r.certified ? 1 : 0;
  info << "target " << target.label << ", seminorm " << WhichName(which) << ", H <= "
       << h_max.get_str() << "\n";
  info << "records " << trace.records.size() << " (" << certified << " certified)\n";
  info << SummaryLine(summary, which) << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string run;
  std::string quad;
  int level = 0;
  std::string foreign_hmax = "1000";
  std::string tolerance = "15/100";
  int workers = 1;
};

int CmdVerify(const VerifyArgs& a, const CliConfig& cfg, std::ostream& out) {
  if (a.run.empty() == a.quad.empty()) {
    throw Error(ErrorCode::kBadInput, "verify needs exactly one of --run or --quad");
  }
  VerifierReport report;
  if (!a.run.empty()) {
    ConstructionRun run = ReadRunFile(a.run);
    CertifyOptions options;
    options.level = a.level;
    options.foreign_hmax = ParseInteger(a.foreign_hmax);
    options.tolerance = ParseRational(a.tolerance);
    options.workers = a.workers;
    report = CertifyRun(run, options);
  } else {
    report = VerifyQuadruple(ExponentQuadruple::Parse(a.quad));
  }
  std::string json = ReportJson(report);
  if (!cfg.out.empty() && cfg.out != "-") WriteText(cfg.out, json);
  int failing = 0;
  for (const CheckResult& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": residual " << c.residual.ToString()
        << " " << c.relation << "\n";
    failing += c.pass ? 0 : 1;
  }
  for (const std::string& note : report.notes) out << "note: " << note << "\n";
  if (cfg.out.empty() || cfg.out == "-") out << json;
  out << (failing == 0 ? "all checks pass" : std::to_string(failing) + " checks fail") << "\n";
  return report.AllPass() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kResourceGuard: return kExitResourceGuard;
    case ErrorCode::kCertificateViolation: return kExitCheckFailure;
    default: return kExitBadInput;
  }
}

void CliConfig::Validate() const {
  if (digits <= 0) throw Error(ErrorCode::kBadInput, "--digits must be positive");
  if (depth <= 0) throw Error(ErrorCode::kBadInput, "--depth must be positive");
  if (window <= 0) throw Error(ErrorCode::kBadInput, "--window must be positive");
  CheckWritable(out, "output");
  CheckWritable(plot, "plot");
}

int DefaultDigits() {
  const char* env = std::getenv("DIOEXP_DIGITS");
  if (env == nullptr || *env == '\0') return 60;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0 || v > 100000) {
    throw Error(ErrorCode::kBadInput, "DIOEXP_DIGITS must be a positive integer");
  }
  return static_cast<int>(v);
}

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponents of Diophantine approximation in dimension two", "dioexp"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string config_path;
  int digits_flag = 0;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON file whose keys override flags");
    cmd->add_option("--digits", digits_flag, "decimal precision (default $DIOEXP_DIGITS or 60)");
    cmd->add_option("--out", cfg.out, "output file ('-' for stdout)");
  };

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "build a run and write its run file");
  common(construct);
  construct->add_option("--mode", ca.mode, "finite, v-infinite, or all-infinite");
  construct->add_option("--w", ca.w, "uniform exponent w");
  construct->add_option("--tau0", ca.tau0);
  construct->add_option("--tau1", ca.tau1);
  construct->add_option("--sigma", ca.sigma);
  construct->add_option("--vprime", ca.v_prime, "v' for v-infinite mode (rational or inf)");
  construct->add_option("--h1", ca.h1, "initial height (default: smallest valid)");
  construct->add_option("--depth", cfg.depth, "number of levels");
  construct->add_option("--seed", cfg.seed, "seed line and point as 'x,y,z;x,y,z'");
  construct->add_option("--digit-budget", ca.digit_budget, "abort above this many digits");

  AnalyzeArgs aa;
  CLI::App* analyze = app.add_subcommand("analyze", "trace minimal points of a target");
  common(analyze);
  analyze->add_option("--target", aa.target, "sqrt:p,q | fib:depth[,digits] | lit:a,b[,r] | "
                                             "run:file[#n,k]");
  analyze->add_option("--hmax", aa.hmax, "largest norm scanned");
  analyze->add_option("--which", aa.which, "L (linear form) or M (simultaneous)");
  analyze->add_option("--plot", cfg.plot, "plot CSV path; a .json sidecar is written next to it");
  analyze->add_option("--window", cfg.window, "records used by the summary");
  analyze->add_option("--workers", aa.workers, "scan threads");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "check a run file or an exponent quadruple");
  common(verify);
  verify->add_option("--run", va.run, "run file");
  verify->add_option("--quad", va.quad, "quadruple 'v,v',w,w'' (rationals or inf)");
  verify->add_option("--level", va.level, "level for empirical exponents (0 = deepest)");
  verify->add_option("--foreign-hmax", va.foreign_hmax, "norm bound of the foreign-point scan");
  verify->add_option("--tolerance", va.tolerance, "relative tolerance on measured exponents");
  verify->add_option("--workers", va.workers, "scan threads");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("dioexp");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kExitBadInput;
    }
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) ApplyConfig(config_path, *cmd);
    cfg.digits = digits_flag != 0 ? digits_flag : DefaultDigits();
    cfg.Validate();
    if (cmd == construct) return CmdConstruct(ca, cfg, out);
    if (cmd == analyze) return CmdAnalyze(aa, cfg, out, err);
    return CmdVerify(va, cfg, out);
  } catch (const InvalidParamsError& e) {
    err << "error: invalid parameters: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace dioexp::cli
