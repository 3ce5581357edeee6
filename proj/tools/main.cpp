// swipt command-line front end. Links only the public C API (plus the oracle
// suite for `verify`).

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "oracle/suite.hpp"
#include "swipt/swipt.h"

namespace fs = std::filesystem;
using namespace swipt_cli;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kInfeasible = 3 };

struct ApiError : std::runtime_error {
  ApiError(swipt_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  swipt_status status;
};

void check(swipt_status s, const char* call) {
  if (s != SWIPT_OK) throw ApiError(s, std::string(call) + ": " + swipt_last_error());
}

struct EnsembleDeleter {
  void operator()(swipt_ensemble* e) const { swipt_ensemble_free(e); }
};
struct ReportDeleter {
  void operator()(swipt_report* r) const { swipt_report_free(r); }
};
struct BoundaryDeleter {
  void operator()(swipt_boundary* b) const { swipt_boundary_free(b); }
};
using EnsemblePtr = std::unique_ptr<swipt_ensemble, EnsembleDeleter>;
using ReportPtr = std::unique_ptr<swipt_report, ReportDeleter>;
using BoundaryPtr = std::unique_ptr<swipt_boundary, BoundaryDeleter>;

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> scheme;
  std::optional<std::string> kind;
  std::optional<std::string> qbar;
  std::optional<double> r0;
  std::optional<std::string> p2_sub;
  std::optional<int> points;
  std::optional<std::size_t> size;
  std::string suite = "all";
  int trials = 1000;
  std::uint64_t verify_seed = 20240601;
};

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  std::vector<std::string> errs;
  if (f.seed) c.seed = *f.seed;
  if (f.threads) {
    if (*f.threads < 1) errs.push_back("--threads: must be at least 1");
    c.solver.threads = *f.threads;
  }
  if (f.scheme) {
    swipt_scheme tmp;
    if (swipt_parse_scheme(f.scheme->c_str(), &tmp) != SWIPT_OK) errs.push_back(std::string("--") + swipt_last_error());
    c.scheme = *f.scheme;
    c.sweep_schemes = {*f.scheme};
  }
  if (f.kind) {
    try {
      c.kind = parse_kind(*f.kind);
    } catch (const std::exception& e) {
      errs.push_back(std::string("--kind: ") + e.what());
    }
  }
  if (f.qbar) {
    try {
      c.q_bar = parse_power(*f.qbar, true);
      if (c.q_bar < 0) errs.push_back("--qbar: must be non-negative");
    } catch (const std::exception& e) {
      errs.push_back(std::string("--qbar: ") + e.what());
    }
  }
  if (f.r0) {
    if (*f.r0 < 0) errs.push_back("--r0: must be non-negative");
    c.system.r0 = *f.r0;
  }
  if (f.p2_sub) {
    if (*f.p2_sub == "envelope") c.solver.p2_two_stage = 0;
    else if (*f.p2_sub == "two-stage") c.solver.p2_two_stage = 1;
    else errs.push_back("--p2-sub: expected 'envelope' or 'two-stage'");
  }
  if (f.points) {
    if (*f.points < 2) errs.push_back("--points: must be at least 2");
    c.sweep_points = *f.points;
  }
  if (f.size) {
    if (*f.size < 1) errs.push_back("--size: must be at least 1");
    c.ensemble_size = *f.size;
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return c;
}

std::string comment_block(const RunConfig& c, const std::string& command) {
  std::istringstream in(describe(c));
  std::string out = "# command = " + command + "\n", line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ApiError(SWIPT_IO, "cannot open '" + path.string() + "' for writing");
  return os;
}

EnsemblePtr make_ensemble(const RunConfig& c) {
  swipt_ensemble* e = nullptr;
  if (!c.ensemble_file.empty()) check(swipt_ensemble_load(c.ensemble_file.c_str(), &e), "load ensemble");
  else check(swipt_ensemble_generate(&c.geometry, c.ensemble_size, c.seed, &e), "generate ensemble");
  return EnsemblePtr(e);
}

swipt_scheme scheme_of(const std::string& name) {
  swipt_scheme s;
  check(swipt_parse_scheme(name.c_str(), &s), "scheme");
  return s;
}

int report_infeasible(const swipt_ensemble* ens, const RunConfig& c, double q_bar) {
  double q_max = 0.0;
  int feasible = 0;
  check(swipt_check_feasibility(ens, &c.system, q_bar, &q_max, &feasible), "check_feasibility");
  std::fprintf(stderr, "error: harvested-power target %s W is infeasible; the largest feasible target is %s W\n",
               fmt17(q_bar).c_str(), fmt17(q_max).c_str());
  return kInfeasible;
}

int cmd_solve(const RunConfig& c, const fs::path& out) {
  auto ens = make_ensemble(c);
  swipt_report* raw = nullptr;
  const swipt_status st = swipt_solve(ens.get(), &c.system, c.kind, scheme_of(c.scheme), c.q_bar, &c.solver, &raw);
  if (st == SWIPT_INFEASIBLE) return report_infeasible(ens.get(), c, c.q_bar);
  check(st, "solve");
  ReportPtr rep(raw);

  swipt_report_summary s;
  check(swipt_report_get_summary(rep.get(), &s), "summary");
  const std::string header = comment_block(c, "solve");

  {
    auto os = open_out(out / "summary.csv");
    os << header
       << "scheme,kind,q_bar,objective,avg_power_w,harvested_w,iterations,dual_value,dual_gap_estimate,lambda,mu,"
          "feasible\n"
       << c.scheme << ',' << kind_name(c.kind) << ',' << fmt17(c.q_bar) << ',' << fmt17(s.objective) << ','
       << fmt17(s.avg_power) << ',' << fmt17(s.avg_harvest) << ',' << s.iterations << ',' << fmt17(s.dual_value)
       << ',' << fmt17(s.dual_gap_estimate) << ',' << fmt17(s.dual.lambda) << ',' << fmt17(s.dual.mu) << ','
       << s.feasible << '\n';
  }
  {
    std::vector<swipt_decision> d(s.size);
    check(swipt_report_get_decisions(rep.get(), d.data(), d.size()), "decisions");
    auto os = open_out(out / "decisions.csv");
    os << header << "state,h,g,p,alpha\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
      swipt_state x;
      check(swipt_ensemble_get(ens.get(), i, &x), "state");
      os << i << ',' << fmt17(x.h) << ',' << fmt17(x.g) << ',' << fmt17(d[i].p) << ',' << fmt17(d[i].alpha) << '\n';
    }
  }
  if (const size_t n = swipt_report_trace_size(rep.get()); n > 0) {
    auto os = open_out(out / "trace.csv");
    os << header << "iter,lambda,mu,dual_value,subgrad_p,subgrad_q\n";
    for (size_t i = 0; i < n; ++i) {
      swipt_trace_row r;
      check(swipt_report_get_trace_row(rep.get(), i, &r), "trace");
      os << r.iter << ',' << fmt17(r.lambda) << ',' << fmt17(r.mu) << ',' << fmt17(r.dual_value) << ','
         << fmt17(r.subgrad_p) << ',' << fmt17(r.subgrad_q) << '\n';
    }
  }
  if (const size_t n = swipt_report_rounds_size(rep.get()); n > 0) {
    auto os = open_out(out / "rounds.csv");
    os << header << "round,objective,avg_power,avg_harvest\n";
    for (size_t i = 0; i < n; ++i) {
      swipt_round_row r;
      check(swipt_report_get_round(rep.get(), i, &r), "rounds");
      os << r.round << ',' << fmt17(r.objective) << ',' << fmt17(r.avg_power) << ',' << fmt17(r.avg_harvest) << '\n';
    }
  }

  std::printf("%s %s: objective %.6g (%s), E[p] %.6g W, E[Q] %.6g W, lambda %.6g, mu %.6g, %d iterations, gap %.3g%s\n",
              c.scheme.c_str(), kind_name(c.kind).c_str(), s.objective,
              c.kind == SWIPT_OUTAGE ? "outage probability" : "bps/Hz", s.avg_power, s.avg_harvest, s.dual.lambda,
              s.dual.mu, s.iterations, s.dual_gap_estimate, s.feasible ? "" : " [constraints violated]");
  return s.feasible ? kOk : kFailed;
}

int cmd_region(const RunConfig& c, const fs::path& out) {
  auto ens = make_ensemble(c);
  std::ostringstream body;
  for (const auto& name : c.sweep_schemes) {
    swipt_boundary* raw = nullptr;
    check(swipt_trace_boundary(ens.get(), &c.system, c.kind, scheme_of(name), c.sweep_points, c.q_max_fraction,
                               &c.solver, &raw),
          "trace_boundary");
    BoundaryPtr b(raw);
    for (size_t i = 0; i < swipt_boundary_size(b.get()); ++i) {
      swipt_boundary_row r;
      check(swipt_boundary_get(b.get(), i, &r), "boundary");
      body << name << ',' << kind_name(c.kind) << ',' << fmt17(r.q_bar) << ',' << fmt17(r.objective) << ','
           << fmt17(r.harvested) << ',' << fmt17(r.avg_power) << ',' << r.iterations << '\n';
      std::printf("%-10s q_bar %.4e W  %s %.6f  E[Q] %.4e W  iters %d\n", name.c_str(), r.q_bar,
                  c.kind == SWIPT_OUTAGE ? "non-outage" : "esc", r.objective, r.harvested, r.iterations);
    }
  }
  auto os = open_out(out / "boundary.csv");
  os << comment_block(c, "region") << "scheme,kind,q_bar,objective,harvested_w,avg_power_w,iterations\n"
     << body.str();
  return kOk;
}

int cmd_ensemble(const RunConfig& c, const fs::path& out) {
  swipt_ensemble* raw = nullptr;
  check(swipt_ensemble_generate(&c.geometry, c.ensemble_size, c.seed, &raw), "generate ensemble");
  EnsemblePtr ens(raw);
  std::string comment = "command = ensemble\n" + describe(c);
  const fs::path path = out / "ensemble.csv";
  check(swipt_ensemble_save(ens.get(), path.string().c_str(), comment.c_str()), "save ensemble");
  std::printf("wrote %zu states to %s\n", swipt_ensemble_size(ens.get()), path.string().c_str());
  return kOk;
}

int cmd_verify(const Flags& f) {
  bool ok = true;
  if (f.suite == "perstate" || f.suite == "all") {
    swipt::oracle::PerStateSuiteOptions o;
    o.trials = f.trials;
    o.seed = f.verify_seed;
    const auto r = swipt::oracle::run_perstate_suite(o);
    std::printf(
        "%s perstate: %d trials, failures L1 %d, L2 %d, split %d, inverse %d (%d checked); worst L1 %.3g, L2 %.3g, "
        "split %.3g, inverse %.3g; %.1f s\n",
        r.passed() ? "PASS" : "FAIL", r.trials, r.fail_l1, r.fail_l2, r.fail_split, r.fail_inverse,
        r.inverse_checked, r.worst_l1, r.worst_l2, r.worst_split, r.worst_inverse, r.seconds);
    ok = ok && r.passed();
  }
  if (f.suite == "rate" || f.suite == "all") {
    const auto r = swipt::oracle::run_rate_suite(f.trials * 10, f.verify_seed);
    std::printf("%s rate: %d cases, %d failures, worst relative error %.3g; %.1f s\n", r.passed() ? "PASS" : "FAIL",
                r.cases, r.failures, r.worst_rel, r.seconds);
    ok = ok && r.passed();
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure SWIPT power allocation: outage and ergodic-secrecy trade-offs"};
  app.require_subcommand(1);
  Flags f;

  const auto add_common = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--seed", f.seed, "ensemble seed");
    sub->add_option("--threads", f.threads, "worker threads");
    sub->add_option("--size", f.size, "number of fading states to generate");
  };
  const auto add_solver = [&f](CLI::App* sub) {
    sub->add_option("--scheme", f.scheme, "optimal | alt | fixed:<alpha> | noan | nocancel");
    sub->add_option("--kind", f.kind, "outage | esc");
    sub->add_option("--r0", f.r0, "target secrecy rate [bps/Hz]");
    sub->add_option("--p2-sub", f.p2_sub, "ESC subproblem solver: envelope | two-stage");
  };

  auto* solve = app.add_subcommand("solve", "solve one scenario with one scheme");
  add_common(solve);
  add_solver(solve);
  solve->add_option("--qbar", f.qbar, "harvested-power target, watts or '<x> uW' etc.");

  auto* region = app.add_subcommand("region", "trace a trade-off boundary");
  add_common(region);
  add_solver(region);
  region->add_option("--points", f.points, "number of harvested-power grid points");

  auto* ensemble = app.add_subcommand("ensemble", "generate and save a fading ensemble");
  add_common(ensemble);

  auto* verify = app.add_subcommand("verify", "cross-check per-state solvers against brute-force oracles");
  verify->add_option("--suite", f.suite, "perstate | rate | all")
      ->check(CLI::IsMember({"perstate", "rate", "all"}));
  verify->add_option("--trials", f.trials, "randomized instances (rate suite uses 10x)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", f.verify_seed, "instance generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(f);
    const RunConfig cfg = resolve(f);
    const fs::path out = f.out;
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ApiError(SWIPT_IO, "cannot create '" + out.string() + "': " + ec.message());
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (region->parsed()) return cmd_region(cfg, out);
    return cmd_ensemble(cfg, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration errors:\n");
    for (const auto& item : e.items()) std::fprintf(stderr, "  %s\n", item.c_str());
    return kUsage;
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.status == SWIPT_INVALID_ARGUMENT || e.status == SWIPT_PARSE ? kUsage : kFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailed;
  }
}
