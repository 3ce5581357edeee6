// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "core/channel.hpp"
#include "core/dual.hpp"
#include "core/region.hpp"
#include "oracle/oracle.hpp"
#include "oracle/suite.hpp"

using namespace swipt;

namespace {

int g_failed = 0;
const auto g_start = std::chrono::steady_clock::now();

double elapsed() { return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count(); }

void verdict(int n, bool ok, const std::string& what) {
  if (!ok) ++g_failed;
  std::printf("%s criterion %d: %s  [t=%.0fs]\n", ok ? "PASS" : "FAIL", n, what.c_str(), elapsed());
}

template <class... A>
void detail(const char* fmt, A... a) {
  std::printf("    ");
  std::printf(fmt, a...);
  std::printf("\n");
}

SystemParams section7() {
  SystemParams p;
  p.r0 = 6.5;
  return p;
}

bool within_constraints(const DualSolveReport& r, const SystemParams& p, const Constraints& c, double rel) {
  return r.avg_power <= p.p_avg * (1.0 + rel) && r.avg_harvest >= c.q_bar * (1.0 - rel);
}

// ---------------------------------------------------------------------------

void criterion1() {
  oracle::PerStateSuiteOptions o;
  const auto r = oracle::run_perstate_suite(o);
  detail("trials %d, fails L1 %d L2 %d split %d inverse %d (checked %d)", r.trials, r.fail_l1, r.fail_l2,
         r.fail_split, r.fail_inverse, r.inverse_checked);
  detail("worst: L1 %.3g, L2 %.3g, split %.3g, inverse rel %.3g; %.1f s", r.worst_l1, r.worst_l2, r.worst_split,
         r.worst_inverse, r.seconds);
  verdict(1, r.passed() && r.trials >= 1000 && r.seconds < 300.0, "per-state closed forms match grid oracles");
}

void criterion2() {
  const auto r = oracle::run_rate_suite(10000, 7);
  detail("cases %d, failures %d, worst rel %.3g, %.2f s", r.cases, r.failures, r.worst_rel, r.seconds);
  verdict(2, r.passed() && r.cases >= 10000, "rate at minimum power equals target");
}

void criterion3() {
  const SystemParams P = section7();
  bool ok = true, info_ok = true;
  for (auto kind : {ProblemKind::EscMax, ProblemKind::OutageMin}) {
    for (int seed = 1001; seed <= 1005; ++seed) {
      const auto ens = generate_ensemble(GeometryConfig{}, 50, seed);
      const Constraints c{0.5 * check_feasibility(ens, P, {}).max_q_bar};
      const auto pol = make_optimal_policy(kind, ens, P);
      const auto rep = ellipsoid_solve(*pol, ens, P, c);
      const auto sc = multiplier_scale(ens, P);
      const auto fn = [&](const DualPoint& y) { return dual_value(*pol, ens, y, P, c).value; };
      const auto grid = oracle::zoom_dual_search(kind, fn, {0.0, 10 * sc.lambda, 0.0, 10 * sc.mu}, 400, 6);
      // the ellipsoid may beat the grid; only a worse dual value counts against it
      const double worse = kind == ProblemKind::EscMax ? rep.dual_value - grid.value : grid.value - rep.dual_value;
      const double rel = worse / std::abs(grid.value);
      const bool feas = within_constraints(rep, P, c, 1e-4);
      if (kind == ProblemKind::EscMax) {
        const bool good = rel <= 1e-3 && feas && rep.dual_gap_estimate < 0.02 * rep.objective;
        ok = ok && good;
        detail("esc seed %d: dual %.8g grid %.8g (worse by %.2e rel), esc %.6g, gap %.3g, E[p]/P %.6f, "
               "E[Q]/Q %.6f, %d it",
               seed, rep.dual_value, grid.value, rel, rep.objective, rep.dual_gap_estimate, rep.avg_power / P.p_avg,
               rep.avg_harvest / c.q_bar, rep.iterations);
      } else {
        const double integer_bound = std::ceil(50.0 * rep.dual_value - 1e-9) / 50.0;
        const bool good = rel <= 1e-3 && feas && std::abs(rep.objective - integer_bound) < 1e-12;
        info_ok = info_ok && good;
        detail("outage seed %d: dual %.8g grid %.8g (worse by %.2e rel), outage %.4f, ceil bound %.4f, "
               "E[p]/P %.6f, E[Q]/Q %.6f",
               seed, rep.dual_value, grid.value, rel, rep.objective, integer_bound, rep.avg_power / P.p_avg,
               rep.avg_harvest / c.q_bar);
      }
    }
  }
  std::printf("INFO criterion 3 (outage): dual matches grid, primal feasible and integer-optimal: %s\n",
              info_ok ? "yes" : "no");
  verdict(3, ok, "ellipsoid dual matches grid search, primal feasible, gap < 2%");
}

bool monotone(const std::vector<RoundTraceRow>& rows, ProblemKind kind) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double step = rows[k].objective - rows[k - 1].objective;
    if (kind == ProblemKind::OutageMin ? step > 1e-9 : step < -1e-9) return false;
  }
  return true;
}

bool same_bits(const DualSolveReport& a, const DualSolveReport& b) {
  return a.decisions == b.decisions && a.dual == b.dual && a.objective == b.objective &&
         a.avg_power == b.avg_power && a.avg_harvest == b.avg_harvest && a.iterations == b.iterations;
}

void criterion4() {
  int mono_fail = 0, bit_fail = 0, rounds = 0;
  for (int s = 0; s < 20; ++s) {
    GeometryConfig geo;
    geo.d_er = 1.0 + 0.1 * s;
    SystemParams P = section7();
    P.r0 = 2.0 + 0.35 * s;
    const auto ens = generate_ensemble(geo, 300, 500 + s);
    const Constraints c{(0.1 + 0.04 * s) * check_feasibility(ens, P, {}).max_q_bar};
    AlternatingOptions ao;
    ao.initial_alpha = (s % 3) * 0.45;
    const auto p1 = solve_p1_alternating(ens, P, c, ao);
    ao.initial_alpha = std::min(ao.initial_alpha, 0.5);
    const auto p2 = solve_p2_alternating(ens, P, c, ao);
    rounds += static_cast<int>(p1.rounds.size() + p2.rounds.size());
    if (!monotone(p1.rounds, ProblemKind::OutageMin) || !monotone(p2.rounds, ProblemKind::EscMax)) {
      ++mono_fail;
      detail("scenario %d not monotone", s);
    }
    for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax})
      if (!same_bits(solve_fixed_alpha(kind, ens, P, c, 0.0), benchmark_noan(kind, ens, P, c))) {
        ++bit_fail;
        detail("scenario %d: fixed(0) differs from noan (%s)", s, to_string(kind));
      }
  }
  detail("20 scenarios, %d alternating rounds, monotone failures %d, fixed(0)/noan mismatches %d", rounds,
         mono_fail, bit_fail);
  verdict(4, mono_fail == 0 && bit_fail == 0, "alternating rounds monotone, fixed(0) identical to noan");
}

void criterion5() {
  int alpha_fail = 0, curve_fail = 0;
  double worst = 0.0;
  for (int s = 0; s < 6; ++s) {
    GeometryConfig geo;
    geo.d_er = s % 2 ? 1.0 : 2.0;
    SystemParams P = section7();
    P.r0 = 2.0 + s;
    const auto ens = generate_ensemble(geo, 500, 900 + s);
    for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
      SweepSpec nc{Scheme{SchemeId::NoCancel}, kind, 6};
      SweepSpec na{Scheme{SchemeId::NoAN}, kind, 6};
      const auto a = trace_boundary(nc, ens, P);
      const auto b = trace_boundary(na, ens, P);
      for (std::size_t k = 0; k < a.size(); ++k) {
        const Constraints c{a[k].q_bar};
        const auto rep = benchmark_nocancel(kind, ens, P, c);
        for (const auto& d : rep.decisions)
          if (d.alpha != 0.0) ++alpha_fail;
        const double diff = std::max(std::abs(a[k].point.objective - b[k].point.objective),
                                     std::abs(a[k].point.harvested - b[k].point.harvested) /
                                         std::max(a[k].point.harvested, 1e-12));
        worst = std::max(worst, diff);
        if (diff > 1e-6 || a[k].q_bar != b[k].q_bar) ++curve_fail;
      }
    }
  }
  detail("6 scenarios x 2 kinds x 6 points: nonzero splits %d, boundary mismatches %d, worst diff %.3g", alpha_fail,
         curve_fail, worst);
  verdict(5, alpha_fail == 0 && curve_fail == 0, "nocancel splits are zero and its boundary equals noan's");
}

// ---------------------------------------------------------------------------
// Desk-scale figures: 1e4 states, sweeps shared by criteria 6-9.

struct Sweeps {
  std::map<std::string, std::vector<BoundaryRow>> outage, esc;
};

const char* kSchemes[] = {"optimal", "alt", "fixed:0.5", "noan"};

Sweeps sweep_geometry(double d_er, int points) {
  GeometryConfig geo;
  geo.d_er = d_er;
  const auto ens = generate_ensemble(geo, 10000, 1);
  const SystemParams P = section7();
  Sweeps out;
  for (const char* name : kSchemes) {
    for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
      const SweepSpec spec{parse_scheme(name), kind, points};
      auto rows = trace_boundary(spec, ens, P);
      (kind == ProblemKind::OutageMin ? out.outage : out.esc)[name] = std::move(rows);
    }
  }
  return out;
}

void print_sweep(const char* tag, const Sweeps& s) {
  for (const auto* m : {&s.outage, &s.esc})
    for (const auto& [name, rows] : *m) {
      std::printf("    %s %s %s (E[Q], %s):", tag, m == &s.outage ? "outage" : "esc", name.c_str(),
                  m == &s.outage ? "non-outage" : "esc");
      for (const auto& r : rows) std::printf(" (%.3g uW, %.4f)", r.point.harvested * 1e6, r.point.objective);
      std::printf("\n");
    }
}

void criterion6(const Sweeps& s) {
  const auto& opt = s.outage.at("optimal");
  const auto& noan = s.outage.at("noan");
  bool ok = false;
  for (std::size_t k = 0; k < opt.size(); ++k) {
    const double non_outage = opt[k].point.objective;
    const double noan_outage = 1.0 - noan[k].point.objective;
    if (opt[k].point.harvested >= 7.0e-6 && non_outage >= 0.93) {
      detail("Q %.3g uW: optimal harvests %.3g uW with non-outage %.4f; noan outage %.4f", opt[k].q_bar * 1e6,
             opt[k].point.harvested * 1e6, non_outage, noan_outage);
      ok = ok || noan_outage > 0.95;
    }
  }
  verdict(6, ok, "2m/2m: optimal >= 7 uW at non-outage >= 0.93 while noan outage > 0.95");
}

void criterion7(const Sweeps& s) {
  GeometryConfig geo;
  const auto ens = generate_ensemble(geo, 10000, 1);
  const SystemParams P = section7();
  const Constraints c{6e-6};
  const auto opt = solve_scheme(parse_scheme("optimal"), ProblemKind::EscMax, ens, P, c);
  const auto noan = solve_scheme(parse_scheme("noan"), ProblemKind::EscMax, ens, P, c);
  const double ratio = opt.objective / noan.objective;
  detail("Q 6 uW: optimal esc %.5g (E[Q] %.4g uW), noan esc %.5g (E[Q] %.4g uW), ratio %.2f", opt.objective,
         opt.avg_harvest * 1e6, noan.objective, noan.avg_harvest * 1e6, ratio);

  const auto& o = s.esc.at("optimal");
  const auto& a = s.esc.at("alt");
  double worst = 0.0;
  for (std::size_t k = 0; k < o.size(); ++k)
    worst = std::max(worst, (o[k].point.objective - a[k].point.objective) / o[k].point.objective);
  detail("alternating esc shortfall vs optimal, worst over %zu points: %.3g", o.size(), worst);
  const bool near6 = std::abs(opt.avg_harvest - 6e-6) <= 6e-6 * 0.05 && std::abs(noan.avg_harvest - 6e-6) <= 6e-6 * 0.05;
  verdict(7, ratio >= 5.0 && worst <= 0.05 && near6, "esc with AN >= 5x noan at 6 uW, alternating within 5%");
}

double max_harvest(const std::vector<BoundaryRow>& rows) {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.point.harvested);
  return m;
}

void criterion8(const Sweeps& far, const Sweeps& near) {
  const double ratio = max_harvest(near.outage.at("optimal")) / max_harvest(far.outage.at("optimal"));
  double least = 1.0;
  for (const auto& r : near.outage.at("noan")) least = std::min(least, 1.0 - r.point.objective);
  detail("largest boundary harvest: 2m/1m %.4g uW, 2m/2m %.4g uW, ratio %.2f", max_harvest(near.outage.at("optimal")) * 1e6,
         max_harvest(far.outage.at("optimal")) * 1e6, ratio);
  detail("2m/1m noan outage minimum over sweep %.5f", least);
  verdict(8, ratio >= 7.0 && ratio <= 13.0 && least >= 0.99, "2m/1m harvest scale ~10x, noan outage ~1");
}

void criterion9(const std::vector<const Sweeps*>& all) {
  int mono_fail = 0, dom_fail = 0, checks = 0;
  for (const Sweeps* s : all) {
    for (const auto* m : {&s->outage, &s->esc}) {
      const bool outage = m == &s->outage;
      for (const auto& [name, rows] : *m)
        for (std::size_t k = 1; k < rows.size(); ++k) {
          const double tol = 1e-6 + std::max(rows[k].dual_gap_estimate, rows[k - 1].dual_gap_estimate);
          if (rows[k].point.objective - rows[k - 1].point.objective > tol) {
            ++mono_fail;
            detail("%s %s not monotone at point %zu", outage ? "outage" : "esc", name.c_str(), k);
          }
        }
      const char* order[] = {"optimal", "alt", "fixed:0.5"};
      for (int j = 0; j + 1 < 3; ++j) {
        const auto& better = m->at(order[j]);
        const auto& worse = m->at(order[j + 1]);
        for (std::size_t k = 0; k < better.size(); ++k, ++checks) {
          if (worse[k].point.objective - better[k].point.objective > 1e-6) {
            ++dom_fail;
            detail("%s: %s %.6g vs %s %.6g at point %zu", outage ? "outage" : "esc", order[j],
                   better[k].point.objective, order[j + 1], worse[k].point.objective, k);
          }
        }
      }
    }
  }
  detail("monotonicity failures %d; dominance failures %d of %d comparisons", mono_fail, dom_fail, checks);
  verdict(9, mono_fail == 0 && dom_fail == 0, "boundaries monotone, optimal >= alternating >= fixed");
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    const Sweeps far = sweep_geometry(2.0, 8);
    print_sweep("2m/2m", far);
    const Sweeps near = sweep_geometry(1.0, 8);
    print_sweep("2m/1m", near);
    criterion6(far);
    criterion7(far);
    criterion8(far, near);
    criterion9({&far, &near});
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d criteria failed, %.0f s\n", g_failed ? "FAILED" : "ALL PASSED", g_failed, elapsed());
  return g_failed ? 1 : 0;
}
