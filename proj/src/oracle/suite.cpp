#include "oracle/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "oracle/oracle.hpp"
#include "swipt/swipt.h"

namespace swipt::oracle {

double InstanceGenerator::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double InstanceGenerator::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

Instance InstanceGenerator::next() {
  Instance in;
  in.params.p_peak = uniform(0.5, 2.0);
  in.params.p_avg = std::min(0.1, in.params.p_peak);
  in.params.zeta = uniform(0.2, 1.0);
  in.params.sigma1_sq = log_uniform(1e-9, 1e-7);
  in.params.sigma2_sq = log_uniform(1e-9, 1e-7);
  in.params.r0 = uniform(0.5, 10.0);
  in.state.h = log_uniform(1e-6, 1e-2);
  in.state.g = log_uniform(1e-6, 1e-2);
  const double u = uniform(0.0, 1.0);
  in.dual.lambda = u < 0.1 ? 0.0 : log_uniform(1e-1, 1e4);
  in.dual.mu = u > 0.9 ? 0.0 : log_uniform(1.0, 1e9);
  in.alpha = uniform(0.0, 1.0) < 0.1 ? 0.0 : uniform(0.0, 0.999);
  in.p_bar = log_uniform(1e-4, in.params.p_peak);
  return in;
}

namespace {

swipt_params to_c(const SystemParams& p) { return {p.p_avg, p.p_peak, p.zeta, p.sigma1_sq, p.sigma2_sq, p.r0}; }

double l1_at(const Instance& in, double p, double a) {
  return outage_indicator(SchemeKind::AnCancelled, in.state, {p, a}, in.params) + in.dual.lambda * p -
         in.params.zeta * in.dual.mu * in.state.g * p;
}

double l2_at(const Instance& in, double p, double a) {
  return secrecy_rate(SchemeKind::AnCancelled, in.state, {p, a}, in.params) - in.dual.lambda * p +
         in.params.zeta * in.dual.mu * in.state.g * p;
}

void check(swipt_status s) {
  if (s != SWIPT_OK) throw Error(ErrorCode::kNumerical, std::string("library call failed: ") + swipt_last_error());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PerStateSuiteReport run_perstate_suite(const PerStateSuiteOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  InstanceGenerator gen(opts.seed);
  PerStateSuiteReport rep;
  for (int t = 0; t < opts.trials; ++t) {
    const Instance in = gen.next();
    const swipt_params cp = to_c(in.params);
    const swipt_state cs{in.state.h, in.state.g};
    const swipt_dual cd{in.dual.lambda, in.dual.mu};
    ++rep.trials;

    swipt_decision d1;
    check(swipt_solve_p1_sub(cs, cd, &cp, &d1));
    const double l1 = l1_at(in, d1.p, d1.alpha);
    const double g1 = grid_min_L1(in.state, in.dual, in.params, opts.l1_grid, opts.l1_grid).value;
    rep.worst_l1 = std::max(rep.worst_l1, l1 - g1);
    if (!(l1 <= g1 + 1e-6)) ++rep.fail_l1;

    double p2 = 0.0;
    check(swipt_solve_p2_sub_fixed_alpha(cs, cd, in.alpha, &cp, &p2));
    const double l2 = l2_at(in, p2, in.alpha);
    const double g2 = grid_max_L2(in.state, in.dual, in.alpha, in.params, opts.l2_grid).value;
    rep.worst_l2 = std::max(rep.worst_l2, g2 - l2);
    if (!(l2 >= g2 - 1e-6)) ++rep.fail_l2;

    const double p_bar = in.p_bar;
    double a_star = 0.0;
    check(swipt_optimal_split(cs, p_bar, &cp, &a_star));
    const double r = secrecy_rate(SchemeKind::AnCancelled, in.state, {p_bar, a_star}, in.params);
    const double gr = grid_max_rate_over_alpha(in.state, p_bar, in.params, opts.split_grid);
    rep.worst_split = std::max(rep.worst_split, gr - r);
    if (!(r >= gr - 1e-9)) ++rep.fail_split;

    double p1 = 0.0;
    int finite = 0;
    check(swipt_min_power_for_rate(cs, in.alpha, &cp, &p1, &finite));
    const ExtendedPower b = bisect_rate_inverse(in.state, in.alpha, in.params);
    if (finite && b.is_finite()) {
      ++rep.inverse_checked;
      const double rel = std::abs(p1 - b.value()) / std::max(b.value(), 1e-300);
      rep.worst_inverse = std::max(rep.worst_inverse, rel);
      if (!(rel <= 1e-8)) ++rep.fail_inverse;
    } else if (finite != 0 && p1 <= in.params.p_peak * 1e3) {
      ++rep.fail_inverse;  // solver finite inside the bracket, bisection says unreachable
    } else if (finite == 0 && b.is_finite()) {
      ++rep.fail_inverse;
    }
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

RateSuiteReport run_rate_suite(int cases, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  InstanceGenerator gen(seed);
  RateSuiteReport rep;
  for (int guard = 0; rep.cases < cases && guard < cases * 100; ++guard) {
    const Instance in = gen.next();
    const swipt_params cp = to_c(in.params);
    double p1 = 0.0;
    int finite = 0;
    check(swipt_min_power_for_rate({in.state.h, in.state.g}, in.alpha, &cp, &p1, &finite));
    if (!finite || p1 > in.params.p_peak) continue;
    ++rep.cases;
    const double r = secrecy_rate(SchemeKind::AnCancelled, in.state, {p1, in.alpha}, in.params);
    const double rel = std::abs(r - in.params.r0) / in.params.r0;
    rep.worst_rel = std::max(rep.worst_rel, rel);
    if (!(rel <= 1e-8)) ++rep.failures;
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace swipt::oracle
