#include <doctest.h>

#include <cmath>
#include <limits>

#include "core/perstate.hpp"
#include "oracle/oracle.hpp"
#include "oracle/suite.hpp"

using namespace swipt;
using namespace swipt::oracle;

namespace {

SystemParams with_r0(double r0) {
  SystemParams p;
  p.r0 = r0;
  return p;
}

double l1(const FadingState& s, const DualPoint& d, double pw, double a, const SystemParams& p) {
  return outage_indicator(SchemeKind::AnCancelled, s, {pw, a}, p) + d.lambda * pw - p.zeta * d.mu * s.g * pw;
}

double l2(const FadingState& s, const DualPoint& d, double pw, double a, const SystemParams& p) {
  return secrecy_rate(SchemeKind::AnCancelled, s, {pw, a}, p) - d.lambda * pw + p.zeta * d.mu * s.g * pw;
}

}  // namespace

TEST_CASE("L1 grid") {
  // flat penalty and an unreachable target
  const SystemParams p = with_r0(40.0);
  const FadingState s{1e-5, 1e-4};
  const DualPoint flat{p.zeta * 1e4 * s.g, 1e4};
  const auto r = grid_min_L1(s, flat, p, 50, 50);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.p == 0.0);

  const SystemParams q = with_r0(2.0);
  const FadingState t{2e-4, 1e-4};
  const DualPoint d{3.0, 1e3};
  double corners = std::numeric_limits<double>::infinity();
  for (double pw : {0.0, q.p_peak})
    for (double a : {0.0, 1.0}) corners = std::min(corners, l1(t, d, pw, a, q));
  CHECK(grid_min_L1(t, d, q, 2, 2).value == corners);
}

TEST_CASE("L2 grid") {
  const SystemParams p;
  const FadingState s{1e-4, 3e-5};
  const DualPoint d{5.0, 2e4};
  CHECK(grid_max_L2(s, d, 0.3, p, 2).value == std::max(l2(s, d, 0.0, 0.3, p), l2(s, d, p.p_peak, 0.3, p)));
  CHECK(grid_max_L2(s, {1e9, 0.0}, 0.3, p, 1000).p == 0.0);

  // refinement closes in on the closed-form optimum
  const double exact = l2(s, d, solve_p2_sub_fixed_alpha(s, d, 0.3, p), 0.3, p);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (int n : {101, 1001, 10001, 100001}) {
    const double gap = exact - grid_max_L2(s, d, 0.3, p, n).value;
    CHECK(gap >= -1e-12);
    CHECK(gap <= prev_gap + 1e-12);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-6);
}

TEST_CASE("rate inverse by bisection") {
  const FadingState s{2e-4, 1e-4};
  CHECK(bisect_rate_inverse(s, 0.3, with_r0(0.0)) == ExtendedPower::finite(0.0));
  CHECK(bisect_rate_inverse(s, 1.0, with_r0(2.0)).is_infinite());
  const SystemParams p = with_r0(3.0);
  const auto b = bisect_rate_inverse(s, 0.4, p);
  REQUIRE(b.is_finite());
  CHECK(std::abs(secrecy_rate(SchemeKind::AnCancelled, s, {b.value(), 0.4}, p) - p.r0) <= 1e-9);
}

TEST_CASE("split grid") {
  const SystemParams p;
  const FadingState s{1e-4, 1e-4};
  const double best = grid_max_rate_over_alpha(s, 0.2, p, 10001);
  CHECK(best == doctest::Approx(secrecy_rate(SchemeKind::AnCancelled, s, {0.2, 0.5}, p)).epsilon(1e-12));
}

TEST_CASE("dual grid search") {
  // a concave bowl with its peak at (2, 30)
  const DualFunction bowl = [](const DualPoint& d) {
    return -(d.lambda - 2.0) * (d.lambda - 2.0) - 1e-2 * (d.mu - 30.0) * (d.mu - 30.0);
  };
  const auto corners = grid_dual_search(ProblemKind::OutageMin, bowl, {0.0, 4.0, 0.0, 100.0}, 2);
  CHECK(corners.dual == DualPoint{0.0, 0.0});  // ties keep the first corner
  CHECK(corners.value == doctest::Approx(-4.0 - 9.0));

  const auto fine = grid_dual_search(ProblemKind::OutageMin, bowl, {0.0, 4.0, 0.0, 60.0}, 401);
  CHECK(fine.dual.lambda == doctest::Approx(2.0));
  CHECK(fine.dual.mu == doctest::Approx(30.0));

  // box that misses the optimum returns its edge
  const auto edge = grid_dual_search(ProblemKind::OutageMin, bowl, {0.0, 1.0, 0.0, 60.0}, 101);
  CHECK(edge.dual.lambda == 1.0);

  // minimization for the ESC dual, and a zoom that has to grow the box first
  const DualFunction cup = [&](const DualPoint& d) { return -bowl(d); };
  const auto zoom = zoom_dual_search(ProblemKind::EscMax, cup, {0.0, 0.5, 0.0, 5.0}, 41, 8);
  CHECK(zoom.dual.lambda == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(zoom.dual.mu == doctest::Approx(30.0).epsilon(1e-3));
}

TEST_CASE("randomized suites, reduced") {
  PerStateSuiteOptions o;
  o.trials = 60;
  o.l1_grid = 200;
  o.l2_grid = 20000;
  o.split_grid = 2000;
  const auto r = run_perstate_suite(o);
  CHECK(r.trials == 60);
  CHECK(r.inverse_checked > 0);
  CHECK(r.fail_split == 0);
  CHECK(r.fail_inverse == 0);
  // coarse grids can only be worse than the closed forms
  CHECK(r.fail_l1 == 0);
  CHECK(r.fail_l2 == 0);

  const auto rate = run_rate_suite(500, 99);
  CHECK(rate.cases == 500);
  CHECK(rate.passed());
}
