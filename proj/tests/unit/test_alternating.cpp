#include <doctest.h>

#include <algorithm>

#include "core/alternating.hpp"
#include "core/channel.hpp"
#include "core/region.hpp"

using namespace swipt;

namespace {

SystemParams setup() {
  SystemParams p;
  p.r0 = 6.5;
  return p;
}

double q_at(const FadingEnsemble& e, const SystemParams& p, double frac) {
  return frac * check_feasibility(e, p, Constraints{}).max_q_bar;
}

void check_monotone(ProblemKind kind, const DualSolveReport& r) {
  REQUIRE(!r.rounds.empty());
  for (std::size_t i = 1; i < r.rounds.size(); ++i) {
    if (kind == ProblemKind::OutageMin) CHECK(r.rounds[i].objective <= r.rounds[i - 1].objective + 1e-9);
    else CHECK(r.rounds[i].objective >= r.rounds[i - 1].objective - 1e-9);
  }
  CHECK(r.objective == r.rounds.back().objective);
}

}  // namespace

TEST_CASE("one round from a zero split is the no-AN allocation plus a split update") {
  const auto e = generate_ensemble(GeometryConfig{}, 200, 31);
  const SystemParams p = setup();
  const Constraints c{q_at(e, p, 0.4)};
  AlternatingOptions o;
  o.max_rounds = 1;
  o.initial_alpha = 0.0;
  for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
    const auto noan = benchmark_noan(kind, e, p, c, o.dual);
    const auto alt = kind == ProblemKind::OutageMin ? solve_p1_alternating(e, p, c, o) : solve_p2_alternating(e, p, c, o);
    REQUIRE(alt.decisions.size() == noan.decisions.size());
    CHECK(alt.rounds.size() == 1);
    const double cap = kind == ProblemKind::EscMax ? 1.0 - kAlphaUpperClip : 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(alt.decisions[i].p == noan.decisions[i].p);
      const double a = noan.decisions[i].p > 0 ? std::min(optimal_split_given_power(e[i], noan.decisions[i].p, p), cap) : 0.0;
      CHECK(alt.decisions[i].alpha == a);
    }
  }
}

TEST_CASE("round objectives are monotone") {
  const FadingEnsemble ten({{1.4e-4, 0.9e-4}, {0.3e-4, 1.6e-4}, {2.9e-4, 0.4e-4}, {1.1e-4, 1.2e-4}, {0.6e-4, 0.2e-4},
                            {3.8e-4, 2.5e-4}, {0.8e-4, 0.8e-4}, {1.9e-4, 3.1e-4}, {0.1e-4, 0.5e-4}, {2.2e-4, 1.0e-4}},
                           0);
  const SystemParams p = setup();
  for (double a0 : {0.0, 0.5, 0.9}) {
    AlternatingOptions o;
    o.initial_alpha = a0;
    for (double frac : {0.0, 0.5, 0.9}) {
      const Constraints c{q_at(ten, p, frac)};
      check_monotone(ProblemKind::OutageMin, solve_p1_alternating(ten, p, c, o));
      check_monotone(ProblemKind::EscMax, solve_p2_alternating(ten, p, c, o));
    }
  }
}

TEST_CASE("alternating stays close to the joint optimum") {
  const auto e = generate_ensemble(GeometryConfig{}, 1000, 2);
  const SystemParams p = setup();
  const Constraints c{q_at(e, p, 0.5)};
  const auto opt_o = ellipsoid_solve(ProblemKind::OutageMin, e, p, c);
  const auto alt_o = solve_p1_alternating(e, p, c);
  CHECK(alt_o.objective >= opt_o.objective - 1e-9);
  CHECK(alt_o.objective <= opt_o.objective + 0.02);
  const auto opt_e = ellipsoid_solve(ProblemKind::EscMax, e, p, c);
  const auto alt_e = solve_p2_alternating(e, p, c);
  CHECK(alt_e.objective <= opt_e.objective * (1 + 1e-6));
  CHECK(alt_e.objective >= opt_e.objective * 0.95);
  CHECK(alt_e.feasible);
  CHECK(alt_o.feasible);
}

TEST_CASE("fixed split") {
  const auto e = generate_ensemble(GeometryConfig{}, 2000, 6);
  const SystemParams p = setup();
  const Constraints c{q_at(e, p, 0.5)};
  for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
    const auto f = solve_fixed_alpha(kind, e, p, c, 0.3);
    CHECK(std::all_of(f.decisions.begin(), f.decisions.end(), [](const PerStateDecision& d) { return d.alpha == 0.3; }));
    CHECK(f.rounds.empty());
    CHECK(f.feasible);
  }
  // a half split beats a small one when both receivers are equally far away
  const auto half = solve_fixed_alpha(ProblemKind::EscMax, e, p, c, 0.5);
  const auto tenth = solve_fixed_alpha(ProblemKind::EscMax, e, p, c, 0.1);
  CHECK(half.objective > tenth.objective);
  CHECK_THROWS_AS(solve_fixed_alpha(ProblemKind::EscMax, e, p, c, 1.0), Error);
}

TEST_CASE("option validation") {
  AlternatingOptions o;
  CHECK_NOTHROW(o.validate(ProblemKind::OutageMin));
  o.max_rounds = 0;
  CHECK_THROWS_AS(o.validate(ProblemKind::OutageMin), Error);
  o = {};
  o.initial_alpha = 1.0;
  CHECK_THROWS_AS(o.validate(ProblemKind::EscMax), Error);
  o.initial_alpha = -0.1;
  CHECK_THROWS_AS(o.validate(ProblemKind::OutageMin), Error);
}
