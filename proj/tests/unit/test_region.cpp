#include <doctest.h>

#include <sstream>

#include "core/channel.hpp"
#include "core/region.hpp"

using namespace swipt;

namespace {

SystemParams setup() {
  SystemParams p;
  p.r0 = 6.5;
  return p;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("optimal") == Scheme{SchemeId::Optimal, 0.0});
  CHECK(parse_scheme("alt") == Scheme{SchemeId::Alternating, 0.0});
  CHECK(parse_scheme("noan") == Scheme{SchemeId::NoAN, 0.0});
  CHECK(parse_scheme("nocancel") == Scheme{SchemeId::NoCancel, 0.0});
  CHECK(parse_scheme("fixed:0.25") == Scheme{SchemeId::Fixed, 0.25});
  CHECK(parse_scheme("fixed:1") == Scheme{SchemeId::Fixed, 1.0});
  for (const char* s : {"optimal", "alt", "noan", "nocancel", "fixed:0.5"}) CHECK(to_string(parse_scheme(s)) == s);
  for (const char* bad : {"", "Optimal", "fixed:", "fixed:x", "fixed:0.5x", "fixed:-0.1", "fixed:1.5", "alt "})
    CHECK_THROWS_AS(parse_scheme(bad), Error);
}

TEST_CASE("no-AN benchmark equals a zero fixed split bit for bit") {
  const auto e = generate_ensemble(GeometryConfig{}, 500, 17);
  const SystemParams p = setup();
  const Constraints c{0.5 * check_feasibility(e, p, Constraints{}).max_q_bar};
  for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
    const auto a = benchmark_noan(kind, e, p, c);
    const auto b = solve_scheme(Scheme{SchemeId::Fixed, 0.0}, kind, e, p, c);
    CHECK(a.decisions == b.decisions);
    CHECK(a.objective == b.objective);
    CHECK(a.dual == b.dual);
    CHECK(a.dual_value == b.dual_value);
    CHECK(a.iterations == b.iterations);
  }
}

TEST_CASE("no-cancel benchmark") {
  const auto e = generate_ensemble(GeometryConfig{2.0, 1.0}, 500, 18);
  const SystemParams p = setup();
  const Constraints c{0.3 * check_feasibility(e, p, Constraints{}).max_q_bar};
  for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
    const auto nc = benchmark_nocancel(kind, e, p, c);
    const auto na = benchmark_noan(kind, e, p, c);
    for (const auto& d : nc.decisions) CHECK(d.alpha == 0.0);
    CHECK(nc.objective == doctest::Approx(na.objective).epsilon(1e-12));
    CHECK(nc.avg_harvest == na.avg_harvest);
  }
}

TEST_CASE("boundary sweep") {
  const auto e = generate_ensemble(GeometryConfig{}, 400, 21);
  const SystemParams p = setup();
  const double q_max = check_feasibility(e, p, Constraints{}).max_q_bar;
  SolverSettings one, three;
  three.dual.threads = 3;
  for (auto kind : {ProblemKind::OutageMin, ProblemKind::EscMax}) {
    SweepSpec spec{Scheme{SchemeId::Optimal, 0.0}, kind, 5, 0.9};
    const auto rows = trace_boundary(spec, e, p, one);
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().q_bar == 0.0);
    CHECK(rows.back().q_bar == doctest::Approx(0.9 * q_max));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].point.objective <= rows[i - 1].point.objective + 1e-6 + rows[i].dual_gap_estimate);
      CHECK(rows[i].point.harvested >= rows[i].q_bar * (1 - 1e-4));
    }
    // first point: the harvest floor is slack
    const auto free = solve_scheme(spec.scheme, kind, e, p, Constraints{0.0});
    const double free_obj = kind == ProblemKind::OutageMin ? 1.0 - free.objective : free.objective;
    CHECK(rows.front().point.objective == doctest::Approx(free_obj));

    const auto par = trace_boundary(spec, e, p, three);
    REQUIRE(par.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(par[i].point.objective == rows[i].point.objective);
      CHECK(par[i].point.harvested == rows[i].point.harvested);
      CHECK(par[i].iterations == rows[i].iterations);
    }
  }
}

TEST_CASE("boundary csv") {
  std::vector<BoundaryRow> rows(2);
  rows[0].q_bar = 0.0;
  rows[0].point = {ProblemKind::EscMax, 7.5, 1.0 / 3.0};
  rows[0].avg_power = 0.1;
  rows[0].iterations = 170;
  rows[1].q_bar = 1e-6;
  rows[1].point = {ProblemKind::EscMax, 7.25, 1.5e-6};
  rows[1].avg_power = 0.1;
  rows[1].iterations = 181;
  std::ostringstream os;
  write_boundary_csv(os, Scheme{SchemeId::Fixed, 0.5}, ProblemKind::EscMax, rows);
  CHECK(os.str() ==
        "scheme,kind,q_bar,objective,harvested_w,avg_power_w,iterations\n"
        "fixed:0.5,esc,0.0000000000000000e+00,7.5000000000000000e+00,3.3333333333333331e-01,"
        "1.0000000000000001e-01,170\n"
        "fixed:0.5,esc,9.9999999999999995e-07,7.2500000000000000e+00,1.5000000000000000e-06,"
        "1.0000000000000001e-01,181\n");
}

TEST_CASE("sweep validation") {
  SweepSpec s;
  CHECK_NOTHROW(s.validate());
  s.q_points = 1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.q_max_fraction = 1.5;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.kind = ProblemKind::EscMax;
  s.scheme = {SchemeId::Fixed, 1.0};
  CHECK_THROWS_AS(s.validate(), Error);
}
