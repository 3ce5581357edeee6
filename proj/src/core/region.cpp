#include "core/region.hpp"

#include <cstdio>
#include <exception>
#include <memory>
#include <sstream>

#include "core/parallel.hpp"

namespace swipt {

Scheme parse_scheme(std::string_view text) {
  if (text == "optimal") return {SchemeId::Optimal, 0.0};
  if (text == "alt") return {SchemeId::Alternating, 0.0};
  if (text == "noan") return {SchemeId::NoAN, 0.0};
  if (text == "nocancel") return {SchemeId::NoCancel, 0.0};
  constexpr std::string_view prefix = "fixed:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string num(text.substr(prefix.size()));
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (num.empty() || used != num.size()) throw_invalid("scheme: bad split in '" + std::string(text) + "'");
    if (!(a >= 0.0 && a <= 1.0)) throw_invalid("scheme: fixed split must lie in [0, 1]");
    return {SchemeId::Fixed, a};
  }
  throw_invalid("scheme: expected optimal, alt, fixed:<alpha>, noan or nocancel, got '" + std::string(text) + "'");
}

std::string to_string(const Scheme& scheme) {
  switch (scheme.id) {
    case SchemeId::Optimal: return "optimal";
    case SchemeId::Alternating: return "alt";
    case SchemeId::NoAN: return "noan";
    case SchemeId::NoCancel: return "nocancel";
    case SchemeId::Fixed: {
      std::ostringstream os;
      os << "fixed:" << scheme.alpha_bar;
      return os.str();
    }
  }
  return "unknown";
}

DualSolveReport benchmark_noan(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                               const Constraints& constraints, const DualOptions& opts) {
  return solve_fixed_alpha(kind, ensemble, params, constraints, 0.0, opts);
}

namespace {

void to_nocancel(DualSolveReport& rep, const FadingEnsemble& ensemble, const SystemParams& params) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    auto& d = rep.decisions[i];
    d.alpha = solve_nocancel_split(ensemble[i], d.p, params);
    sum += rep.kind == ProblemKind::OutageMin ? outage_indicator(SchemeKind::NoCancel, ensemble[i], d, params)
                                              : secrecy_rate(SchemeKind::NoCancel, ensemble[i], d, params);
  }
  rep.objective = sum / static_cast<double>(ensemble.size());
}

}  // namespace

DualSolveReport benchmark_nocancel(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                   const Constraints& constraints, const DualOptions& opts) {
  DualSolveReport rep = benchmark_noan(kind, ensemble, params, constraints, opts);
  to_nocancel(rep, ensemble, params);
  return rep;
}

DualSolveReport solve_scheme(const Scheme& scheme, ProblemKind kind, const FadingEnsemble& ensemble,
                             const SystemParams& params, const Constraints& constraints,
                             const SolverSettings& settings) {
  switch (scheme.id) {
    case SchemeId::Optimal: return ellipsoid_solve(kind, ensemble, params, constraints, settings.dual);
    case SchemeId::Alternating: {
      AlternatingOptions alt = settings.alt;
      alt.dual = settings.dual;
      return kind == ProblemKind::OutageMin ? solve_p1_alternating(ensemble, params, constraints, alt)
                                            : solve_p2_alternating(ensemble, params, constraints, alt);
    }
    case SchemeId::Fixed:
      return solve_fixed_alpha(kind, ensemble, params, constraints, scheme.alpha_bar, settings.dual);
    case SchemeId::NoAN: return benchmark_noan(kind, ensemble, params, constraints, settings.dual);
    case SchemeId::NoCancel: return benchmark_nocancel(kind, ensemble, params, constraints, settings.dual);
  }
  throw_invalid("solve_scheme: unknown scheme");
}

void SweepSpec::validate() const {
  if (q_points < 2) throw_invalid("sweep: q_points must be at least 2");
  if (!(q_max_fraction > 0.0 && q_max_fraction <= 1.0)) throw_invalid("sweep: q_max_fraction must lie in (0, 1]");
  if (scheme.id == SchemeId::Fixed && kind == ProblemKind::EscMax && !(scheme.alpha_bar < 1.0)) {
    throw_invalid("sweep: ESC needs a fixed split below 1");
  }
}

std::vector<BoundaryRow> trace_boundary(const SweepSpec& spec, const FadingEnsemble& ensemble,
                                        const SystemParams& params, const SolverSettings& settings) {
  spec.validate();
  params.validate();
  const double q_max = check_feasibility(ensemble, params, Constraints{0.0}).max_q_bar;
  const auto n = static_cast<std::size_t>(spec.q_points);

  SolverSettings inner = settings;
  const int outer_threads = settings.dual.threads;
  inner.dual.threads = 1;

  // Schemes whose per-state precomputation does not depend on Q̄ share one policy.
  std::unique_ptr<SubproblemPolicy> shared;
  switch (spec.scheme.id) {
    case SchemeId::Optimal: shared = make_optimal_policy(spec.kind, ensemble, params, settings.dual); break;
    case SchemeId::Fixed:
    case SchemeId::NoAN:
    case SchemeId::NoCancel: {
      const double a = spec.scheme.id == SchemeId::Fixed ? spec.scheme.alpha_bar : 0.0;
      shared = make_fixed_split_policy(spec.kind, ensemble, params, std::vector<double>(ensemble.size(), a),
                                       settings.dual);
      break;
    }
    case SchemeId::Alternating: break;
  }

  std::vector<BoundaryRow> rows(n);
  parallel_for(n, outer_threads, [&](std::size_t k) {
    const double q_bar = spec.q_max_fraction * q_max * static_cast<double>(k) / static_cast<double>(n - 1);
    const Constraints c{q_bar};
    DualSolveReport rep;
    try {
      if (shared) {
        rep = ellipsoid_solve(*shared, ensemble, params, c, inner.dual);
        if (spec.scheme.id == SchemeId::NoCancel) to_nocancel(rep, ensemble, params);
      } else {
        rep = solve_scheme(spec.scheme, spec.kind, ensemble, params, c, inner);
      }
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "sweep aborted at q_bar = " << q_bar << " W: " << e.what();
      throw Error(e.code(), msg.str());
    }
    BoundaryRow& row = rows[k];
    row.q_bar = q_bar;
    row.point.kind = spec.kind;
    row.point.objective = spec.kind == ProblemKind::OutageMin ? 1.0 - rep.objective : rep.objective;
    row.point.harvested = rep.avg_harvest;
    row.avg_power = rep.avg_power;
    row.iterations = rep.iterations;
    row.dual_gap_estimate = rep.dual_gap_estimate;
  });
  return rows;
}

void write_boundary_csv(std::ostream& os, const Scheme& scheme, ProblemKind kind,
                        const std::vector<BoundaryRow>& rows) {
  os << "scheme,kind,q_bar,objective,harvested_w,avg_power_w,iterations\n";
  const std::string name = to_string(scheme);
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e,%.16e,%d", r.q_bar, r.point.objective, r.point.harvested,
                  r.avg_power, r.iterations);
    os << name << ',' << to_string(kind) << ',' << buf << '\n';
  }
}

}  // namespace swipt
