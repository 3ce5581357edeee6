#pragma once

// Scheme dispatch and O-E / R-E boundary sweeps over the harvest floor.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "core/alternating.hpp"

namespace swipt {

enum class SchemeId { Optimal, Alternating, Fixed, NoAN, NoCancel };

struct Scheme {
  SchemeId id = SchemeId::Optimal;
  double alpha_bar = 0.0;  // Fixed only

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

// "optimal", "alt", "fixed:<alpha>", "noan", "nocancel".
Scheme parse_scheme(std::string_view text);
std::string to_string(const Scheme& scheme);

struct SolverSettings {
  DualOptions dual;
  AlternatingOptions alt;
};

DualSolveReport solve_scheme(const Scheme& scheme, ProblemKind kind, const FadingEnsemble& ensemble,
                             const SystemParams& params, const Constraints& constraints,
                             const SolverSettings& settings = {});

DualSolveReport benchmark_noan(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                               const Constraints& constraints, const DualOptions& opts = {});

// NoAN decisions with every split forced to zero and the objective evaluated
// under the non-cancelling rate.
DualSolveReport benchmark_nocancel(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                   const Constraints& constraints, const DualOptions& opts = {});

struct SweepSpec {
  Scheme scheme;
  ProblemKind kind = ProblemKind::OutageMin;
  int q_points = 8;
  double q_max_fraction = 0.98;

  void validate() const;
};

struct BoundaryRow {
  double q_bar = 0.0;
  TradeoffPoint point;  // non-outage probability or ESC vs achieved E[Q]
  double avg_power = 0.0;
  int iterations = 0;
  double dual_gap_estimate = 0.0;
};

// Q̄ on the uniform grid 0 .. q_max_fraction * max feasible Q̄. Grid points are
// independent and solved on up to settings.dual.threads workers; rows come
// back in grid order either way.
std::vector<BoundaryRow> trace_boundary(const SweepSpec& spec, const FadingEnsemble& ensemble,
                                        const SystemParams& params, const SolverSettings& settings = {});

// columns scheme,kind,q_bar,objective,harvested_w,avg_power_w,iterations
void write_boundary_csv(std::ostream& os, const Scheme& scheme, ProblemKind kind,
                        const std::vector<BoundaryRow>& rows);

}  // namespace swipt
