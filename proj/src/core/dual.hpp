#pragma once

// Lagrange dual machinery shared by every scheme. Relaxing the average-power
// and average-harvest constraints with multipliers (lambda, mu) splits the
// ensemble problem into independent per-state subproblems; the multipliers are
// searched with a two-dimensional central-cut ellipsoid method and a primal
// policy is recovered from the best dual point.

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "core/extended_power.hpp"
#include "core/model.hpp"
#include "core/perstate.hpp"

namespace swipt {

struct Constraints {
  double q_bar = 0.0;  // average harvested-power floor [W]
};

// How the joint ESC subproblem is solved inside the dual.
enum class P2Method {
  Envelope,  // closed form through the optimal-split envelope
  TwoStage,  // alpha grid + golden refinement over the fixed-split solver
};

struct DualOptions {
  double tol = 1e-6;        // ellipsoid stops when both half-widths fall below tol * multiplier scale
  int max_iter = 500;
  double feas_tol = 1e-4;   // relative tolerance on both coupled constraints
  int threads = 1;
  bool record_trace = false;
  int recovery_rounds = 40;
  P2Method p2_method = P2Method::Envelope;
  int alpha_grid_n = kDefaultAlphaGrid;
};

struct EllipsoidTraceRow {
  int iter = 0;
  double lambda = 0.0;
  double mu = 0.0;
  double dual_value = 0.0;  // NaN on feasibility cuts (centre outside the orthant)
  double subgrad_p = 0.0;
  double subgrad_q = 0.0;
  double log_volume = 0.0;  // log sqrt(det P) before this iteration's cut
};

struct RoundTraceRow {
  int round = 0;
  double objective = 0.0;
  double avg_power = 0.0;
  double avg_harvest = 0.0;
};

struct DualSolveReport {
  ProblemKind kind = ProblemKind::OutageMin;
  DualPoint dual;
  std::vector<PerStateDecision> decisions;
  double objective = 0.0;  // outage probability (OutageMin) or ergodic secrecy rate (EscMax)
  double avg_power = 0.0;
  double avg_harvest = 0.0;
  int iterations = 0;
  double dual_value = 0.0;
  // primal - dual for OutageMin, dual - primal for EscMax; >= 0 up to tolerances.
  double dual_gap_estimate = 0.0;
  bool feasible = false;
  std::vector<EllipsoidTraceRow> trace;
  std::vector<RoundTraceRow> rounds;  // alternating solvers only
};

// Per-state decision rule for one problem family. Implementations precompute
// whatever does not depend on the multipliers.
class SubproblemPolicy {
 public:
  virtual ~SubproblemPolicy() = default;
  virtual ProblemKind kind() const = 0;
  virtual PerStateDecision decide(std::size_t i, const DualPoint& dual) const = 0;
  // Outage indicator (OutageMin) or secrecy rate (EscMax) of a decision.
  virtual double objective(std::size_t i, const PerStateDecision& d) const = 0;
  // OutageMin: cheapest decision that avoids outage in state i.
  virtual std::pair<ExtendedPower, double> serve_cost(std::size_t i) const;
  // EscMax: the split this policy pairs with power p in state i.
  virtual PerStateDecision at_power(std::size_t i, double p) const;
};

std::unique_ptr<SubproblemPolicy> make_optimal_policy(ProblemKind kind, const FadingEnsemble& ensemble,
                                                      const SystemParams& params, const DualOptions& opts = {});

// Split fixed per state (one entry per state). For EscMax every split must be < 1.
std::unique_ptr<SubproblemPolicy> make_fixed_split_policy(ProblemKind kind, const FadingEnsemble& ensemble,
                                                          const SystemParams& params, std::vector<double> alphas,
                                                          const DualOptions& opts = {});

struct DualEvaluation {
  double value = 0.0;
  std::vector<PerStateDecision> decisions;
  double objective = 0.0;
  double avg_power = 0.0;
  double avg_harvest = 0.0;
};

DualEvaluation dual_value(const SubproblemPolicy& policy, const FadingEnsemble& ensemble, const DualPoint& dual,
                          const SystemParams& params, const Constraints& constraints, int threads = 1);
DualEvaluation dual_value(ProblemKind kind, const FadingEnsemble& ensemble, const DualPoint& dual,
                          const SystemParams& params, const Constraints& constraints);

// (E[p] - p_avg, q_bar - E[Q]); the optimum lies in the half-plane this vector points into.
std::pair<double, double> subgradient(double avg_power, double avg_harvest, const SystemParams& params,
                                      const Constraints& constraints);

struct FeasibilityVerdict {
  double max_q_bar = 0.0;
  bool feasible = false;
};

// Largest average harvest reachable under the power constraints: states sorted
// by g descending get peak power until the average budget runs out.
FeasibilityVerdict check_feasibility(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints);

DualSolveReport ellipsoid_solve(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                const SystemParams& params, const Constraints& constraints,
                                const DualOptions& opts = {});
DualSolveReport ellipsoid_solve(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                const Constraints& constraints, const DualOptions& opts = {});

// Feasible primal policy from the best dual point. OutageMin: the service set
// at the dual point (lambda raised by bisection until it fits the budget) is
// given minimum serving powers, the harvest floor is met by topping up the
// highest-g states, and leftover budget serves the cheapest outage states.
// EscMax: decisions sampled around the dual point are time-shared per state
// with weights from a small linear program over the two coupled constraints;
// if no mixture is feasible, lambda and mu are bisected alternately.
// `best_dual_value` feeds the reported gap.
DualSolveReport recover_primal(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                               const DualPoint& best_dual, double best_dual_value, const SystemParams& params,
                               const Constraints& constraints, const DualOptions& opts = {});

// Multiplier scales used to centre and size the initial ellipsoid.
DualPoint multiplier_scale(const FadingEnsemble& ensemble, const SystemParams& params);

}  // namespace swipt
