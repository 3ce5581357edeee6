#include "core/alternating.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

void AlternatingOptions::validate(ProblemKind kind) const {
  if (max_rounds < 1) throw_invalid("alternating: max_rounds must be at least 1");
  if (!(obj_tol > 0.0)) throw_invalid("alternating: obj_tol must be positive");
  const bool ok = kind == ProblemKind::OutageMin ? (initial_alpha >= 0.0 && initial_alpha <= 1.0)
                                                 : (initial_alpha >= 0.0 && initial_alpha < 1.0);
  if (!ok) throw_invalid("alternating: initial_alpha outside its admissible range");
}

namespace {

struct Totals {
  double objective = 0.0;
  double avg_power = 0.0;
  double avg_harvest = 0.0;
};

Totals evaluate(ProblemKind kind, const FadingEnsemble& ensemble, const std::vector<PerStateDecision>& d,
                const SystemParams& params) {
  Totals t;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    t.objective += kind == ProblemKind::OutageMin
                       ? outage_indicator(SchemeKind::AnCancelled, ensemble[i], d[i], params)
                       : secrecy_rate(SchemeKind::AnCancelled, ensemble[i], d[i], params);
    t.avg_power += d[i].p;
    t.avg_harvest += harvested_power(ensemble[i], d[i].p, params);
  }
  const double inv = 1.0 / static_cast<double>(ensemble.size());
  t.objective *= inv;
  t.avg_power *= inv;
  t.avg_harvest *= inv;
  return t;
}

bool improves(ProblemKind kind, double candidate, double incumbent) {
  return kind == ProblemKind::OutageMin ? candidate <= incumbent : candidate >= incumbent;
}

DualSolveReport alternate(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                          const Constraints& constraints, const AlternatingOptions& opts) {
  params.validate();
  opts.validate(kind);
  const std::size_t n = ensemble.size();
  const double alpha_cap = kind == ProblemKind::EscMax ? 1.0 - kAlphaUpperClip : 1.0;

  std::vector<double> alphas(n, opts.initial_alpha);
  std::vector<PerStateDecision> current;
  DualSolveReport best;
  double prev = 0.0;
  int total_iters = 0;
  std::vector<RoundTraceRow> rounds;

  for (int round = 0; round < opts.max_rounds; ++round) {
    // (a) powers for the current splits
    const auto policy = make_fixed_split_policy(kind, ensemble, params, alphas, opts.dual);
    DualSolveReport rep = ellipsoid_solve(*policy, ensemble, params, constraints, opts.dual);
    total_iters += rep.iterations;

    std::vector<PerStateDecision> next = rep.decisions;
    if (round > 0) {
      // Keep the previous powers if the new allocation is worse at these splits.
      std::vector<PerStateDecision> kept(n);
      for (std::size_t i = 0; i < n; ++i) kept[i] = {current[i].p, alphas[i]};
      const Totals old_t = evaluate(kind, ensemble, kept, params);
      if (!improves(kind, rep.objective, old_t.objective)) next = std::move(kept);
    }

    // (b) splits for the chosen powers
    for (std::size_t i = 0; i < n; ++i) {
      if (next[i].p > 0.0) next[i].alpha = std::min(optimal_split_given_power(ensemble[i], next[i].p, params), alpha_cap);
    }
    // The split update maximizes the rate, so it cannot hurt, but a clipped
    // split on a tie could; guard anyway.
    Totals t = evaluate(kind, ensemble, next, params);
    if (round > 0 && !improves(kind, t.objective, prev)) {
      next = current;
      t = evaluate(kind, ensemble, next, params);
    }

    const bool unchanged = round > 0 && std::equal(next.begin(), next.end(), current.begin(),
                                                   [](const PerStateDecision& a, const PerStateDecision& b) {
                                                     return std::abs(a.p - b.p) <= 1e-12 &&
                                                            std::abs(a.alpha - b.alpha) <= 1e-12;
                                                   });
    const double change = std::abs(t.objective - prev);
    const bool converged = round > 0 && change <= opts.obj_tol * std::max(std::abs(t.objective), 1e-12);

    current = std::move(next);
    for (std::size_t i = 0; i < n; ++i) alphas[i] = current[i].alpha;
    prev = t.objective;
    rounds.push_back({round, t.objective, t.avg_power, t.avg_harvest});

    best.kind = kind;
    best.dual = rep.dual;
    best.dual_value = rep.dual_value;
    best.objective = t.objective;
    best.avg_power = t.avg_power;
    best.avg_harvest = t.avg_harvest;
    best.trace = std::move(rep.trace);

    if (unchanged || converged) break;
  }

  best.decisions = std::move(current);
  best.iterations = total_iters;
  best.rounds = std::move(rounds);
  // Measured against the dual of the last fixed-split subproblem.
  best.dual_gap_estimate =
      kind == ProblemKind::OutageMin ? best.objective - best.dual_value : best.dual_value - best.objective;
  const double tol = opts.dual.feas_tol;
  best.feasible = best.avg_power <= params.p_avg * (1.0 + tol) && best.avg_harvest >= constraints.q_bar * (1.0 - tol);
  return best;
}

}  // namespace

DualSolveReport solve_p1_alternating(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints, const AlternatingOptions& opts) {
  return alternate(ProblemKind::OutageMin, ensemble, params, constraints, opts);
}

DualSolveReport solve_p2_alternating(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints, const AlternatingOptions& opts) {
  return alternate(ProblemKind::EscMax, ensemble, params, constraints, opts);
}

DualSolveReport solve_fixed_alpha(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                  const Constraints& constraints, double alpha_bar, const DualOptions& opts) {
  const auto policy =
      make_fixed_split_policy(kind, ensemble, params, std::vector<double>(ensemble.size(), alpha_bar), opts);
  return ellipsoid_solve(*policy, ensemble, params, constraints, opts);
}

}  // namespace swipt
