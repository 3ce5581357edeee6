#pragma once

// Suboptimal solvers: alternate between a power allocation for fixed splits
// (ellipsoid over the fixed-split subproblem) and a per-state split update for
// fixed powers. Also the one-shot Fixed-alpha heuristic.

#include "core/dual.hpp"

namespace swipt {

struct AlternatingOptions {
  int max_rounds = 30;
  double obj_tol = 1e-6;       // relative objective change that ends the loop
  double initial_alpha = 0.5;  // applied to every state before the first round
  DualOptions dual;

  void validate(ProblemKind kind) const;
};

// Round trace lands in report.rounds; entry k is the objective after round k.
DualSolveReport solve_p1_alternating(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints, const AlternatingOptions& opts = {});
DualSolveReport solve_p2_alternating(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints, const AlternatingOptions& opts = {});

DualSolveReport solve_fixed_alpha(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                  const Constraints& constraints, double alpha_bar, const DualOptions& opts = {});

}  // namespace swipt
