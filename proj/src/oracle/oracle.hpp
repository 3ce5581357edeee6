#pragma once

// Brute-force reference computations used by the tests and `verify`. Nothing
// here calls the per-state or dual solvers; only the model evaluators.

#include <functional>

#include "core/extended_power.hpp"
#include "core/model.hpp"

namespace swipt::oracle {

struct GridL1Result {
  double value = 0.0;
  double p = 0.0;
  double alpha = 0.0;
};

struct GridL2Result {
  double value = 0.0;
  double p = 0.0;
};

// min of X + lambda p - zeta mu g p over the uniform grid [0, p_peak] x [0, 1].
GridL1Result grid_min_L1(const FadingState& state, const DualPoint& dual, const SystemParams& params, int n_p,
                         int n_alpha);

// max of R(alpha_bar, p) - lambda p + zeta mu g p over the uniform grid on [0, p_peak].
GridL2Result grid_max_L2(const FadingState& state, const DualPoint& dual, double alpha_bar,
                         const SystemParams& params, int n_p);

// max over the uniform split grid on [0, 1] of R(alpha, p_bar).
double grid_max_rate_over_alpha(const FadingState& state, double p_bar, const SystemParams& params, int n_alpha);

// Smallest p with R(alpha, p) >= r0, by bisection on [0, 1e3 p_peak].
ExtendedPower bisect_rate_inverse(const FadingState& state, double alpha, const SystemParams& params);

struct DualBox {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double mu_lo = 0.0;
  double mu_hi = 0.0;
};

struct GridDualResult {
  DualPoint dual;
  double value = 0.0;
};

using DualFunction = std::function<double(const DualPoint&)>;

// n x n evaluation of `fn` over the box (endpoints included); returns the best
// point, the maximum for OutageMin and the minimum for EscMax.
GridDualResult grid_dual_search(ProblemKind kind, const DualFunction& fn, const DualBox& box, int n);

// grid_dual_search on a box that is first grown (x4 per side) until the winner
// is off its upper edges, then shrunk 4x around the winner on each further
// pass, clipped to the non-negative orthant.
GridDualResult zoom_dual_search(ProblemKind kind, const DualFunction& fn, DualBox box, int n, int passes);

}  // namespace swipt::oracle
