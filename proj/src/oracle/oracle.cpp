#include "oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swipt::oracle {

namespace {

void need_grid(int n, const char* what) {
  if (n < 2) throw_invalid(std::string(what) + ": grid needs at least two points");
}

double grid_at(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

GridL1Result grid_min_L1(const FadingState& state, const DualPoint& dual, const SystemParams& params, int n_p,
                         int n_alpha) {
  need_grid(n_p, "grid_min_L1");
  need_grid(n_alpha, "grid_min_L1");
  GridL1Result best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (int i = 0; i < n_p; ++i) {
    const double p = grid_at(0.0, params.p_peak, i, n_p);
    const double linear = dual.lambda * p - params.zeta * dual.mu * state.g * p;
    for (int j = 0; j < n_alpha; ++j) {
      const double a = grid_at(0.0, 1.0, j, n_alpha);
      const double v = outage_indicator(SchemeKind::AnCancelled, state, {p, a}, params) + linear;
      if (v < best.value) best = {v, p, a};
    }
  }
  return best;
}

GridL2Result grid_max_L2(const FadingState& state, const DualPoint& dual, double alpha_bar,
                         const SystemParams& params, int n_p) {
  need_grid(n_p, "grid_max_L2");
  GridL2Result best{-std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < n_p; ++i) {
    const double p = grid_at(0.0, params.p_peak, i, n_p);
    const double v = secrecy_rate(SchemeKind::AnCancelled, state, {p, alpha_bar}, params) - dual.lambda * p +
                     params.zeta * dual.mu * state.g * p;
    if (v > best.value) best = {v, p};
  }
  return best;
}

double grid_max_rate_over_alpha(const FadingState& state, double p_bar, const SystemParams& params, int n_alpha) {
  need_grid(n_alpha, "grid_max_rate_over_alpha");
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_alpha; ++j) {
    best = std::max(best, secrecy_rate(SchemeKind::AnCancelled, state, {p_bar, grid_at(0.0, 1.0, j, n_alpha)}, params));
  }
  return best;
}

ExtendedPower bisect_rate_inverse(const FadingState& state, double alpha, const SystemParams& params) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw_invalid("bisect_rate_inverse: alpha outside [0, 1]");
  const auto rate = [&](double p) { return secrecy_rate(SchemeKind::AnCancelled, state, {p, alpha}, params); };
  if (rate(0.0) >= params.r0) return ExtendedPower::finite(0.0);
  double hi = params.p_peak * 1e3;
  if (rate(hi) < params.r0) return ExtendedPower::infinite();
  double lo = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (rate(mid) >= params.r0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (std::abs(rate(hi) - params.r0) <= 1e-12 && hi - lo <= 1e-15 * hi) break;
  }
  return ExtendedPower::finite(hi);
}

GridDualResult grid_dual_search(ProblemKind kind, const DualFunction& fn, const DualBox& box, int n) {
  need_grid(n, "grid_dual_search");
  const bool maximize = kind == ProblemKind::OutageMin;
  GridDualResult best;
  best.value = maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double lambda = grid_at(box.lambda_lo, box.lambda_hi, i, n);
    for (int j = 0; j < n; ++j) {
      const DualPoint y{lambda, grid_at(box.mu_lo, box.mu_hi, j, n)};
      const double v = fn(y);
      if (maximize ? v > best.value : v < best.value) best = {y, v};
    }
  }
  return best;
}

GridDualResult zoom_dual_search(ProblemKind kind, const DualFunction& fn, DualBox box, int n, int passes) {
  GridDualResult best = grid_dual_search(kind, fn, box, n);
  // Grow the box while the winner sits on an upper edge.
  for (int k = 0; k < 20; ++k) {
    const bool at_l = best.dual.lambda >= box.lambda_hi;
    const bool at_m = best.dual.mu >= box.mu_hi;
    if (!at_l && !at_m) break;
    if (at_l) box.lambda_hi = box.lambda_lo + 4.0 * (box.lambda_hi - box.lambda_lo);
    if (at_m) box.mu_hi = box.mu_lo + 4.0 * (box.mu_hi - box.mu_lo);
    best = grid_dual_search(kind, fn, box, n);
  }
  for (int k = 1; k < passes; ++k) {
    const double hl = std::max((box.lambda_hi - box.lambda_lo) / 8.0, 2.0 * (box.lambda_hi - box.lambda_lo) / (n - 1));
    const double hm = std::max((box.mu_hi - box.mu_lo) / 8.0, 2.0 * (box.mu_hi - box.mu_lo) / (n - 1));
    box = {std::max(0.0, best.dual.lambda - hl), best.dual.lambda + hl, std::max(0.0, best.dual.mu - hm),
           best.dual.mu + hm};
    const GridDualResult next = grid_dual_search(kind, fn, box, n);
    const bool better = kind == ProblemKind::OutageMin ? next.value > best.value : next.value < best.value;
    if (better) best = next;
  }
  return best;
}

}  // namespace swipt::oracle
