#pragma once

// Per-fading-state subproblem solvers. With the multipliers (lambda, mu) fixed
// the dual function separates over states; every routine here solves one of
// those scalar problems for a single (h, g) pair.
//
// Notation used in comments:
//   R(a, p)   secrecy rate with split a and power p (artificial noise cancelled at the IR)
//   p1(a)     smallest power reaching R(a, p) >= r0
//   L1(p, a)  X + lambda*p - zeta*mu*g*p   (X = outage indicator)
//   L2(p, a)  R(a, p) - lambda*p + zeta*mu*g*p

#include <array>
#include <cstddef>

#include "core/extended_power.hpp"
#include "core/model.hpp"

namespace swipt {

inline constexpr int kDefaultAlphaGrid = 1001;
inline constexpr double kAlphaUpperClip = 1e-9;  // ESC splits stay below 1 - kAlphaUpperClip

// Numerator coefficients of dL2/dp on the rate-positive branch,
// dL2/dp = (a p^3 + b p^2 + c p + d) / e(p). `f` is the shared subexpression
// substituted into b and c.
struct CubicCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double f = 0.0;

  // Inputs needed by the p-dependent denominator.
  double alpha_bar = 0.0;
  double h = 0.0;
  double g = 0.0;
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;

  double numerator(double p) const { return ((a * p + b) * p + c) * p + d; }
  // Strictly positive for any p >= 0.
  double e(double p) const;
};

// Up to three real roots, sorted ascending and counted with multiplicity.
class RealRoots {
 public:
  void push(double r) { values_[size_++] = r; }
  void set_identically_zero() { identically_zero_ = true; }

  bool identically_zero() const noexcept { return identically_zero_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  double operator[](std::size_t i) const { return values_[i]; }
  const double* begin() const noexcept { return values_.data(); }
  const double* end() const noexcept { return values_.data() + size_; }

  void sort();

 private:
  std::array<double, 3> values_{};
  std::size_t size_ = 0;
  bool identically_zero_ = false;
};

// Sorted, de-duplicated powers in [0, p_peak] among which max_p L2(p, a) lies.
class CandidateSet {
 public:
  void push(double p) { values_[size_++] = p; }
  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const { return values_[i]; }
  const double* begin() const noexcept { return values_.data(); }
  const double* end() const noexcept { return values_.data() + size_; }
  void sort_unique(double tol);

 private:
  std::array<double, 6> values_{};
  std::size_t size_ = 0;
};

struct SplitSearchResult {
  double alpha_tilde = 0.0;
  ExtendedPower p_min = ExtendedPower::infinite();
};

// Minimum power reaching the target rate params.r0 for a fixed split. When the
// result is finite the returned power satisfies R(alpha, p) >= r0 in floating
// point as well (it is nudged up by a few ulps when rounding lands below).
ExtendedPower min_power_for_rate(double alpha, const FadingState& state, const SystemParams& params);

// argmin over alpha in [0, 1] of p1(alpha): uniform grid then golden-section
// refinement inside the winning cell.
SplitSearchResult search_min_split(const FadingState& state, const SystemParams& params,
                                   double tol = 1e-6, int grid_points = kDefaultAlphaGrid);

// Outage subproblem, joint in (p, alpha).
PerStateDecision solve_p1_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params);
PerStateDecision solve_p1_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params,
                              const SplitSearchResult& split);

// Outage subproblem with the split fixed to alpha_bar.
PerStateDecision solve_p11_sub(const FadingState& state, const DualPoint& dual, double alpha_bar,
                               const SystemParams& params);
PerStateDecision solve_p11_sub(const FadingState& state, const DualPoint& dual, double alpha_bar,
                               const SystemParams& params, const ExtendedPower& p1_alpha_bar);

// Split maximizing R(alpha, p_bar). Requires p_bar > 0.
double optimal_split_given_power(const FadingState& state, double p_bar, const SystemParams& params);

CubicCoefficients cubic_coefficients(const FadingState& state, const DualPoint& dual, double alpha_bar,
                                     const SystemParams& params);

// Real roots of a x^3 + b x^2 + c x + d. Leading coefficients that are
// negligible relative to the rest fall back to the quadratic and then linear
// solvers; every root is polished with Newton steps on the full cubic.
RealRoots real_roots_cubic(double a, double b, double c, double d);

// Power above which R(alpha_bar, p) is positive. Finite(0) when the rate is
// positive for every p > 0; Infinite when it is never positive.
ExtendedPower rate_threshold(const FadingState& state, double alpha_bar, const SystemParams& params);

// In-range roots plus {0, p_peak} plus the rate threshold when it lies in (0, p_peak).
CandidateSet candidate_set(const RealRoots& roots, const ExtendedPower& threshold_p, double p_peak);

double lagrangian_p2(const FadingState& state, double p, double alpha, const DualPoint& dual,
                     const SystemParams& params);

// argmax over p in [0, p_peak] of L2(p, alpha_bar); ties go to the smaller p.
double solve_p2_sub_fixed_alpha(const FadingState& state, const DualPoint& dual, double alpha_bar,
                                const SystemParams& params);

// ESC subproblem, joint in (p, alpha): grid over alpha of the fixed-split
// optimum followed by golden-section refinement around the grid winner.
PerStateDecision solve_p2_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params,
                              int alpha_grid_n = kDefaultAlphaGrid);

// Same problem solved through the optimal-split envelope: substituting the
// rate-maximizing split for every p leaves a one-dimensional problem in p whose
// stationary points are roots of one quadratic per split regime. Exact and
// O(1); the dual solvers use it on large ensembles.
PerStateDecision solve_p2_sub_envelope(const FadingState& state, const DualPoint& dual,
                                       const SystemParams& params);

// The split for the non-cancelling benchmark is always zero.
double solve_nocancel_split(const FadingState& state, double p_bar, const SystemParams& params);

}  // namespace swipt
