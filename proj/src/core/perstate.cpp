#include "core/perstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace swipt {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kInvPhi = 0.61803398874989484820;

// Golden-section search on [lo, hi]. `better(u, v)` is true when objective
// value u is strictly preferred to v; ties keep the left point.
template <class Fn, class Better>
auto golden_section(Fn&& f, double lo, double hi, double rel_tol, Better better) {
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  auto f1 = f(x1);
  auto f2 = f(x2);
  const double stop = rel_tol * (hi - lo);
  for (int it = 0; it < 200 && b - a > stop; ++it) {
    if (better(f2, f1)) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return better(f2, f1) ? std::pair{x2, f2} : std::pair{x1, f1};
}

double eval_poly(double a, double b, double c, double d, double x) { return ((a * x + b) * x + c) * x + d; }

double newton_polish(double a, double b, double c, double d, double x) {
  double fx = eval_poly(a, b, c, d, x);
  for (int it = 0; it < 8 && fx != 0.0; ++it) {
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (df == 0.0) break;
    const double next = x - fx / df;
    const double fn = eval_poly(a, b, c, d, next);
    if (!(std::abs(fn) < std::abs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

void quadratic_roots(double a, double b, double c, RealRoots& out) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) {
    out.set_identically_zero();
    return;
  }
  if (std::abs(a) <= 1e-13 * scale) {
    if (std::abs(b) <= 1e-13 * scale) return;  // nonzero constant: no roots
    out.push(-c / b);
    return;
  }
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -1e-14 * b * b) return;
    disc = 0.0;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {  // b == 0 and c == 0
    out.push(0.0);
    out.push(0.0);
    return;
  }
  out.push(q / a);
  out.push(c / q);
}

}  // namespace

// ---------------------------------------------------------------------------
// small containers

void RealRoots::sort() { std::sort(values_.begin(), values_.begin() + size_); }

void CandidateSet::sort_unique(double tol) {
  std::sort(values_.begin(), values_.begin() + size_);
  std::size_t w = 0;
  for (std::size_t r = 0; r < size_; ++r) {
    if (w == 0 || values_[r] - values_[w - 1] > tol) values_[w++] = values_[r];
  }
  size_ = w;
}

double CubicCoefficients::e(double p) const {
  return (sigma1_sq + (1.0 - alpha_bar) * p * h) * (sigma2_sq + alpha_bar * p * g) * (sigma2_sq + p * g) * kLn2;
}

// ---------------------------------------------------------------------------
// minimum power for the target rate

ExtendedPower min_power_for_rate(double alpha, const FadingState& state, const SystemParams& params) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw_invalid("min_power_for_rate: alpha outside [0, 1]");
  const double r0 = params.r0;
  if (r0 <= 0.0) return ExtendedPower::finite(0.0);
  if (alpha >= 1.0 || state.h <= 0.0) return ExtendedPower::infinite();

  const double h = state.h;
  const double g = state.g;
  const double s1 = params.sigma1_sq;
  const double s2 = params.sigma2_sq;
  const double t = std::exp2(r0);

  double p = 0.0;
  if (alpha == 0.0) {
    if (!(h > s1 * t * g / s2)) return ExtendedPower::infinite();
    p = (t - 1.0) / (h / s1 - t * g / s2);
  } else {
    // (s1 + (1-a) h p)(a g p + s2) = t s1 (g p + s2), written as qa p^2 + qb p + qc = 0.
    const double qa = alpha * (1.0 - alpha) * h * g;
    const double qb = alpha * s1 * g + (1.0 - alpha) * s2 * h - t * s1 * g;
    const double qc = s1 * s2 * (1.0 - t);
    if (qa == 0.0) {
      if (!(qb > 0.0)) return ExtendedPower::infinite();
      p = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;  // qc < 0, so no cancellation
      const double root = std::sqrt(disc);
      p = qb > 0.0 ? (-2.0 * qc) / (qb + root) : (-qb + root) / (2.0 * qa);
    }
  }
  if (!std::isfinite(p) || p < 0.0) return ExtendedPower::infinite();

  for (int it = 0; it < 64 && secrecy_rate(SchemeKind::AnCancelled, state, {p, alpha}, params) < r0; ++it) {
    p = std::nextafter(p * (1.0 + 0x1.0p-52), std::numeric_limits<double>::infinity());
  }
  return ExtendedPower::finite(p);
}

SplitSearchResult search_min_split(const FadingState& state, const SystemParams& params, double tol,
                                   int grid_points) {
  if (grid_points < 2) throw_invalid("search_min_split: need at least two grid points");
  const double step = 1.0 / (grid_points - 1);
  int best_i = -1;
  ExtendedPower best = ExtendedPower::infinite();
  for (int i = 0; i < grid_points; ++i) {
    const double a = i == grid_points - 1 ? 1.0 : i * step;
    const ExtendedPower p = min_power_for_rate(a, state, params);
    if (p < best) {
      best = p;
      best_i = i;
    }
  }
  if (best_i < 0) return {0.0, ExtendedPower::infinite()};

  double alpha = best_i * step;
  const double lo = std::max(0.0, (best_i - 1) * step);
  const double hi = std::min(1.0, (best_i + 1) * step);
  auto f = [&](double a) { return min_power_for_rate(a, state, params); };
  auto [a_ref, p_ref] = golden_section(f, lo, hi, tol * 1e-3,
                                       [](const ExtendedPower& u, const ExtendedPower& v) { return u < v; });
  if (p_ref < best) {
    alpha = a_ref;
    best = p_ref;
  }
  return {alpha, best};
}

// ---------------------------------------------------------------------------
// outage subproblems

namespace {

// Shared case analysis: `p_min` is the minimum power to avoid outage with split
// `alpha_on`; `alpha_peak_fail` is used when peak power is forced yet outage
// remains unavoidable.
PerStateDecision outage_case_split(const FadingState& state, const DualPoint& dual, const SystemParams& params,
                                   const ExtendedPower& p_min, double alpha_on, double alpha_peak_fail) {
  const double lambda = dual.lambda;
  const double mu = dual.mu;
  const double zeta = params.zeta;
  // mu == 0: lambda/(zeta mu) is read as +inf and peak power is never forced.
  if (mu > 0.0 && state.g > lambda / (zeta * mu)) {
    return {params.p_peak, p_min.within(params.p_peak) ? alpha_on : alpha_peak_fail};
  }
  const double slope = lambda - zeta * mu * state.g;  // >= 0 on this branch
  const double limit = slope > 0.0 ? std::min(1.0 / slope, params.p_peak) : params.p_peak;
  if (p_min.within(limit)) return {p_min.value(), alpha_on};
  return {0.0, 0.0};
}

}  // namespace

PerStateDecision solve_p1_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params,
                              const SplitSearchResult& split) {
  return outage_case_split(state, dual, params, split.p_min, split.alpha_tilde, 0.0);
}

PerStateDecision solve_p1_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params) {
  return solve_p1_sub(state, dual, params, search_min_split(state, params));
}

PerStateDecision solve_p11_sub(const FadingState& state, const DualPoint& dual, double alpha_bar,
                               const SystemParams& params, const ExtendedPower& p1_alpha_bar) {
  PerStateDecision d = outage_case_split(state, dual, params, p1_alpha_bar, alpha_bar, alpha_bar);
  d.alpha = alpha_bar;
  return d;
}

PerStateDecision solve_p11_sub(const FadingState& state, const DualPoint& dual, double alpha_bar,
                               const SystemParams& params) {
  if (!(alpha_bar >= 0.0 && alpha_bar <= 1.0)) throw_invalid("solve_p11_sub: alpha_bar outside [0, 1]");
  return solve_p11_sub(state, dual, alpha_bar, params, min_power_for_rate(alpha_bar, state, params));
}

double optimal_split_given_power(const FadingState& state, double p_bar, const SystemParams& params) {
  if (!(p_bar > 0.0)) throw_invalid("optimal_split_given_power: p_bar must be positive");
  if (state.h <= 0.0) return 1.0;  // x -> +inf
  if (state.g <= 0.0) return 0.0;  // x -> -inf
  const double x = (params.sigma1_sq / state.h - params.sigma2_sq / state.g) / p_bar;
  if (x < -1.0) return 0.0;
  if (x < 1.0) return 0.5 + 0.5 * x;
  return 1.0;
}

double solve_nocancel_split(const FadingState&, double, const SystemParams&) { return 0.0; }

// ---------------------------------------------------------------------------
// ESC subproblems

CubicCoefficients cubic_coefficients(const FadingState& state, const DualPoint& dual, double alpha_bar,
                                     const SystemParams& params) {
  const double h = state.h;
  const double g = state.g;
  const double s1 = params.sigma1_sq;
  const double s2 = params.sigma2_sq;
  const double ab = alpha_bar;
  const double c = dual.lambda - dual.mu * params.zeta * g;  // lambda - mu zeta g

  CubicCoefficients k;
  k.alpha_bar = ab;
  k.h = h;
  k.g = g;
  k.sigma1_sq = s1;
  k.sigma2_sq = s2;
  k.f = g * s2 * c * (1.0 + ab) * kLn2;
  k.a = ab * h * g * g * c * (ab - 1.0) * kLn2;
  k.b = h * (ab - 1.0) * k.f - ab * h * g * g * (ab - 1.0) - ab * g * g * s1 * c * kLn2;
  k.c = h * s2 * s2 * c * (ab - 1.0) * kLn2 - s1 * k.f - h * g * s2 * (ab - 1.0) * (ab - 1.0) -
        (h * g * s2 + ab * h * g * s2) * (ab - 1.0);
  k.d = g * s2 * s1 * (ab - 1.0) - h * s2 * s2 * (ab - 1.0) - s2 * s2 * s1 * c * kLn2;
  return k;
}

RealRoots real_roots_cubic(double a, double b, double c, double d) {
  RealRoots out;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) {
    out.set_identically_zero();
    return out;
  }
  const double an = a / scale;
  const double bn = b / scale;
  const double cn = c / scale;
  const double dn = d / scale;
  const double lower = std::max({std::abs(bn), std::abs(cn), std::abs(dn)});

  if (std::abs(an) <= 1e-13 * lower) {
    quadratic_roots(bn, cn, dn, out);
  } else {
    const double B = bn / an;
    const double C = cn / an;
    const double D = dn / an;
    const double p = C - B * B / 3.0;
    const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    const double shift = -B / 3.0;
    if (disc > 0.0) {
      const double u = std::cbrt(-0.5 * q - std::copysign(std::sqrt(disc), q));
      const double t = u != 0.0 ? u - p / (3.0 * u) : 0.0;
      out.push(t + shift);
    } else if (p == 0.0) {
      out.push(shift);
      out.push(shift);
      out.push(shift);
    } else {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      constexpr double kTwoPiOver3 = 2.0943951023931954923;
      for (int k = 0; k < 3; ++k) out.push(m * std::cos(theta - k * kTwoPiOver3) + shift);
    }
  }
  if (out.identically_zero()) return out;

  RealRoots polished;
  for (double r : out) polished.push(newton_polish(an, bn, cn, dn, r));
  polished.sort();
  return polished;
}

ExtendedPower rate_threshold(const FadingState& state, double alpha_bar, const SystemParams& params) {
  const double h = state.h;
  const double g = state.g;
  const double s1 = params.sigma1_sq;
  const double s2 = params.sigma2_sq;
  if (h <= 0.0 || alpha_bar >= 1.0) return ExtendedPower::infinite();
  if (g <= 0.0) return ExtendedPower::finite(0.0);
  if (alpha_bar <= 0.0) {
    return h * s2 > g * s1 ? ExtendedPower::finite(0.0) : ExtendedPower::infinite();
  }
  const double th = s1 / (alpha_bar * h) - s2 / (alpha_bar * g);
  return ExtendedPower::finite(th > 0.0 ? th : 0.0);
}

CandidateSet candidate_set(const RealRoots& roots, const ExtendedPower& threshold_p, double p_peak) {
  CandidateSet out;
  out.push(0.0);
  out.push(p_peak);
  const double slack = 1e-12 * p_peak;
  for (double r : roots) {
    if (r >= -slack && r <= p_peak + slack) out.push(std::clamp(r, 0.0, p_peak));
  }
  if (threshold_p.is_finite() && threshold_p.value() > 0.0 && threshold_p.value() < p_peak) {
    out.push(threshold_p.value());
  }
  out.sort_unique(slack);
  return out;
}

double lagrangian_p2(const FadingState& state, double p, double alpha, const DualPoint& dual,
                     const SystemParams& params) {
  return secrecy_rate(SchemeKind::AnCancelled, state, {p, alpha}, params) - dual.lambda * p +
         dual.mu * harvested_power(state, p, params);
}

double solve_p2_sub_fixed_alpha(const FadingState& state, const DualPoint& dual, double alpha_bar,
                                const SystemParams& params) {
  if (!(alpha_bar >= 0.0 && alpha_bar < 1.0)) throw_invalid("solve_p2_sub_fixed_alpha: alpha_bar outside [0, 1)");
  const CubicCoefficients k = cubic_coefficients(state, dual, alpha_bar, params);
  const RealRoots roots = real_roots_cubic(k.a, k.b, k.c, k.d);
  const CandidateSet cands = candidate_set(roots, rate_threshold(state, alpha_bar, params), params.p_peak);
  double best_p = 0.0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (double p : cands) {
    const double v = lagrangian_p2(state, p, alpha_bar, dual, params);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  return best_p;
}

PerStateDecision solve_p2_sub(const FadingState& state, const DualPoint& dual, const SystemParams& params,
                              int alpha_grid_n) {
  if (alpha_grid_n < 2) throw_invalid("solve_p2_sub: alpha_grid_n must be at least 2");
  const double top = 1.0 - kAlphaUpperClip;
  const double step = top / (alpha_grid_n - 1);
  struct Value {
    double v;
    double p;
  };
  auto f = [&](double a) {
    const double p = solve_p2_sub_fixed_alpha(state, dual, a, params);
    return Value{lagrangian_p2(state, p, a, dual, params), p};
  };
  int best_i = 0;
  Value best = f(0.0);
  for (int i = 1; i < alpha_grid_n; ++i) {
    const Value v = f(i == alpha_grid_n - 1 ? top : i * step);
    if (v.v > best.v) {
      best = v;
      best_i = i;
    }
  }
  double alpha = best_i == alpha_grid_n - 1 ? top : best_i * step;
  const double lo = std::max(0.0, (best_i - 1) * step);
  const double hi = std::min(top, (best_i + 1) * step);
  auto [a_ref, v_ref] = golden_section(f, lo, hi, 1e-6, [](const Value& u, const Value& w) { return u.v > w.v; });
  if (v_ref.v > best.v) {
    alpha = a_ref;
    best = v_ref;
  }
  return {best.p, alpha};
}

PerStateDecision solve_p2_sub_envelope(const FadingState& state, const DualPoint& dual,
                                       const SystemParams& params) {
  const double h = state.h;
  const double g = state.g;
  const double s1 = params.sigma1_sq;
  const double s2 = params.sigma2_sq;
  const double p_peak = params.p_peak;
  const double cl = (dual.lambda - dual.mu * params.zeta * g) * kLn2;

  CandidateSet cands;
  cands.push(0.0);
  cands.push(p_peak);
  auto add_roots = [&](double qa, double qb, double qc, double lo, double hi) {
    for (double r : real_roots_cubic(0.0, qa, qb, qc)) {
      if (r > lo && r < hi) cands.push(r);
    }
  };

  if (h > 0.0) {
    // x(p) = k / p; the split is 0 below |k| when k < 0, 1 below k when k > 0,
    // and (1 + x) / 2 above |k|.
    const double k = g > 0.0 ? s1 / h - s2 / g : -std::numeric_limits<double>::infinity();
    const double knee = std::abs(k);
    if (k < 0.0) {
      // split 0: h/(s1+hp) - g/(s2+gp) = c ln2
      add_roots(cl * h * g, cl * (h * s2 + g * s1), cl * s1 * s2 - (h * s2 - g * s1), 0.0,
                std::min(knee, p_peak));
    }
    if (g > 0.0 && knee < p_peak) {
      // middle split: 2/(p+s) - 1/(p+b) = c ln2
      const double s = s1 / h + s2 / g;
      const double b = s2 / g;
      add_roots(cl, cl * (s + b) - 1.0, cl * s * b - 2.0 * b + s, knee, p_peak);
      if (knee > 0.0) cands.push(knee);
    }
  }
  cands.sort_unique(0.0);

  PerStateDecision best{0.0, 0.0};
  double best_v = -std::numeric_limits<double>::infinity();
  for (double p : cands) {
    double alpha = p > 0.0 ? optimal_split_given_power(state, p, params) : 0.0;
    alpha = std::min(alpha, 1.0 - kAlphaUpperClip);
    const double v = lagrangian_p2(state, p, alpha, dual, params);
    if (v > best_v) {
      best_v = v;
      best = {p, alpha};
    }
  }
  return best;
}

}  // namespace swipt
