#include "core/dual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "core/parallel.hpp"

namespace swipt {

std::pair<ExtendedPower, double> SubproblemPolicy::serve_cost(std::size_t) const {
  return {ExtendedPower::infinite(), 0.0};
}

PerStateDecision SubproblemPolicy::at_power(std::size_t, double) const {
  throw Error(ErrorCode::kInvalidArgument, "this policy cannot pair a split with an arbitrary power");
}

namespace {

class OptimalOutagePolicy final : public SubproblemPolicy {
 public:
  OptimalOutagePolicy(const FadingEnsemble& ensemble, const SystemParams& params, int threads)
      : ensemble_(ensemble), params_(params), splits_(ensemble.size()) {
    parallel_for(ensemble.size(), threads, [&](std::size_t i) { splits_[i] = search_min_split(ensemble[i], params); });
  }
  ProblemKind kind() const override { return ProblemKind::OutageMin; }
  PerStateDecision decide(std::size_t i, const DualPoint& dual) const override {
    return solve_p1_sub(ensemble_[i], dual, params_, splits_[i]);
  }
  double objective(std::size_t i, const PerStateDecision& d) const override {
    return outage_indicator(SchemeKind::AnCancelled, ensemble_[i], d, params_);
  }
  std::pair<ExtendedPower, double> serve_cost(std::size_t i) const override {
    return {splits_[i].p_min, splits_[i].alpha_tilde};
  }

 private:
  const FadingEnsemble& ensemble_;
  SystemParams params_;
  std::vector<SplitSearchResult> splits_;
};

class FixedSplitOutagePolicy final : public SubproblemPolicy {
 public:
  FixedSplitOutagePolicy(const FadingEnsemble& ensemble, const SystemParams& params, std::vector<double> alphas,
                         int threads)
      : ensemble_(ensemble), params_(params), alphas_(std::move(alphas)) {
    p1_.assign(ensemble.size(), ExtendedPower::infinite());
    parallel_for(ensemble.size(), threads,
                 [&](std::size_t i) { p1_[i] = min_power_for_rate(alphas_[i], ensemble[i], params); });
  }
  ProblemKind kind() const override { return ProblemKind::OutageMin; }
  PerStateDecision decide(std::size_t i, const DualPoint& dual) const override {
    return solve_p11_sub(ensemble_[i], dual, alphas_[i], params_, p1_[i]);
  }
  double objective(std::size_t i, const PerStateDecision& d) const override {
    return outage_indicator(SchemeKind::AnCancelled, ensemble_[i], d, params_);
  }
  std::pair<ExtendedPower, double> serve_cost(std::size_t i) const override { return {p1_[i], alphas_[i]}; }

 private:
  const FadingEnsemble& ensemble_;
  SystemParams params_;
  std::vector<double> alphas_;
  std::vector<ExtendedPower> p1_;
};

class OptimalEscPolicy final : public SubproblemPolicy {
 public:
  OptimalEscPolicy(const FadingEnsemble& ensemble, const SystemParams& params, P2Method method, int alpha_grid_n)
      : ensemble_(ensemble), params_(params), method_(method), alpha_grid_n_(alpha_grid_n) {}
  ProblemKind kind() const override { return ProblemKind::EscMax; }
  PerStateDecision decide(std::size_t i, const DualPoint& dual) const override {
    if (method_ == P2Method::TwoStage) return solve_p2_sub(ensemble_[i], dual, params_, alpha_grid_n_);
    return solve_p2_sub_envelope(ensemble_[i], dual, params_);
  }
  double objective(std::size_t i, const PerStateDecision& d) const override {
    return secrecy_rate(SchemeKind::AnCancelled, ensemble_[i], d, params_);
  }
  PerStateDecision at_power(std::size_t i, double p) const override {
    if (!(p > 0.0)) return {0.0, 0.0};
    return {p, std::min(optimal_split_given_power(ensemble_[i], p, params_), 1.0 - kAlphaUpperClip)};
  }

 private:
  const FadingEnsemble& ensemble_;
  SystemParams params_;
  P2Method method_;
  int alpha_grid_n_;
};

class FixedSplitEscPolicy final : public SubproblemPolicy {
 public:
  FixedSplitEscPolicy(const FadingEnsemble& ensemble, const SystemParams& params, std::vector<double> alphas)
      : ensemble_(ensemble), params_(params), alphas_(std::move(alphas)) {}
  ProblemKind kind() const override { return ProblemKind::EscMax; }
  PerStateDecision decide(std::size_t i, const DualPoint& dual) const override {
    return {solve_p2_sub_fixed_alpha(ensemble_[i], dual, alphas_[i], params_), alphas_[i]};
  }
  double objective(std::size_t i, const PerStateDecision& d) const override {
    return secrecy_rate(SchemeKind::AnCancelled, ensemble_[i], d, params_);
  }
  PerStateDecision at_power(std::size_t i, double p) const override { return {p, alphas_[i]}; }

 private:
  const FadingEnsemble& ensemble_;
  SystemParams params_;
  std::vector<double> alphas_;
};

bool better_dual(ProblemKind kind, double candidate, double incumbent) {
  // OutageMin maximizes its (concave) dual, EscMax minimizes its (convex) dual.
  return kind == ProblemKind::OutageMin ? candidate > incumbent : candidate < incumbent;
}

// 2x2 symmetric positive-definite shape matrix of the ellipsoid
// {y : (y - x)^T P^-1 (y - x) <= 1}.
struct Ellipsoid {
  double x0 = 0.0, x1 = 0.0;
  double p00 = 0.0, p01 = 0.0, p11 = 0.0;

  double log_volume() const { return 0.5 * std::log(p00 * p11 - p01 * p01); }

  // Keeps the half {y : a^T (y - x) <= 0}. Returns false if the cut is degenerate.
  bool cut(double a0, double a1) {
    const double pa0 = p00 * a0 + p01 * a1;
    const double pa1 = p01 * a0 + p11 * a1;
    const double apa = a0 * pa0 + a1 * pa1;
    if (!(apa > 0.0)) return false;
    const double s = std::sqrt(apa);
    const double g0 = pa0 / s;
    const double g1 = pa1 / s;
    // n = 2: x+ = x - g/3, P+ = 4/3 (P - 2/3 g g^T)
    x0 -= g0 / 3.0;
    x1 -= g1 / 3.0;
    p00 = 4.0 / 3.0 * (p00 - 2.0 / 3.0 * g0 * g0);
    p01 = 4.0 / 3.0 * (p01 - 2.0 / 3.0 * g0 * g1);
    p11 = 4.0 / 3.0 * (p11 - 2.0 / 3.0 * g1 * g1);
    return p00 > 0.0 && p11 > 0.0;
  }
};

bool apc_ok(const DualEvaluation& e, const SystemParams& params, double tol) {
  return e.avg_power <= params.p_avg * (1.0 + tol);
}

bool harvest_ok(const DualEvaluation& e, const Constraints& c, double tol) {
  return e.avg_harvest >= c.q_bar * (1.0 - tol);
}

constexpr std::size_t kTailSamples = 30;

DualSolveReport recover_with_samples(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                     const DualPoint& best_dual, double best_dual_value, const SystemParams& params,
                                     const Constraints& constraints, const DualOptions& opts,
                                     std::vector<DualEvaluation> samples);

}  // namespace

std::unique_ptr<SubproblemPolicy> make_optimal_policy(ProblemKind kind, const FadingEnsemble& ensemble,
                                                      const SystemParams& params, const DualOptions& opts) {
  if (kind == ProblemKind::OutageMin) return std::make_unique<OptimalOutagePolicy>(ensemble, params, opts.threads);
  return std::make_unique<OptimalEscPolicy>(ensemble, params, opts.p2_method, opts.alpha_grid_n);
}

std::unique_ptr<SubproblemPolicy> make_fixed_split_policy(ProblemKind kind, const FadingEnsemble& ensemble,
                                                          const SystemParams& params, std::vector<double> alphas,
                                                          const DualOptions& opts) {
  if (alphas.size() != ensemble.size()) throw_invalid("fixed split policy: one split per state required");
  for (double a : alphas) {
    const bool ok = kind == ProblemKind::OutageMin ? (a >= 0.0 && a <= 1.0) : (a >= 0.0 && a < 1.0);
    if (!ok) throw_invalid("fixed split policy: split outside its admissible range");
  }
  if (kind == ProblemKind::OutageMin) {
    return std::make_unique<FixedSplitOutagePolicy>(ensemble, params, std::move(alphas), opts.threads);
  }
  return std::make_unique<FixedSplitEscPolicy>(ensemble, params, std::move(alphas));
}

DualEvaluation dual_value(const SubproblemPolicy& policy, const FadingEnsemble& ensemble, const DualPoint& dual,
                          const SystemParams& params, const Constraints& constraints, int threads) {
  if (!(dual.lambda >= 0.0 && dual.mu >= 0.0)) throw_invalid("dual_value: multipliers must be non-negative");
  const std::size_t n = ensemble.size();
  DualEvaluation out;
  out.decisions.resize(n);
  std::vector<double> obj(n);
  parallel_for(n, threads, [&](std::size_t i) {
    out.decisions[i] = policy.decide(i, dual);
    obj[i] = policy.objective(i, out.decisions[i]);
  });
  double obj_sum = 0.0;
  double p_sum = 0.0;
  double q_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    obj_sum += obj[i];
    p_sum += out.decisions[i].p;
    q_sum += harvested_power(ensemble[i], out.decisions[i].p, params);
  }
  const double inv = 1.0 / static_cast<double>(n);
  out.objective = obj_sum * inv;
  out.avg_power = p_sum * inv;
  out.avg_harvest = q_sum * inv;
  const double penalty =
      dual.lambda * (out.avg_power - params.p_avg) - dual.mu * (out.avg_harvest - constraints.q_bar);
  out.value = policy.kind() == ProblemKind::OutageMin ? out.objective + penalty : out.objective - penalty;
  return out;
}

DualEvaluation dual_value(ProblemKind kind, const FadingEnsemble& ensemble, const DualPoint& dual,
                          const SystemParams& params, const Constraints& constraints) {
  const auto policy = make_optimal_policy(kind, ensemble, params);
  return dual_value(*policy, ensemble, dual, params, constraints);
}

std::pair<double, double> subgradient(double avg_power, double avg_harvest, const SystemParams& params,
                                      const Constraints& constraints) {
  return {avg_power - params.p_avg, constraints.q_bar - avg_harvest};
}

FeasibilityVerdict check_feasibility(const FadingEnsemble& ensemble, const SystemParams& params,
                                     const Constraints& constraints) {
  const std::size_t n = ensemble.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ensemble[a].g > ensemble[b].g; });
  double budget = params.p_avg * static_cast<double>(n);
  double q_sum = 0.0;
  for (std::size_t i : order) {
    if (budget <= 0.0) break;
    const double p = std::min(params.p_peak, budget);
    q_sum += harvested_power(ensemble[i], p, params);
    budget -= p;
  }
  FeasibilityVerdict v;
  v.max_q_bar = q_sum / static_cast<double>(n);
  v.feasible = constraints.q_bar >= 0.0 && constraints.q_bar <= v.max_q_bar;
  return v;
}

DualPoint multiplier_scale(const FadingEnsemble& ensemble, const SystemParams& params) {
  const double g_bar = ensemble.mean_g();
  return {1.0 / params.p_avg, 1.0 / (params.zeta * (g_bar > 0.0 ? g_bar : 1.0) * params.p_peak)};
}

DualSolveReport ellipsoid_solve(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                const SystemParams& params, const Constraints& constraints,
                                const DualOptions& opts) {
  params.validate();
  const FeasibilityVerdict verdict = check_feasibility(ensemble, params, constraints);
  if (!verdict.feasible) {
    std::ostringstream msg;
    msg << "harvest floor q_bar = " << constraints.q_bar << " W is infeasible; the largest feasible value is "
        << verdict.max_q_bar << " W";
    throw InfeasibleError(msg.str(), verdict.max_q_bar);
  }
  const ProblemKind kind = policy.kind();
  const DualPoint scale = multiplier_scale(ensemble, params);

  Ellipsoid ell;
  ell.x0 = scale.lambda;
  ell.x1 = scale.mu;
  ell.p00 = std::pow(1e3 * scale.lambda, 2);
  ell.p11 = std::pow(1e3 * scale.mu, 2);

  std::vector<EllipsoidTraceRow> trace;
  std::deque<DualEvaluation> tail;
  bool have_best = false;
  DualPoint best;
  double best_value = 0.0;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    EllipsoidTraceRow row;
    row.iter = it;
    row.lambda = ell.x0;
    row.mu = ell.x1;
    row.log_volume = ell.log_volume();
    double a0 = 0.0;
    double a1 = 0.0;
    if (ell.x0 < 0.0) {
      a0 = -1.0;
      row.dual_value = std::numeric_limits<double>::quiet_NaN();
    } else if (ell.x1 < 0.0) {
      a1 = -1.0;
      row.dual_value = std::numeric_limits<double>::quiet_NaN();
    } else {
      const DualPoint here{ell.x0, ell.x1};
      DualEvaluation e = dual_value(policy, ensemble, here, params, constraints, opts.threads);
      const auto [sp, sq] = subgradient(e.avg_power, e.avg_harvest, params, constraints);
      row.dual_value = e.value;
      row.subgrad_p = sp;
      row.subgrad_q = sq;
      if (!have_best || better_dual(kind, e.value, best_value)) {
        have_best = true;
        best = here;
        best_value = e.value;
      }
      if (sp == 0.0 && sq == 0.0) {
        if (opts.record_trace) trace.push_back(row);
        ++it;
        break;
      }
      a0 = -sp;
      a1 = -sq;
      if (kind == ProblemKind::EscMax) {
        tail.push_back(std::move(e));
        if (tail.size() > kTailSamples) tail.pop_front();
      }
    }
    if (opts.record_trace) trace.push_back(row);
    if (!ell.cut(a0, a1)) {
      ++it;
      break;
    }
    if (std::sqrt(ell.p00) < opts.tol * scale.lambda && std::sqrt(ell.p11) < opts.tol * scale.mu) {
      ++it;
      break;
    }
  }
  if (!have_best) {
    // Every centre fell outside the orthant; fall back to the orthant corner.
    best = {std::max(ell.x0, 0.0), std::max(ell.x1, 0.0)};
    best_value = dual_value(policy, ensemble, best, params, constraints, opts.threads).value;
  }

  std::vector<DualEvaluation> samples(std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
  DualSolveReport report =
      recover_with_samples(policy, ensemble, best, best_value, params, constraints, opts, std::move(samples));
  report.iterations = it;
  report.trace = std::move(trace);
  return report;
}

DualSolveReport ellipsoid_solve(ProblemKind kind, const FadingEnsemble& ensemble, const SystemParams& params,
                                const Constraints& constraints, const DualOptions& opts) {
  const auto policy = make_optimal_policy(kind, ensemble, params, opts);
  return ellipsoid_solve(*policy, ensemble, params, constraints, opts);
}

namespace {

// Smallest value of one multiplier (the other held fixed) at which `ok` holds.
// `ok` must be monotone: false below some threshold, true above it.
template <class Eval, class Ok>
auto raise_until(double start, double scale, Eval&& eval, Ok&& ok) {
  double lo = start;
  double hi = start > 0.0 ? 2.0 * start : scale;
  auto at_hi = eval(hi);
  for (int k = 0; k < 200 && !ok(at_hi); ++k) {
    lo = hi;
    hi *= 2.0;
    at_hi = eval(hi);
  }
  if (!ok(at_hi)) throw Error(ErrorCode::kNumerical, "primal recovery: multiplier bracket not found");
  for (int k = 0; k < 100 && hi - lo > 1e-13 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    auto e = eval(mid);
    if (ok(e)) {
      hi = mid;
      at_hi = std::move(e);
    } else {
      lo = mid;
    }
  }
  return std::pair{hi, std::move(at_hi)};
}

struct Repaired {
  std::vector<PerStateDecision> decisions;
  double power_sum = 0.0;
};

// Outage recovery. Keeps the states served at the dual point, gives each its
// minimum serving power, then meets the harvest floor by raising power on the
// highest-g states first. Raising power never creates an outage, so this is
// the cheapest way to keep that service set.
class OutageRepair {
 public:
  OutageRepair(const SubproblemPolicy& policy, const FadingEnsemble& ensemble, const SystemParams& params,
               const Constraints& constraints)
      : policy_(policy), ensemble_(ensemble), params_(params), n_(ensemble.size()), by_g_(n_) {
    cost_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) cost_.push_back(policy.serve_cost(i));
    std::iota(by_g_.begin(), by_g_.end(), 0);
    std::stable_sort(by_g_.begin(), by_g_.end(),
                     [&](std::size_t a, std::size_t b) { return ensemble[a].g > ensemble[b].g; });
    q_need_ = constraints.q_bar * static_cast<double>(n_);
    budget_ = params.p_avg * static_cast<double>(n_);
  }

  Repaired at(const DualPoint& y, int threads) const {
    Repaired r;
    r.decisions.resize(n_);
    parallel_for(n_, threads, [&](std::size_t i) { r.decisions[i] = policy_.decide(i, y); });
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      auto& d = r.decisions[i];
      if (policy_.objective(i, d) == 0.0) {
        d = {cost_[i].first.value(), cost_[i].second};
      } else {
        d.p = 0.0;
      }
      q += harvested_power(ensemble_[i], d.p, params_);
    }
    for (std::size_t k = 0; k < n_ && q < q_need_; ++k) {
      const std::size_t i = by_g_[k];
      auto& d = r.decisions[i];
      const double rate = harvested_power(ensemble_[i], 1.0, params_);
      if (rate <= 0.0) break;
      const double add = std::min(params_.p_peak - d.p, (q_need_ - q) / rate);
      if (add <= 0.0) continue;
      if (d.p == 0.0 && cost_[i].first.is_finite()) d.alpha = cost_[i].second;
      d.p += add;
      q += rate * add;
    }
    for (const auto& d : r.decisions) r.power_sum += d.p;
    return r;
  }

  bool within_budget(const Repaired& r) const { return r.power_sum <= budget_; }

  // Serves further outage states, cheapest first, while the budget lasts.
  void spend_leftover(Repaired& r) const {
    struct Fill {
      double extra;
      std::size_t i;
    };
    std::vector<Fill> fills;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& d = r.decisions[i];
      if (policy_.objective(i, d) == 0.0) continue;
      if (!cost_[i].first.within(params_.p_peak)) continue;
      fills.push_back({std::max(0.0, cost_[i].first.value() - d.p), i});
    }
    std::stable_sort(fills.begin(), fills.end(), [](const Fill& a, const Fill& b) { return a.extra < b.extra; });
    for (const Fill& f : fills) {
      if (r.power_sum + f.extra > budget_) break;
      auto& d = r.decisions[f.i];
      d = {std::max(d.p, cost_[f.i].first.value()), cost_[f.i].second};
      r.power_sum += f.extra;
    }
  }

 private:
  const SubproblemPolicy& policy_;
  const FadingEnsemble& ensemble_;
  const SystemParams& params_;
  std::size_t n_;
  std::vector<std::pair<ExtendedPower, double>> cost_;
  std::vector<std::size_t> by_g_;
  double q_need_ = 0.0;
  double budget_ = 0.0;
};

std::vector<PerStateDecision> recover_outage(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                             DualPoint& dual, const SystemParams& params,
                                             const Constraints& constraints, const DualOptions& opts) {
  const OutageRepair repair(policy, ensemble, params, constraints);
  Repaired r = repair.at(dual, opts.threads);
  if (!repair.within_budget(r)) {
    // The service set only shrinks as lambda grows.
    const DualPoint scale = multiplier_scale(ensemble, params);
    auto [lam, best] = raise_until(
        dual.lambda, scale.lambda, [&](double v) { return repair.at({v, dual.mu}, opts.threads); },
        [&](const Repaired& x) { return repair.within_budget(x); });
    dual.lambda = lam;
    r = std::move(best);
  }
  repair.spend_leftover(r);
  return std::move(r.decisions);
}

// Convex weights over at most three samples maximizing the mixed objective
// subject to mixed E[p] <= p_avg and mixed E[Q] >= q_bar. Empty if none exist.
std::vector<std::pair<std::size_t, double>> best_mixture(const std::vector<DualEvaluation>& s, double p_avg,
                                                         double q_bar) {
  const std::size_t m = s.size();
  std::vector<std::pair<std::size_t, double>> best;
  double best_obj = -std::numeric_limits<double>::infinity();
  auto offer = [&](std::vector<std::pair<std::size_t, double>> w) {
    double obj = 0.0;
    double pw = 0.0;
    double qw = 0.0;
    for (auto [k, x] : w) {
      obj += x * s[k].objective;
      pw += x * s[k].avg_power;
      qw += x * s[k].avg_harvest;
    }
    // mixing rounds a few ulps; allow for it here, the exact check comes later
    if (pw > p_avg * (1.0 + 1e-12) || qw < q_bar * (1.0 - 1e-12)) return;
    if (obj > best_obj) {
      best_obj = obj;
      best = std::move(w);
    }
  };
  for (std::size_t j = 0; j < m; ++j) offer({{j, 1.0}});
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      // theta * s_j + (1 - theta) * s_k with one constraint tight
      const double dp = s[j].avg_power - s[k].avg_power;
      const double dq = s[j].avg_harvest - s[k].avg_harvest;
      for (double theta : {dp != 0.0 ? (p_avg - s[k].avg_power) / dp : -1.0,
                           dq != 0.0 ? (q_bar - s[k].avg_harvest) / dq : -1.0}) {
        if (theta >= 0.0 && theta <= 1.0) offer({{j, theta}, {k, 1.0 - theta}});
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t c = b + 1; c < m; ++c) {
        // both constraints tight: solve [1 1 1; P; Q] w = [1; p_avg; q_bar]
        const double pa = s[a].avg_power - s[c].avg_power;
        const double pb = s[b].avg_power - s[c].avg_power;
        const double qa = s[a].avg_harvest - s[c].avg_harvest;
        const double qb = s[b].avg_harvest - s[c].avg_harvest;
        const double det = pa * qb - pb * qa;
        if (det == 0.0) continue;
        const double rp = p_avg - s[c].avg_power;
        const double rq = q_bar - s[c].avg_harvest;
        const double wa = (rp * qb - pb * rq) / det;
        const double wb = (pa * rq - rp * qa) / det;
        const double wc = 1.0 - wa - wb;
        if (wa >= 0.0 && wb >= 0.0 && wc >= 0.0) offer({{a, wa}, {b, wb}, {c, wc}});
      }
    }
  }
  return best;
}

std::optional<std::vector<PerStateDecision>> recover_by_mixing(const SubproblemPolicy& policy,
                                                               const FadingEnsemble& ensemble,
                                                               const DualPoint& dual, const SystemParams& params,
                                                               const Constraints& constraints,
                                                               const DualOptions& opts,
                                                               std::vector<DualEvaluation> samples) {
  auto eval = [&](const DualPoint& y) { return dual_value(policy, ensemble, y, params, constraints, opts.threads); };
  const DualPoint scale = multiplier_scale(ensemble, params);
  const std::size_t centre = samples.size();
  samples.push_back(eval(dual));
  for (double d : {1e-3, 1e-5, 1e-7}) {
    const double dl = d * std::max(dual.lambda, scale.lambda * 1e-6);
    const double dm = d * std::max(dual.mu, scale.mu * 1e-6);
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        if (i == 0 && j == 0) continue;
        const DualPoint y{dual.lambda + i * dl, dual.mu + j * dm};
        if (y.lambda >= 0.0 && y.mu >= 0.0) samples.push_back(eval(y));
      }
    }
  }
  const double tol = opts.feas_tol;
  if (!apc_ok(samples[centre], params, tol) || !harvest_ok(samples[centre], constraints, tol)) {
    // one bisection per multiplier from the dual point, keeping the endpoints
    try {
      samples.push_back(raise_until(
                            dual.lambda, scale.lambda, [&](double v) { return eval({v, dual.mu}); },
                            [&](const DualEvaluation& x) { return apc_ok(x, params, 0.0); })
                            .second);
    } catch (const Error&) {
    }
    try {
      samples.push_back(raise_until(
                            dual.mu, scale.mu, [&](double v) { return eval({dual.lambda, v}); },
                            [&](const DualEvaluation& x) { return harvest_ok(x, constraints, 0.0); })
                            .second);
    } catch (const Error&) {
    }
  }

  const auto w = best_mixture(samples, params.p_avg, constraints.q_bar);
  if (w.empty()) return std::nullopt;
  const std::size_t n = ensemble.size();
  std::vector<PerStateDecision> out(n);
  if (w.size() == 1) {
    out = samples[w[0].first].decisions;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double p = 0.0;
      bool same = true;
      for (auto [k, x] : w) {
        p += x * samples[k].decisions[i].p;
        same = same && samples[k].decisions[i] == samples[w[0].first].decisions[i];
      }
      out[i] = same ? samples[w[0].first].decisions[i] : policy.at_power(i, std::min(p, params.p_peak));
    }
  }
  double p_sum = 0.0;
  double q_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p_sum += out[i].p;
    q_sum += harvested_power(ensemble[i], out[i].p, params);
  }
  const double inv = 1.0 / static_cast<double>(n);
  if (p_sum * inv > params.p_avg * (1.0 + tol) || q_sum * inv < constraints.q_bar * (1.0 - tol)) return std::nullopt;
  return out;
}

std::vector<PerStateDecision> recover_by_bisection(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                                   DualPoint& dual, const SystemParams& params,
                                                   const Constraints& constraints, const DualOptions& opts) {
  const DualPoint scale = multiplier_scale(ensemble, params);
  auto eval = [&](const DualPoint& y) { return dual_value(policy, ensemble, y, params, constraints, opts.threads); };
  DualEvaluation cur = eval(dual);
  const double tol = opts.feas_tol;
  int round = 0;
  for (; round < opts.recovery_rounds; ++round) {
    const bool p_ok = apc_ok(cur, params, tol);
    const bool q_ok = harvest_ok(cur, constraints, tol);
    if (p_ok && q_ok) break;
    if (!p_ok) {
      auto [lam, e] = raise_until(
          dual.lambda, scale.lambda, [&](double v) { return eval({v, dual.mu}); },
          [&](const DualEvaluation& x) { return apc_ok(x, params, tol); });
      dual.lambda = lam;
      cur = std::move(e);
    } else {
      auto [mu, e] = raise_until(
          dual.mu, scale.mu, [&](double v) { return eval({dual.lambda, v}); },
          [&](const DualEvaluation& x) { return harvest_ok(x, constraints, tol); });
      dual.mu = mu;
      cur = std::move(e);
    }
  }
  if (!(apc_ok(cur, params, tol) && harvest_ok(cur, constraints, tol))) {
    std::ostringstream msg;
    msg << "primal recovery failed after " << round << " adjustments: E[p] = " << cur.avg_power
        << " W (limit " << params.p_avg << "), E[Q] = " << cur.avg_harvest << " W (floor " << constraints.q_bar
        << "), lambda = " << dual.lambda << ", mu = " << dual.mu;
    throw Error(ErrorCode::kNumerical, msg.str());
  }
  return std::move(cur.decisions);
}

}  // namespace

DualSolveReport recover_primal(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                               const DualPoint& best_dual, double best_dual_value, const SystemParams& params,
                               const Constraints& constraints, const DualOptions& opts) {
  return recover_with_samples(policy, ensemble, best_dual, best_dual_value, params, constraints, opts, {});
}

namespace {

DualSolveReport recover_with_samples(const SubproblemPolicy& policy, const FadingEnsemble& ensemble,
                                     const DualPoint& best_dual, double best_dual_value, const SystemParams& params,
                                     const Constraints& constraints, const DualOptions& opts,
                                     std::vector<DualEvaluation> samples) {
  DualPoint dual = best_dual;
  std::vector<PerStateDecision> decisions;
  if (policy.kind() == ProblemKind::OutageMin) {
    decisions = recover_outage(policy, ensemble, dual, params, constraints, opts);
  } else {
    auto mixed = recover_by_mixing(policy, ensemble, dual, params, constraints, opts, std::move(samples));
    decisions = mixed ? std::move(*mixed) : recover_by_bisection(policy, ensemble, dual, params, constraints, opts);
  }

  const std::size_t n = ensemble.size();
  DualSolveReport report;
  report.kind = policy.kind();
  report.dual = dual;
  double obj_sum = 0.0;
  double p_sum = 0.0;
  double q_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    obj_sum += policy.objective(i, decisions[i]);
    p_sum += decisions[i].p;
    q_sum += harvested_power(ensemble[i], decisions[i].p, params);
  }
  const double inv = 1.0 / static_cast<double>(n);
  report.objective = obj_sum * inv;
  report.avg_power = p_sum * inv;
  report.avg_harvest = q_sum * inv;
  report.decisions = std::move(decisions);
  report.dual_value = best_dual_value;
  report.dual_gap_estimate = report.kind == ProblemKind::OutageMin ? report.objective - best_dual_value
                                                                    : best_dual_value - report.objective;
  const double tol = opts.feas_tol;
  report.feasible = report.avg_power <= params.p_avg * (1.0 + tol) &&
                    report.avg_harvest >= constraints.q_bar * (1.0 - tol);
  return report;
}

}  // namespace

}  // namespace swipt
