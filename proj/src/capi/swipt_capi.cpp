#include "swipt/swipt.h"

#include <exception>
#include <new>
#include <string>

#include "core/channel.hpp"
#include "core/region.hpp"

struct swipt_ensemble {
  swipt::FadingEnsemble value;
};

struct swipt_report {
  swipt::DualSolveReport value;
};

struct swipt_boundary {
  std::vector<swipt::BoundaryRow> rows;
};

namespace {

thread_local std::string g_last_error;

swipt_status fail(swipt_status s, const char* what) {
  g_last_error = what;
  return s;
}

swipt_status map_code(swipt::ErrorCode code) {
  switch (code) {
    case swipt::ErrorCode::kInvalidArgument: return SWIPT_INVALID_ARGUMENT;
    case swipt::ErrorCode::kInfeasible: return SWIPT_INFEASIBLE;
    case swipt::ErrorCode::kParse: return SWIPT_PARSE;
    case swipt::ErrorCode::kIo: return SWIPT_IO;
    case swipt::ErrorCode::kNumerical: return SWIPT_NUMERICAL;
  }
  return SWIPT_INTERNAL;
}

template <class Fn>
swipt_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SWIPT_OK;
  } catch (const swipt::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SWIPT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SWIPT_INTERNAL, e.what());
  } catch (...) {
    return fail(SWIPT_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) swipt::throw_invalid(std::string(name) + " must not be null");
}

swipt::SystemParams to_cpp(const swipt_params& p) {
  swipt::SystemParams s;
  s.p_avg = p.p_avg;
  s.p_peak = p.p_peak;
  s.zeta = p.zeta;
  s.sigma1_sq = p.sigma1_sq;
  s.sigma2_sq = p.sigma2_sq;
  s.r0 = p.r0;
  s.validate();
  return s;
}

swipt::ProblemKind to_cpp(swipt_kind k) {
  if (k == SWIPT_OUTAGE) return swipt::ProblemKind::OutageMin;
  if (k == SWIPT_ESC) return swipt::ProblemKind::EscMax;
  swipt::throw_invalid("unknown problem kind");
}

swipt::Scheme to_cpp(swipt_scheme s) {
  switch (s.id) {
    case SWIPT_SCHEME_OPTIMAL: return {swipt::SchemeId::Optimal, 0.0};
    case SWIPT_SCHEME_ALTERNATING: return {swipt::SchemeId::Alternating, 0.0};
    case SWIPT_SCHEME_FIXED: return {swipt::SchemeId::Fixed, s.alpha_bar};
    case SWIPT_SCHEME_NOAN: return {swipt::SchemeId::NoAN, 0.0};
    case SWIPT_SCHEME_NOCANCEL: return {swipt::SchemeId::NoCancel, 0.0};
  }
  swipt::throw_invalid("unknown scheme");
}

swipt::SolverSettings to_cpp(const swipt_solve_options* o) {
  swipt_solve_options d;
  swipt_solve_options_default(&d);
  const swipt_solve_options& x = o ? *o : d;
  swipt::SolverSettings s;
  s.dual.tol = x.tol;
  s.dual.max_iter = x.max_iter;
  s.dual.feas_tol = x.feas_tol;
  s.dual.threads = x.threads;
  s.dual.record_trace = x.record_trace != 0;
  s.dual.p2_method = x.p2_two_stage ? swipt::P2Method::TwoStage : swipt::P2Method::Envelope;
  s.dual.alpha_grid_n = x.alpha_grid_n;
  s.alt.max_rounds = x.alt_max_rounds;
  s.alt.obj_tol = x.alt_obj_tol;
  s.alt.initial_alpha = x.alt_initial_alpha;
  if (!(s.dual.tol > 0.0)) swipt::throw_invalid("solver tol must be positive");
  if (s.dual.max_iter < 1) swipt::throw_invalid("solver max_iter must be at least 1");
  if (!(s.dual.feas_tol > 0.0)) swipt::throw_invalid("solver feas_tol must be positive");
  if (s.dual.alpha_grid_n < 2) swipt::throw_invalid("solver alpha_grid_n must be at least 2");
  return s;
}

swipt::FadingState to_cpp(swipt_state s) { return {s.h, s.g}; }
swipt::DualPoint to_cpp(swipt_dual d) { return {d.lambda, d.mu}; }

void need_dual(const swipt::DualPoint& d) {
  if (!(d.lambda >= 0.0 && d.mu >= 0.0)) swipt::throw_invalid("multipliers must be non-negative");
}

void need_state(const swipt::FadingState& s) {
  if (!(s.h >= 0.0 && s.g >= 0.0)) swipt::throw_invalid("channel gains must be non-negative");
}

}  // namespace

extern "C" {

const char* swipt_last_error(void) { return g_last_error.c_str(); }

const char* swipt_version(void) { return "1.0.0"; }

void swipt_params_default(swipt_params* out) {
  if (!out) return;
  const swipt::SystemParams s;
  *out = {s.p_avg, s.p_peak, s.zeta, s.sigma1_sq, s.sigma2_sq, s.r0};
}

void swipt_geometry_default(swipt_geometry* out) {
  if (!out) return;
  const swipt::GeometryConfig g;
  *out = {g.d_ir, g.d_er, g.a0, g.d0, g.path_exp};
}

void swipt_solve_options_default(swipt_solve_options* out) {
  if (!out) return;
  const swipt::DualOptions d;
  const swipt::AlternatingOptions a;
  out->tol = d.tol;
  out->max_iter = d.max_iter;
  out->feas_tol = d.feas_tol;
  out->threads = d.threads;
  out->record_trace = d.record_trace ? 1 : 0;
  out->p2_two_stage = d.p2_method == swipt::P2Method::TwoStage ? 1 : 0;
  out->alpha_grid_n = d.alpha_grid_n;
  out->alt_max_rounds = a.max_rounds;
  out->alt_obj_tol = a.obj_tol;
  out->alt_initial_alpha = a.initial_alpha;
}

swipt_status swipt_parse_scheme(const char* text, swipt_scheme* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    const swipt::Scheme s = swipt::parse_scheme(text);
    swipt_scheme r{SWIPT_SCHEME_OPTIMAL, 0.0};
    switch (s.id) {
      case swipt::SchemeId::Optimal: r.id = SWIPT_SCHEME_OPTIMAL; break;
      case swipt::SchemeId::Alternating: r.id = SWIPT_SCHEME_ALTERNATING; break;
      case swipt::SchemeId::Fixed: r = {SWIPT_SCHEME_FIXED, s.alpha_bar}; break;
      case swipt::SchemeId::NoAN: r.id = SWIPT_SCHEME_NOAN; break;
      case swipt::SchemeId::NoCancel: r.id = SWIPT_SCHEME_NOCANCEL; break;
    }
    *out = r;
  });
}

swipt_status swipt_ensemble_generate(const swipt_geometry* geometry, size_t n, uint64_t seed,
                                     swipt_ensemble** out) {
  return guarded([&] {
    need(geometry, "geometry");
    need(out, "out");
    *out = nullptr;
    swipt::GeometryConfig g{geometry->d_ir, geometry->d_er, geometry->a0, geometry->d0, geometry->path_exp};
    *out = new swipt_ensemble{swipt::generate_ensemble(g, n, seed)};
  });
}

swipt_status swipt_ensemble_create(const swipt_state* states, size_t n, uint64_t seed, swipt_ensemble** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    if (n > 0) need(states, "states");
    std::vector<swipt::FadingState> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = to_cpp(states[i]);
    *out = new swipt_ensemble{swipt::FadingEnsemble(std::move(v), seed)};
  });
}

swipt_status swipt_ensemble_load(const char* path, swipt_ensemble** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    *out = new swipt_ensemble{swipt::load_ensemble(path)};
  });
}

swipt_status swipt_ensemble_save(const swipt_ensemble* ensemble, const char* path, const char* comment) {
  return guarded([&] {
    need(ensemble, "ensemble");
    need(path, "path");
    swipt::save_ensemble(ensemble->value, path, comment ? comment : "");
  });
}

size_t swipt_ensemble_size(const swipt_ensemble* ensemble) { return ensemble ? ensemble->value.size() : 0; }

uint64_t swipt_ensemble_seed(const swipt_ensemble* ensemble) { return ensemble ? ensemble->value.seed() : 0; }

swipt_status swipt_ensemble_get(const swipt_ensemble* ensemble, size_t i, swipt_state* out) {
  return guarded([&] {
    need(ensemble, "ensemble");
    need(out, "out");
    if (i >= ensemble->value.size()) swipt::throw_invalid("state index out of range");
    const auto& s = ensemble->value[i];
    *out = {s.h, s.g};
  });
}

void swipt_ensemble_free(swipt_ensemble* ensemble) { delete ensemble; }

swipt_status swipt_check_feasibility(const swipt_ensemble* ensemble, const swipt_params* params, double q_bar,
                                     double* max_q_bar, int* feasible) {
  return guarded([&] {
    need(ensemble, "ensemble");
    need(params, "params");
    const auto v = swipt::check_feasibility(ensemble->value, to_cpp(*params), {q_bar});
    if (max_q_bar) *max_q_bar = v.max_q_bar;
    if (feasible) *feasible = v.feasible ? 1 : 0;
  });
}

swipt_status swipt_solve(const swipt_ensemble* ensemble, const swipt_params* params, swipt_kind kind,
                         swipt_scheme scheme, double q_bar, const swipt_solve_options* options,
                         swipt_report** out) {
  return guarded([&] {
    need(ensemble, "ensemble");
    need(params, "params");
    need(out, "out");
    *out = nullptr;
    if (!(q_bar >= 0.0)) swipt::throw_invalid("q_bar must be non-negative");
    auto rep = swipt::solve_scheme(to_cpp(scheme), to_cpp(kind), ensemble->value, to_cpp(*params), {q_bar},
                                   to_cpp(options));
    *out = new swipt_report{std::move(rep)};
  });
}

swipt_status swipt_report_get_summary(const swipt_report* report, swipt_report_summary* out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    const auto& r = report->value;
    out->kind = r.kind == swipt::ProblemKind::OutageMin ? SWIPT_OUTAGE : SWIPT_ESC;
    out->objective = r.objective;
    out->avg_power = r.avg_power;
    out->avg_harvest = r.avg_harvest;
    out->iterations = r.iterations;
    out->dual_value = r.dual_value;
    out->dual_gap_estimate = r.dual_gap_estimate;
    out->dual = {r.dual.lambda, r.dual.mu};
    out->feasible = r.feasible ? 1 : 0;
    out->size = r.decisions.size();
  });
}

swipt_status swipt_report_get_decisions(const swipt_report* report, swipt_decision* out, size_t n) {
  return guarded([&] {
    need(report, "report");
    const auto& d = report->value.decisions;
    const size_t m = std::min(n, d.size());
    if (m > 0) need(out, "out");
    for (size_t i = 0; i < m; ++i) out[i] = {d[i].p, d[i].alpha};
  });
}

size_t swipt_report_trace_size(const swipt_report* report) { return report ? report->value.trace.size() : 0; }

swipt_status swipt_report_get_trace_row(const swipt_report* report, size_t i, swipt_trace_row* out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    if (i >= report->value.trace.size()) swipt::throw_invalid("trace index out of range");
    const auto& t = report->value.trace[i];
    *out = {t.iter, t.lambda, t.mu, t.dual_value, t.subgrad_p, t.subgrad_q};
  });
}

size_t swipt_report_rounds_size(const swipt_report* report) { return report ? report->value.rounds.size() : 0; }

swipt_status swipt_report_get_round(const swipt_report* report, size_t i, swipt_round_row* out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    if (i >= report->value.rounds.size()) swipt::throw_invalid("round index out of range");
    const auto& r = report->value.rounds[i];
    *out = {r.round, r.objective, r.avg_power, r.avg_harvest};
  });
}

void swipt_report_free(swipt_report* report) { delete report; }

swipt_status swipt_trace_boundary(const swipt_ensemble* ensemble, const swipt_params* params, swipt_kind kind,
                                  swipt_scheme scheme, int q_points, double q_max_fraction,
                                  const swipt_solve_options* options, swipt_boundary** out) {
  return guarded([&] {
    need(ensemble, "ensemble");
    need(params, "params");
    need(out, "out");
    *out = nullptr;
    swipt::SweepSpec spec;
    spec.scheme = to_cpp(scheme);
    spec.kind = to_cpp(kind);
    spec.q_points = q_points;
    spec.q_max_fraction = q_max_fraction;
    auto rows = swipt::trace_boundary(spec, ensemble->value, to_cpp(*params), to_cpp(options));
    *out = new swipt_boundary{std::move(rows)};
  });
}

size_t swipt_boundary_size(const swipt_boundary* boundary) { return boundary ? boundary->rows.size() : 0; }

swipt_status swipt_boundary_get(const swipt_boundary* boundary, size_t i, swipt_boundary_row* out) {
  return guarded([&] {
    need(boundary, "boundary");
    need(out, "out");
    if (i >= boundary->rows.size()) swipt::throw_invalid("boundary index out of range");
    const auto& r = boundary->rows[i];
    *out = {r.q_bar, r.point.objective, r.point.harvested, r.avg_power, r.iterations, r.dual_gap_estimate};
  });
}

void swipt_boundary_free(swipt_boundary* boundary) { delete boundary; }

swipt_status swipt_secrecy_rate(swipt_rate_model model, swipt_state state, swipt_decision decision,
                                 const swipt_params* params, double* out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    swipt::SchemeKind k = swipt::SchemeKind::AnCancelled;
    switch (model) {
      case SWIPT_RATE_AN_CANCELLED: k = swipt::SchemeKind::AnCancelled; break;
      case SWIPT_RATE_NOAN: k = swipt::SchemeKind::NoAN; break;
      case SWIPT_RATE_NOCANCEL: k = swipt::SchemeKind::NoCancel; break;
      default: swipt::throw_invalid("unknown rate model");
    }
    const auto s = to_cpp(state);
    need_state(s);
    if (!(decision.p >= 0.0 && decision.alpha >= 0.0 && decision.alpha <= 1.0)) {
      swipt::throw_invalid("decision needs p >= 0 and alpha in [0, 1]");
    }
    *out = swipt::secrecy_rate(k, s, {decision.p, decision.alpha}, to_cpp(*params));
  });
}

swipt_status swipt_min_power_for_rate(swipt_state state, double alpha, const swipt_params* params, double* p,
                                      int* finite) {
  return guarded([&] {
    need(params, "params");
    need(p, "p");
    need(finite, "finite");
    const auto s = to_cpp(state);
    need_state(s);
    const auto r = swipt::min_power_for_rate(alpha, s, to_cpp(*params));
    *finite = r.is_finite() ? 1 : 0;
    *p = r.is_finite() ? r.value() : 0.0;
  });
}

swipt_status swipt_solve_p1_sub(swipt_state state, swipt_dual dual, const swipt_params* params,
                                swipt_decision* out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    const auto s = to_cpp(state);
    const auto d = to_cpp(dual);
    need_state(s);
    need_dual(d);
    const auto r = swipt::solve_p1_sub(s, d, to_cpp(*params));
    *out = {r.p, r.alpha};
  });
}

swipt_status swipt_solve_p11_sub(swipt_state state, swipt_dual dual, double alpha_bar, const swipt_params* params,
                                 swipt_decision* out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    const auto s = to_cpp(state);
    const auto d = to_cpp(dual);
    need_state(s);
    need_dual(d);
    const auto r = swipt::solve_p11_sub(s, d, alpha_bar, to_cpp(*params));
    *out = {r.p, r.alpha};
  });
}

swipt_status swipt_solve_p2_sub_fixed_alpha(swipt_state state, swipt_dual dual, double alpha_bar,
                                            const swipt_params* params, double* p) {
  return guarded([&] {
    need(params, "params");
    need(p, "p");
    const auto s = to_cpp(state);
    const auto d = to_cpp(dual);
    need_state(s);
    need_dual(d);
    *p = swipt::solve_p2_sub_fixed_alpha(s, d, alpha_bar, to_cpp(*params));
  });
}

swipt_status swipt_solve_p2_sub(swipt_state state, swipt_dual dual, const swipt_params* params, int two_stage,
                                swipt_decision* out) {
  return guarded([&] {
    need(params, "params");
    need(out, "out");
    const auto s = to_cpp(state);
    const auto d = to_cpp(dual);
    need_state(s);
    need_dual(d);
    const auto p = to_cpp(*params);
    const auto r = two_stage ? swipt::solve_p2_sub(s, d, p) : swipt::solve_p2_sub_envelope(s, d, p);
    *out = {r.p, r.alpha};
  });
}

swipt_status swipt_optimal_split(swipt_state state, double p_bar, const swipt_params* params, double* alpha) {
  return guarded([&] {
    need(params, "params");
    need(alpha, "alpha");
    const auto s = to_cpp(state);
    need_state(s);
    *alpha = swipt::optimal_split_given_power(s, p_bar, to_cpp(*params));
  });
}

}  // extern "C"
