#ifndef SWIPT_SWIPT_H
#define SWIPT_SWIPT_H

/* C interface to the secure SWIPT power-allocation library.
 *
 * Every fallible call returns a swipt_status; on failure the message is
 * available from swipt_last_error() on the same thread until the next call.
 * Objects behind opaque handles are owned by the caller and released with the
 * matching *_free function (NULL is accepted). All powers are in watts. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define SWIPT_API __declspec(dllexport)
#else
#  define SWIPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swipt_status {
  SWIPT_OK = 0,
  SWIPT_INVALID_ARGUMENT = 1,
  SWIPT_INFEASIBLE = 2,
  SWIPT_PARSE = 3,
  SWIPT_IO = 4,
  SWIPT_NUMERICAL = 5,
  SWIPT_INTERNAL = 6
} swipt_status;

typedef enum swipt_kind { SWIPT_OUTAGE = 0, SWIPT_ESC = 1 } swipt_kind;

typedef enum swipt_scheme_id {
  SWIPT_SCHEME_OPTIMAL = 0,
  SWIPT_SCHEME_ALTERNATING = 1,
  SWIPT_SCHEME_FIXED = 2,
  SWIPT_SCHEME_NOAN = 3,
  SWIPT_SCHEME_NOCANCEL = 4
} swipt_scheme_id;

/* Rate model used by swipt_secrecy_rate. */
typedef enum swipt_rate_model {
  SWIPT_RATE_AN_CANCELLED = 0,
  SWIPT_RATE_NOAN = 1,
  SWIPT_RATE_NOCANCEL = 2
} swipt_rate_model;

typedef struct swipt_params {
  double p_avg;
  double p_peak;
  double zeta;
  double sigma1_sq;
  double sigma2_sq;
  double r0; /* target secrecy rate, bps/Hz (outage problems) */
} swipt_params;

typedef struct swipt_geometry {
  double d_ir;
  double d_er;
  double a0;
  double d0;
  double path_exp;
} swipt_geometry;

typedef struct swipt_state {
  double h;
  double g;
} swipt_state;

typedef struct swipt_decision {
  double p;
  double alpha;
} swipt_decision;

typedef struct swipt_dual {
  double lambda;
  double mu;
} swipt_dual;

typedef struct swipt_scheme {
  swipt_scheme_id id;
  double alpha_bar; /* SWIPT_SCHEME_FIXED only */
} swipt_scheme;

typedef struct swipt_solve_options {
  double tol;
  int max_iter;
  double feas_tol;
  int threads;
  int record_trace;
  int p2_two_stage; /* nonzero: alpha-grid search instead of the envelope solver */
  int alpha_grid_n;
  int alt_max_rounds;
  double alt_obj_tol;
  double alt_initial_alpha;
} swipt_solve_options;

typedef struct swipt_report_summary {
  swipt_kind kind;
  double objective; /* outage probability or ergodic secrecy rate */
  double avg_power;
  double avg_harvest;
  int iterations;
  double dual_value;
  double dual_gap_estimate;
  swipt_dual dual;
  int feasible;
  size_t size; /* number of per-state decisions */
} swipt_report_summary;

typedef struct swipt_trace_row {
  int iter;
  double lambda;
  double mu;
  double dual_value; /* NaN on feasibility cuts */
  double subgrad_p;
  double subgrad_q;
} swipt_trace_row;

typedef struct swipt_round_row {
  int round;
  double objective;
  double avg_power;
  double avg_harvest;
} swipt_round_row;

typedef struct swipt_boundary_row {
  double q_bar;
  double objective; /* non-outage probability or ergodic secrecy rate */
  double harvested;
  double avg_power;
  int iterations;
  double dual_gap_estimate;
} swipt_boundary_row;

typedef struct swipt_ensemble swipt_ensemble;
typedef struct swipt_report swipt_report;
typedef struct swipt_boundary swipt_boundary;

SWIPT_API const char* swipt_last_error(void);
SWIPT_API const char* swipt_version(void);

SWIPT_API void swipt_params_default(swipt_params* out);
SWIPT_API void swipt_geometry_default(swipt_geometry* out);
SWIPT_API void swipt_solve_options_default(swipt_solve_options* out);
SWIPT_API swipt_status swipt_parse_scheme(const char* text, swipt_scheme* out);

/* ensembles */
SWIPT_API swipt_status swipt_ensemble_generate(const swipt_geometry* geometry, size_t n, uint64_t seed,
                                               swipt_ensemble** out);
SWIPT_API swipt_status swipt_ensemble_create(const swipt_state* states, size_t n, uint64_t seed,
                                             swipt_ensemble** out);
SWIPT_API swipt_status swipt_ensemble_load(const char* path, swipt_ensemble** out);
/* `comment` may be NULL; its lines are written as "# " comments above the data. */
SWIPT_API swipt_status swipt_ensemble_save(const swipt_ensemble* ensemble, const char* path, const char* comment);
SWIPT_API size_t swipt_ensemble_size(const swipt_ensemble* ensemble);
SWIPT_API uint64_t swipt_ensemble_seed(const swipt_ensemble* ensemble);
SWIPT_API swipt_status swipt_ensemble_get(const swipt_ensemble* ensemble, size_t i, swipt_state* out);
SWIPT_API void swipt_ensemble_free(swipt_ensemble* ensemble);

/* ensemble-level solves */
SWIPT_API swipt_status swipt_check_feasibility(const swipt_ensemble* ensemble, const swipt_params* params,
                                               double q_bar, double* max_q_bar, int* feasible);
SWIPT_API swipt_status swipt_solve(const swipt_ensemble* ensemble, const swipt_params* params, swipt_kind kind,
                                   swipt_scheme scheme, double q_bar, const swipt_solve_options* options,
                                   swipt_report** out);
SWIPT_API swipt_status swipt_report_get_summary(const swipt_report* report, swipt_report_summary* out);
/* Copies min(n, size) decisions. */
SWIPT_API swipt_status swipt_report_get_decisions(const swipt_report* report, swipt_decision* out, size_t n);
SWIPT_API size_t swipt_report_trace_size(const swipt_report* report);
SWIPT_API swipt_status swipt_report_get_trace_row(const swipt_report* report, size_t i, swipt_trace_row* out);
SWIPT_API size_t swipt_report_rounds_size(const swipt_report* report);
SWIPT_API swipt_status swipt_report_get_round(const swipt_report* report, size_t i, swipt_round_row* out);
SWIPT_API void swipt_report_free(swipt_report* report);

SWIPT_API swipt_status swipt_trace_boundary(const swipt_ensemble* ensemble, const swipt_params* params,
                                            swipt_kind kind, swipt_scheme scheme, int q_points,
                                            double q_max_fraction, const swipt_solve_options* options,
                                            swipt_boundary** out);
SWIPT_API size_t swipt_boundary_size(const swipt_boundary* boundary);
SWIPT_API swipt_status swipt_boundary_get(const swipt_boundary* boundary, size_t i, swipt_boundary_row* out);
SWIPT_API void swipt_boundary_free(swipt_boundary* boundary);

/* per-state primitives */
SWIPT_API swipt_status swipt_secrecy_rate(swipt_rate_model model, swipt_state state, swipt_decision decision,
                                          const swipt_params* params, double* out);
/* *finite is set to 0 when the target rate is unreachable. */
SWIPT_API swipt_status swipt_min_power_for_rate(swipt_state state, double alpha, const swipt_params* params,
                                                double* p, int* finite);
SWIPT_API swipt_status swipt_solve_p1_sub(swipt_state state, swipt_dual dual, const swipt_params* params,
                                          swipt_decision* out);
SWIPT_API swipt_status swipt_solve_p11_sub(swipt_state state, swipt_dual dual, double alpha_bar,
                                           const swipt_params* params, swipt_decision* out);
SWIPT_API swipt_status swipt_solve_p2_sub_fixed_alpha(swipt_state state, swipt_dual dual, double alpha_bar,
                                                      const swipt_params* params, double* p);
SWIPT_API swipt_status swipt_solve_p2_sub(swipt_state state, swipt_dual dual, const swipt_params* params,
                                          int two_stage, swipt_decision* out);
SWIPT_API swipt_status swipt_optimal_split(swipt_state state, double p_bar, const swipt_params* params,
                                           double* alpha);

#ifdef __cplusplus
}
#endif

#endif
