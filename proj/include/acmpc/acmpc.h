/*
 * acmpc - humidity-aware model predictive control for residential air
 * conditioning: C API.
 *
 * The library core is C++; this header is the stable boundary. All entry
 * points return a status code, never throw, and leave a human-readable
 * message retrievable through acmpc_last_error() on failure. Fitted models
 * are opaque handles owned by the caller and released with the matching
 * *_free function.
 */
#ifndef ACMPC_H
#define ACMPC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ACMPC_API __declspec(dllexport)
#else
#define ACMPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acmpc_status {
    ACMPC_OK = 0,
    ACMPC_ERR_INVALID_ARGUMENT = 1, /* bad call or parameter */
    ACMPC_ERR_DATA = 2,             /* schema violation, degenerate input */
    ACMPC_ERR_NUMERIC = 3,          /* non-convergence, singular system */
    ACMPC_ERR_INFEASIBLE = 4,       /* optimization has no feasible point */
    ACMPC_ERR_IO = 5,               /* file missing or unwritable */
    ACMPC_ERR_INTERNAL = 6
} acmpc_status;

ACMPC_API const char* acmpc_version(void);

/* Message for the most recent failure on this thread ("" if none). */
ACMPC_API const char* acmpc_last_error(void);

/* ---------- psychrometrics and comfort ---------- */

/* Stull wet-bulb approximation at standard pressure. t_db in degC, rh as a
 * fraction in [0.05, 1]. */
ACMPC_API acmpc_status acmpc_wet_bulb(double t_db_c, double rh, double* out_c);

typedef struct acmpc_comfort_inputs {
    double t_db_c;
    double t_r_c;
    double rh; /* fraction 0..1 */
    double v_air_m_s;
    double met;
    double clo;
} acmpc_comfort_inputs;

ACMPC_API acmpc_status acmpc_pmv(const acmpc_comfort_inputs* in, double* out_pmv);

/* Predicted percentage dissatisfied from PMV (requires |pmv| <= 4). */
ACMPC_API acmpc_status acmpc_ppd(double pmv, double* out_pct);

/* ---------- thermal circuit ---------- */

/* One step of the discrete indoor-temperature dynamics. */
ACMPC_API acmpc_status acmpc_envelope_step(double alpha, double r_eff_c_per_kw, double t_k_c,
                                           double t_eq_c, double q_cool_kw, double q_e_kw,
                                           double* out_c);

typedef struct acmpc_envelope acmpc_envelope; /* opaque fitted model */

typedef struct acmpc_identify_options {
    int use_frozen;           /* nonzero: evaluate the supplied parameters instead of fitting */
    double frozen_alpha;
    double frozen_r_c_per_kw;
    int use_frozen_qe;        /* nonzero: constant disturbance instead of residuals */
    double frozen_qe_kw;
    double t_m_c;             /* deep-mass boundary temperature */
    double validation_fraction;
} acmpc_identify_options;

ACMPC_API void acmpc_identify_options_init(acmpc_identify_options* opts);

/* Fit (or freeze) the thermal circuit from a telemetry CSV. */
ACMPC_API acmpc_status acmpc_identify_csv(const char* telemetry_csv,
                                          const acmpc_identify_options* opts,
                                          acmpc_envelope** out);

typedef struct acmpc_envelope_params {
    double alpha;
    double r_eff_c_per_kw;
    double r_out_c_per_kw;
    double r_m_c_per_kw; /* negative when the mass branch is disabled */
    double t_m_c;
    double qe_mean_kw;
    double rmse_temp_c;
    double rmse_cool_kw;
} acmpc_envelope_params;

ACMPC_API acmpc_status acmpc_envelope_get_params(const acmpc_envelope* model,
                                             acmpc_envelope_params* out);
ACMPC_API void acmpc_envelope_free(acmpc_envelope* model);

/* ---------- wet-bulb Gaussian process ---------- */

typedef struct acmpc_gpr acmpc_gpr; /* opaque fitted model */

/* Features per row, in order: rh_out (fraction), t_out (degC), hour of day
 * (0..24), solar irradiance (kW/m2), wind speed (m/s). `features` is
 * row-major n x 5. */
ACMPC_API acmpc_status acmpc_gpr_fit(const double* features, const double* targets_c, size_t n,
                                     acmpc_gpr** out);
ACMPC_API acmpc_status acmpc_gpr_predict(const acmpc_gpr* model, const double features[5],
                                         double* out_mean_c, double* out_variance);
ACMPC_API void acmpc_gpr_free(acmpc_gpr* model);

/* ---------- demand-response schedule ---------- */

/* Power limit for an hour of day; +infinity outside the half-open window. */
ACMPC_API acmpc_status acmpc_power_limit(int hour, double limit_kw, int start_hour, int end_hour,
                                         double* out_kw);

/* ---------- experiment pipelines (the CLI surface) ---------- */

ACMPC_API acmpc_status acmpc_run_identify(const char* telemetry_csv,
                                          const acmpc_identify_options* opts,
                                          const char* out_dir);

/* formulation_override: NULL, "sensible" or "latent"; mode_override: NULL,
 * "cost" or "limit"; seed_override may be NULL. */
ACMPC_API acmpc_status acmpc_run_simulate(const char* manifest_path, const char* out_dir,
                                          const char* formulation_override,
                                          const char* mode_override,
                                          const uint64_t* seed_override);

ACMPC_API acmpc_status acmpc_run_report(const char* results_dir, const char* out_dir,
                                        int paper_constants);

/* Write the bundled default experiment manifest to `path`. */
ACMPC_API acmpc_status acmpc_write_default_manifest(const char* path);

#ifdef __cplusplus
}
#endif

#endif /* ACMPC_H */
