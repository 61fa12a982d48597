/* Copyright (c) 2026 freqbias contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the frequency-bias estimation library. All entry points
 * return a status code (0 on success); freqbias_last_error() describes
 * the most recent failure on the calling thread. Handles are opaque and
 * must be released with their matching destroy/free call.
 */

#ifndef FREQBIAS_H
#define FREQBIAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
enum {
  FREQBIAS_OK = 0,
  FREQBIAS_USAGE_ERROR = 1,
  FREQBIAS_NON_FINITE_VALUE = 2,
  FREQBIAS_EMPTY_SERIES = 3,
  FREQBIAS_NON_POSITIVE_PERIOD = 4,
  FREQBIAS_SHAPE_MISMATCH = 5,
  FREQBIAS_UNIT_MISMATCH = 6,
  FREQBIAS_PERIOD_MISMATCH = 7,
  FREQBIAS_PARTIAL_HOUR = 8,
  FREQBIAS_OUT_OF_BOUNDS = 9,
  FREQBIAS_UNSUPPORTED_UNIT = 10,
  FREQBIAS_STEP_TOO_LARGE = 11,
  FREQBIAS_NON_FINITE_STATE = 12,
  FREQBIAS_DEGENERATE_PARAMS = 13,
  FREQBIAS_EMPTY_AREA = 14,
  FREQBIAS_INVALID_SPEC = 15,
  FREQBIAS_SCHEDULE_MISMATCH = 16,
  FREQBIAS_COLLINEAR_REGRESSORS = 17,
  FREQBIAS_SERIES_TOO_SHORT = 18,
  FREQBIAS_ZERO_SIGMA = 19,
  FREQBIAS_BAD_QUANTILE = 20,
  FREQBIAS_NEGATIVE_INPUT = 21,
  FREQBIAS_MISSING_COLUMN = 22,
  FREQBIAS_BAD_TIMESTAMP = 23,
  FREQBIAS_GAP_REJECTED = 24,
  FREQBIAS_IO_ERROR = 25,
  FREQBIAS_BAD_CONFIG = 26,
  FREQBIAS_INTERNAL_ERROR = 70
};

/* Units for series and bias values. */
enum {
  FREQBIAS_UNIT_MW = 0,
  FREQBIAS_UNIT_HZ = 1,
  FREQBIAS_UNIT_MW_PER_HZ = 2,
  FREQBIAS_UNIT_MW_PER_0P1HZ = 3,
  FREQBIAS_UNIT_MWH = 4,
  FREQBIAS_UNIT_DIMENSIONLESS = 5
};

/* Pipeline stage selection for freqbias_run_file. */
#define FREQBIAS_STAGE_ESTIMATES 1u
#define FREQBIAS_STAGE_ACE 2u
#define FREQBIAS_STAGE_RESERVES 4u
#define FREQBIAS_STAGE_ALL 7u

/* Message for the last failing call on this thread; never NULL. */
const char* freqbias_last_error(void);

/* Stable snake_case name of a status code ("collinear_regressors"). */
const char* freqbias_status_name(int status);

/* ---- Time series ----------------------------------------------------- */

typedef struct freqbias_series freqbias_series;

int freqbias_series_create(int64_t start_unix_s, double period_s,
                           const double* values, size_t count, int unit,
                           freqbias_series** out);
void freqbias_series_destroy(freqbias_series* s);
size_t freqbias_series_size(const freqbias_series* s);
int64_t freqbias_series_start(const freqbias_series* s);
double freqbias_series_period(const freqbias_series* s);
int freqbias_series_unit(const freqbias_series* s);
/* Copies all samples; `capacity` must be >= size. */
int freqbias_series_values(const freqbias_series* s, double* out,
                           size_t capacity);

/* a - b into a new series (same start, period, length, unit). */
int freqbias_series_subtract(const freqbias_series* a,
                             const freqbias_series* b, freqbias_series** out);

/* Converts a bias magnitude between MW/Hz and MW/0.1Hz. */
int freqbias_convert_bias(double magnitude, int from_unit, int to_unit,
                          double* out);

/* ---- Plant model ------------------------------------------------------ */

typedef struct freqbias_gtg_params {
  double inertia;        /* J, pu*s^2, > 0 */
  double damping;        /* D, pu, >= 0 */
  double turbine_time_s; /* T_u, s, > 0 */
  double turbine_gain;   /* K_t, pu, > 0 */
  double valve_time_s;   /* T_a, s, > 0 */
  double regulation;     /* r, pu, > 0 */
  double valve_coupling; /* e_T, pu */
  double omega_nominal;  /* rad/s */
} freqbias_gtg_params;

typedef struct freqbias_gtg_state {
  double rotor_angle; /* rad */
  double freq_dev;    /* pu */
  double mech_power;  /* pu */
  double valve_pos;   /* pu */
} freqbias_gtg_state;

void freqbias_gtg_params_init(freqbias_gtg_params* p);

/* One RK4 step; 0 < dt <= valve_time_s / 10. */
int freqbias_step_gtg(const freqbias_gtg_state* state,
                      const freqbias_gtg_params* params, double omega_ref,
                      double p_elec, double dt, freqbias_gtg_state* out);

/* Steady-state droop of one plant. */
int freqbias_analytic_droop(const freqbias_gtg_params* params, double* sigma,
                            double* alpha);

/* Area aggregate over `count` plants at a common MW base. */
int freqbias_aggregate_area(const freqbias_gtg_params* units, size_t count,
                            double power_base_mw, double* beta_mw_per_hz,
                            double* sigma_hz_per_mw, double* alpha);

/* ---- Estimator --------------------------------------------------------- */

typedef struct freqbias_estimator_config {
  int window_minutes;            /* default 60 */
  int stride_minutes;            /* default 1 */
  double condition_threshold;    /* default 1e8 */
  double min_regressor_variance; /* default 1e-12 */
} freqbias_estimator_config;

void freqbias_estimator_config_init(freqbias_estimator_config* cfg);

typedef struct freqbias_estimate {
  int64_t minute_index;
  double alpha;
  double sigma_hz_per_mw;
  double beta_mw_per_hz; /* +inf when sigma == 0, NaN before first fit */
  double r_squared;
  double condition_number;
  double residual_rms;
  int ill_conditioned;
  size_t window_start;
  size_t window_length;
} freqbias_estimate;

/* Least-squares droop fit over [window_start, window_start+window_length). */
int freqbias_ols_fit(const freqbias_series* f, const freqbias_series* f_ref,
                     const freqbias_series* p, size_t window_start,
                     size_t window_length,
                     const freqbias_estimator_config* cfg,
                     freqbias_estimate* out);

/* Trailing-window estimates; free the array with freqbias_estimates_free. */
int freqbias_rolling_estimate(const freqbias_series* f,
                              const freqbias_series* f_ref,
                              const freqbias_series* p,
                              const freqbias_estimator_config* cfg,
                              freqbias_estimate** out, size_t* count);
void freqbias_estimates_free(freqbias_estimate* estimates);

/* Sum of squared residuals of the droop plane over the window. */
int freqbias_objective_value(const freqbias_series* f,
                             const freqbias_series* f_ref,
                             const freqbias_series* p, size_t window_start,
                             size_t window_length, double alpha, double sigma,
                             double* out);

/* ---- ACE / IEE / reserves ---------------------------------------------- */

/* NAI - NSI per minute; hourly NSI is held flat across each hour. */
int freqbias_interchange_deviation(const freqbias_series* nai,
                                   const freqbias_series* nsi,
                                   freqbias_series** out);

/* -beta * delta_f in MW; beta given in `beta_unit`. */
int freqbias_ace_f_from_bias(double beta_magnitude, int beta_unit,
                             const freqbias_series* delta_f,
                             freqbias_series** out);

/* Hourly MWh of NAI - NSI; free with freqbias_buffer_free. */
int freqbias_iee_hourly(const freqbias_series* nai, const freqbias_series* nsi,
                        double** iee_mwh, size_t* hours);

/* Per-hour up/down bounds of a minute MW series at a one-sided quantile.
 * Free both arrays with freqbias_buffer_free. */
int freqbias_reserve_envelope(const freqbias_series* series, double quantile,
                              double** reg_up_mw, double** reg_down_mw,
                              size_t* hours);

/* avg_mw * (price_up + price_down) * hours. */
int freqbias_cost_savings(double avg_mw, double price_up, double price_down,
                          double hours, double* out);

/* Fraction of samples with |f - f_ref| <= half_width_hz. */
int freqbias_band_compliance(const freqbias_series* f,
                             const freqbias_series* f_ref, double nominal_hz,
                             double half_width_hz, double* out);

void freqbias_buffer_free(double* buffer);

/* ---- Synthetic data ----------------------------------------------------- */

enum {
  FREQBIAS_LOAD_CONSTANT = 0,
  FREQBIAS_LOAD_RANDOM_WALK = 1,
  FREQBIAS_LOAD_AR1 = 2
};

enum {
  FREQBIAS_SCHEDULE_CONSTANT = 0,
  FREQBIAS_SCHEDULE_STEP = 1,      /* beta2 from step_minute on */
  FREQBIAS_SCHEDULE_SINUSOIDAL = 2 /* beta +- amplitude over period */
};

typedef struct freqbias_sim_spec {
  uint64_t seed;
  int minutes;       /* >= 2 */
  int agc_enabled;   /* 0/1 */
  int load_kind;     /* FREQBIAS_LOAD_* */
  double base_mw;
  double step_mw;    /* random walk */
  double rho;        /* ar1, in [0,1) */
  double noise_mw;   /* ar1 */
  double alpha;      /* area reference gain, (0,1] */
  double beta_mw_per_hz;
  int schedule_kind; /* FREQBIAS_SCHEDULE_* */
  double beta2_mw_per_hz;    /* step level */
  int step_minute;           /* step position */
  double sin_amplitude_mw_per_hz;
  double sin_period_minutes;
  double sin_phase_rad;
  int64_t start_unix_s;
} freqbias_sim_spec;

void freqbias_sim_spec_init(freqbias_sim_spec* spec);

/* Simulates one balancing authority and writes the telemetry dataset and,
 * when truth_csv is non-NULL, the ground-truth sidecar. */
int freqbias_simulate_files(const freqbias_sim_spec* spec,
                            const char* dataset_csv, const char* truth_csv);

/* ---- Pipeline ------------------------------------------------------------ */

enum { FREQBIAS_GAP_REJECT = 0, FREQBIAS_GAP_DROP_HOUR = 1 };

typedef struct freqbias_run_config {
  freqbias_estimator_config estimator;
  double fixed_beta;      /* default 409 */
  int fixed_beta_unit;    /* default FREQBIAS_UNIT_MW_PER_0P1HZ */
  double band_nominal_hz; /* default 60 */
  double band_half_width_hz; /* default 0.036 */
  double price_up;        /* default 10 */
  double price_down;      /* default 10 */
  double cost_hours;      /* default 720 */
  double quantile;        /* default 1.0 */
  int gap_policy;         /* FREQBIAS_GAP_* */
  int flip_interchange_sign; /* 0/1, delta_t column only */
} freqbias_run_config;

void freqbias_run_config_init(freqbias_run_config* cfg);

/* Ingests input_csv (plus optional truth sidecar), runs the selected
 * stages, and writes report files under out_dir. */
int freqbias_run_file(const char* input_csv, const char* truth_csv,
                      const freqbias_run_config* cfg, const char* out_dir,
                      unsigned stage_mask);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FREQBIAS_H */
