// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0
//
// extern-C shim over the C++ core: every boundary call catches, records
// the message thread-locally, and maps the exception to a status code.

#include "freqbias/freqbias.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/ace.hpp"
#include "core/csvio.hpp"
#include "core/estimator.hpp"
#include "core/gtg.hpp"
#include "core/pipeline.hpp"
#include "core/reserve.hpp"
#include "core/timeseries.hpp"

using namespace freqbias;

struct freqbias_series {
  TimeSeries ts;
};

namespace {

thread_local std::string g_last_error;

int set_error(const Error& e) {
  g_last_error = e.what();
  return static_cast<int>(e.status());
}

int set_error(const std::exception& e) {
  g_last_error = e.what();
  return FREQBIAS_INTERNAL_ERROR;
}

int set_bad_args(const char* what) {
  g_last_error = what;
  return FREQBIAS_USAGE_ERROR;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FREQBIAS_OK;
  } catch (const Error& e) {
    return set_error(e);
  } catch (const std::bad_alloc& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

Unit to_unit(int unit) {
  if (unit < 0 || unit > static_cast<int>(Unit::dimensionless))
    fail(Status::unsupported_unit, "unknown unit code");
  return static_cast<Unit>(unit);
}

GtgParams to_params(const freqbias_gtg_params& p) {
  GtgParams out;
  out.inertia = p.inertia;
  out.damping = p.damping;
  out.turbine_time_s = p.turbine_time_s;
  out.turbine_gain = p.turbine_gain;
  out.valve_time_s = p.valve_time_s;
  out.regulation = p.regulation;
  out.valve_coupling = p.valve_coupling;
  out.omega_nominal = p.omega_nominal;
  return out;
}

EstimatorConfig to_config(const freqbias_estimator_config* cfg) {
  EstimatorConfig out;
  if (cfg) {
    out.window_minutes = cfg->window_minutes;
    out.stride_minutes = cfg->stride_minutes;
    out.condition_threshold = cfg->condition_threshold;
    out.min_regressor_variance = cfg->min_regressor_variance;
  }
  return out;
}

freqbias_estimate to_c(const DroopEstimate& e) {
  freqbias_estimate out;
  out.minute_index = static_cast<int64_t>(e.minute_index);
  out.alpha = e.alpha;
  out.sigma_hz_per_mw = e.sigma_hz_per_mw;
  out.beta_mw_per_hz = e.beta.magnitude;
  out.r_squared = e.r_squared;
  out.condition_number = e.condition_number;
  out.residual_rms = e.residual_rms;
  out.ill_conditioned = e.ill_conditioned ? 1 : 0;
  out.window_start = e.window.start;
  out.window_length = e.window.length;
  return out;
}

double* copy_buffer(const std::vector<double>& v) {
  double* buf = static_cast<double*>(::operator new[](v.size() * sizeof(double)));
  if (!v.empty()) std::memcpy(buf, v.data(), v.size() * sizeof(double));
  return buf;
}

BiasSchedule schedule_from_spec(const freqbias_sim_spec& s) {
  switch (s.schedule_kind) {
    case FREQBIAS_SCHEDULE_STEP:
      return BiasSchedule::piecewise(
          {{0, s.beta_mw_per_hz}, {s.step_minute, s.beta2_mw_per_hz}});
    case FREQBIAS_SCHEDULE_SINUSOIDAL:
      return BiasSchedule::sinusoidal(s.beta_mw_per_hz,
                                      s.sin_amplitude_mw_per_hz,
                                      s.sin_period_minutes, s.sin_phase_rad);
    default: {
      BiasSchedule b;
      b.kind = BiasSchedule::Kind::constant;
      b.beta0_mw_per_hz = s.beta_mw_per_hz;
      return b;
    }
  }
}

SyntheticDataset simulate_from_spec(const freqbias_sim_spec& s) {
  AreaDroop area = area_from_alpha_beta(s.alpha, s.beta_mw_per_hz);
  DisturbanceSpec spec;
  spec.seed = s.seed;
  switch (s.load_kind) {
    case FREQBIAS_LOAD_CONSTANT:
      spec.load.kind = LoadModel::Kind::constant;
      break;
    case FREQBIAS_LOAD_RANDOM_WALK:
      spec.load.kind = LoadModel::Kind::random_walk;
      break;
    case FREQBIAS_LOAD_AR1:
      spec.load.kind = LoadModel::Kind::ar1;
      break;
    default:
      fail(Status::invalid_spec, "unknown load model code");
  }
  spec.load.base_mw = s.base_mw;
  spec.load.step_mw = s.step_mw;
  spec.load.rho = s.rho;
  spec.load.noise_mw = s.noise_mw;
  if (s.schedule_kind != FREQBIAS_SCHEDULE_CONSTANT)
    spec.bias_schedule = schedule_from_spec(s);
  return simulate_ba(area, spec, s.minutes, s.agc_enabled != 0,
                     s.start_unix_s);
}

RunConfig to_run_config(const freqbias_run_config& c) {
  RunConfig out;
  out.estimator = to_config(&c.estimator);
  out.fixed_beta = BiasValue{c.fixed_beta, to_unit(c.fixed_beta_unit)};
  out.band = BandSpec{c.band_nominal_hz, c.band_half_width_hz};
  out.cost = CostModel{c.price_up, c.price_down, c.cost_hours};
  out.quantile = c.quantile;
  out.gap_policy = c.gap_policy == FREQBIAS_GAP_DROP_HOUR
                       ? GapPolicy::drop_hour
                       : GapPolicy::reject;
  out.flip_interchange_sign = c.flip_interchange_sign != 0;
  return out;
}

}  // namespace

extern "C" {

const char* freqbias_last_error(void) { return g_last_error.c_str(); }

const char* freqbias_status_name(int status) {
  if (status == FREQBIAS_INTERNAL_ERROR) return "internal_error";
  if (status < 0 || status > static_cast<int>(Status::bad_config))
    return "unknown";
  return status_name(static_cast<Status>(status));
}

int freqbias_series_create(int64_t start_unix_s, double period_s,
                           const double* values, size_t count, int unit,
                           freqbias_series** out) {
  if (!values || !out) return set_bad_args("values and out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    std::vector<double> v(values, values + count);
    *out = new freqbias_series{
        make_series(start_unix_s, period_s, std::move(v), to_unit(unit))};
  });
}

void freqbias_series_destroy(freqbias_series* s) { delete s; }

size_t freqbias_series_size(const freqbias_series* s) {
  return s ? s->ts.size() : 0;
}

int64_t freqbias_series_start(const freqbias_series* s) {
  return s ? s->ts.start_time() : 0;
}

double freqbias_series_period(const freqbias_series* s) {
  return s ? s->ts.period_s() : 0.0;
}

int freqbias_series_unit(const freqbias_series* s) {
  return s ? static_cast<int>(s->ts.unit()) : -1;
}

int freqbias_series_values(const freqbias_series* s, double* out,
                           size_t capacity) {
  if (!s || !out) return set_bad_args("series and out must be non-NULL");
  if (capacity < s->ts.size())
    return set_bad_args("output capacity smaller than series size");
  std::memcpy(out, s->ts.values().data(), s->ts.size() * sizeof(double));
  g_last_error.clear();
  return FREQBIAS_OK;
}

int freqbias_series_subtract(const freqbias_series* a,
                             const freqbias_series* b, freqbias_series** out) {
  if (!a || !b || !out) return set_bad_args("arguments must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = new freqbias_series{subtract(a->ts, b->ts)}; });
}

int freqbias_convert_bias(double magnitude, int from_unit, int to_unit_code,
                          double* out) {
  if (!out) return set_bad_args("out must be non-NULL");
  return guarded([&] {
    BiasValue v{magnitude, to_unit(from_unit)};
    *out = convert_bias(v, to_unit(to_unit_code)).magnitude;
  });
}

void freqbias_gtg_params_init(freqbias_gtg_params* p) {
  if (!p) return;
  GtgParams d;
  p->inertia = d.inertia;
  p->damping = d.damping;
  p->turbine_time_s = d.turbine_time_s;
  p->turbine_gain = d.turbine_gain;
  p->valve_time_s = d.valve_time_s;
  p->regulation = d.regulation;
  p->valve_coupling = d.valve_coupling;
  p->omega_nominal = d.omega_nominal;
}

int freqbias_step_gtg(const freqbias_gtg_state* state,
                      const freqbias_gtg_params* params, double omega_ref,
                      double p_elec, double dt, freqbias_gtg_state* out) {
  if (!state || !params || !out)
    return set_bad_args("state, params and out must be non-NULL");
  return guarded([&] {
    GtgState s{state->rotor_angle, state->freq_dev, state->mech_power,
               state->valve_pos};
    GtgState n = step_gtg(s, to_params(*params), omega_ref, p_elec, dt);
    out->rotor_angle = n.rotor_angle;
    out->freq_dev = n.freq_dev;
    out->mech_power = n.mech_power;
    out->valve_pos = n.valve_pos;
  });
}

int freqbias_analytic_droop(const freqbias_gtg_params* params, double* sigma,
                            double* alpha) {
  if (!params || !sigma || !alpha)
    return set_bad_args("params, sigma and alpha must be non-NULL");
  return guarded([&] {
    PlantDroop d = analytic_droop(to_params(*params));
    *sigma = d.sigma;
    *alpha = d.alpha;
  });
}

int freqbias_aggregate_area(const freqbias_gtg_params* units, size_t count,
                            double power_base_mw, double* beta_mw_per_hz,
                            double* sigma_hz_per_mw, double* alpha) {
  if (!units || !beta_mw_per_hz || !sigma_hz_per_mw || !alpha)
    return set_bad_args("arguments must be non-NULL");
  return guarded([&] {
    std::vector<GtgParams> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.push_back(to_params(units[i]));
    AreaDroop area = aggregate_area(v, power_base_mw);
    *beta_mw_per_hz = area.beta.magnitude;
    *sigma_hz_per_mw = area.sigma_hz_per_mw;
    *alpha = area.alpha;
  });
}

void freqbias_estimator_config_init(freqbias_estimator_config* cfg) {
  if (!cfg) return;
  EstimatorConfig d;
  cfg->window_minutes = d.window_minutes;
  cfg->stride_minutes = d.stride_minutes;
  cfg->condition_threshold = d.condition_threshold;
  cfg->min_regressor_variance = d.min_regressor_variance;
}

int freqbias_ols_fit(const freqbias_series* f, const freqbias_series* f_ref,
                     const freqbias_series* p, size_t window_start,
                     size_t window_length,
                     const freqbias_estimator_config* cfg,
                     freqbias_estimate* out) {
  if (!f || !f_ref || !p || !out)
    return set_bad_args("series and out must be non-NULL");
  return guarded([&] {
    DroopEstimate e = ols_fit(f->ts, f_ref->ts, p->ts,
                              Window{window_start, window_length},
                              to_config(cfg));
    *out = to_c(e);
  });
}

int freqbias_rolling_estimate(const freqbias_series* f,
                              const freqbias_series* f_ref,
                              const freqbias_series* p,
                              const freqbias_estimator_config* cfg,
                              freqbias_estimate** out, size_t* count) {
  if (!f || !f_ref || !p || !out || !count)
    return set_bad_args("series, out and count must be non-NULL");
  *out = nullptr;
  *count = 0;
  return guarded([&] {
    std::vector<DroopEstimate> es =
        rolling_estimate(f->ts, f_ref->ts, p->ts, to_config(cfg));
    auto* buf = static_cast<freqbias_estimate*>(
        ::operator new[](es.size() * sizeof(freqbias_estimate)));
    for (size_t i = 0; i < es.size(); ++i) buf[i] = to_c(es[i]);
    *out = buf;
    *count = es.size();
  });
}

void freqbias_estimates_free(freqbias_estimate* estimates) {
  ::operator delete[](static_cast<void*>(estimates));
}

int freqbias_objective_value(const freqbias_series* f,
                             const freqbias_series* f_ref,
                             const freqbias_series* p, size_t window_start,
                             size_t window_length, double alpha, double sigma,
                             double* out) {
  if (!f || !f_ref || !p || !out)
    return set_bad_args("series and out must be non-NULL");
  return guarded([&] {
    *out = objective_value(f->ts, f_ref->ts, p->ts,
                           Window{window_start, window_length}, alpha, sigma);
  });
}

int freqbias_interchange_deviation(const freqbias_series* nai,
                                   const freqbias_series* nsi,
                                   freqbias_series** out) {
  if (!nai || !nsi || !out) return set_bad_args("arguments must be non-NULL");
  *out = nullptr;
  return guarded(
      [&] { *out = new freqbias_series{interchange_deviation(nai->ts, nsi->ts)}; });
}

int freqbias_ace_f_from_bias(double beta_magnitude, int beta_unit,
                             const freqbias_series* delta_f,
                             freqbias_series** out) {
  if (!delta_f || !out) return set_bad_args("delta_f and out must be non-NULL");
  *out = nullptr;
  return guarded([&] {
    BiasValue b{beta_magnitude, to_unit(beta_unit)};
    *out = new freqbias_series{ace_f_from_bias(b, delta_f->ts)};
  });
}

int freqbias_iee_hourly(const freqbias_series* nai, const freqbias_series* nsi,
                        double** iee_mwh, size_t* hours) {
  if (!nai || !nsi || !iee_mwh || !hours)
    return set_bad_args("arguments must be non-NULL");
  *iee_mwh = nullptr;
  *hours = 0;
  return guarded([&] {
    std::vector<IeeRecord> rs = iee_hourly(nai->ts, nsi->ts);
    std::vector<double> v(rs.size());
    for (size_t h = 0; h < rs.size(); ++h) v[h] = rs[h].iee_mwh;
    *iee_mwh = copy_buffer(v);
    *hours = v.size();
  });
}

int freqbias_reserve_envelope(const freqbias_series* series, double quantile,
                              double** reg_up_mw, double** reg_down_mw,
                              size_t* hours) {
  if (!series || !reg_up_mw || !reg_down_mw || !hours)
    return set_bad_args("arguments must be non-NULL");
  *reg_up_mw = nullptr;
  *reg_down_mw = nullptr;
  *hours = 0;
  return guarded([&] {
    std::vector<ReserveEnvelope> es = reserve_envelope(series->ts, quantile);
    std::vector<double> up(es.size()), down(es.size());
    for (size_t h = 0; h < es.size(); ++h) {
      up[h] = es[h].reg_up_mw;
      down[h] = es[h].reg_down_mw;
    }
    *reg_up_mw = copy_buffer(up);
    *reg_down_mw = copy_buffer(down);
    *hours = es.size();
  });
}

int freqbias_cost_savings(double avg_mw, double price_up, double price_down,
                          double hours, double* out) {
  if (!out) return set_bad_args("out must be non-NULL");
  return guarded([&] {
    *out = cost_savings(avg_mw, CostModel{price_up, price_down, hours});
  });
}

int freqbias_band_compliance(const freqbias_series* f,
                             const freqbias_series* f_ref, double nominal_hz,
                             double half_width_hz, double* out) {
  if (!f || !f_ref || !out) return set_bad_args("arguments must be non-NULL");
  return guarded([&] {
    *out = band_compliance(f->ts, f_ref->ts, BandSpec{nominal_hz, half_width_hz});
  });
}

void freqbias_buffer_free(double* buffer) {
  ::operator delete[](static_cast<void*>(buffer));
}

void freqbias_sim_spec_init(freqbias_sim_spec* spec) {
  if (!spec) return;
  spec->seed = 1;
  spec->minutes = 1440;
  spec->agc_enabled = 0;
  spec->load_kind = FREQBIAS_LOAD_RANDOM_WALK;
  spec->base_mw = 1000.0;
  spec->step_mw = 20.0;
  spec->rho = 0.0;
  spec->noise_mw = 0.0;
  spec->alpha = 0.98;
  spec->beta_mw_per_hz = 4090.0;
  spec->schedule_kind = FREQBIAS_SCHEDULE_CONSTANT;
  spec->beta2_mw_per_hz = 3500.0;
  spec->step_minute = 720;
  spec->sin_amplitude_mw_per_hz = 0.0;
  spec->sin_period_minutes = 1440.0;
  spec->sin_phase_rad = 0.0;
  spec->start_unix_s = kDefaultSimStart;
}

int freqbias_simulate_files(const freqbias_sim_spec* spec,
                            const char* dataset_csv, const char* truth_csv) {
  if (!spec || !dataset_csv)
    return set_bad_args("spec and dataset_csv must be non-NULL");
  return guarded([&] {
    SyntheticDataset ds = simulate_from_spec(*spec);
    write_dataset_csv(to_bundle(ds), dataset_csv);
    if (truth_csv) write_truth_csv(ds.truth, truth_csv);
  });
}

void freqbias_run_config_init(freqbias_run_config* cfg) {
  if (!cfg) return;
  freqbias_estimator_config_init(&cfg->estimator);
  cfg->fixed_beta = 409.0;
  cfg->fixed_beta_unit = FREQBIAS_UNIT_MW_PER_0P1HZ;
  cfg->band_nominal_hz = 60.0;
  cfg->band_half_width_hz = 0.036;
  cfg->price_up = 10.0;
  cfg->price_down = 10.0;
  cfg->cost_hours = 720.0;
  cfg->quantile = 1.0;
  cfg->gap_policy = FREQBIAS_GAP_REJECT;
  cfg->flip_interchange_sign = 0;
}

int freqbias_run_file(const char* input_csv, const char* truth_csv,
                      const freqbias_run_config* cfg, const char* out_dir,
                      unsigned stage_mask) {
  if (!input_csv || !cfg || !out_dir)
    return set_bad_args("input_csv, cfg and out_dir must be non-NULL");
  return guarded([&] {
    RunConfig rc = to_run_config(*cfg);
    TelemetryBundle bundle = ingest_csv(input_csv, rc.gap_policy);
    std::vector<TruthPoint> truth;
    if (truth_csv) truth = load_truth_csv(truth_csv);
    run_pipeline(bundle, truth, rc, out_dir, stage_mask);
  });
}

}  // extern "C"
