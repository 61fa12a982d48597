// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/gtg.hpp"

#include <cmath>
#include <string>

#include "core/rng.hpp"

namespace freqbias {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool all_finite(const GtgParams& p) {
  return std::isfinite(p.inertia) && std::isfinite(p.damping) &&
         std::isfinite(p.turbine_time_s) && std::isfinite(p.turbine_gain) &&
         std::isfinite(p.valve_time_s) && std::isfinite(p.regulation) &&
         std::isfinite(p.valve_coupling) && std::isfinite(p.omega_nominal);
}

struct Deriv {
  double d_theta, d_omega, d_pt, d_a;
};

Deriv derivs(const GtgParams& p, const GtgState& s, double omega_ref,
             double p_elec) {
  Deriv d;
  d.d_theta = p.omega_nominal * s.freq_dev;
  d.d_omega = (s.mech_power + p.valve_coupling * s.valve_pos - p_elec -
               p.damping * s.freq_dev) /
              p.inertia;
  d.d_pt = (-s.mech_power + p.turbine_gain * s.valve_pos) / p.turbine_time_s;
  d.d_a = (-p.regulation * s.valve_pos - s.freq_dev + omega_ref) /
          p.valve_time_s;
  return d;
}

GtgState advance(const GtgState& s, const Deriv& d, double h) {
  GtgState out;
  out.rotor_angle = s.rotor_angle + h * d.d_theta;
  out.freq_dev = s.freq_dev + h * d.d_omega;
  out.mech_power = s.mech_power + h * d.d_pt;
  out.valve_pos = s.valve_pos + h * d.d_a;
  return out;
}

}  // namespace

void validate_params(const GtgParams& p) {
  if (!all_finite(p))
    fail(Status::degenerate_params, "plant parameters must be finite");
  if (!(p.inertia > 0.0))
    fail(Status::degenerate_params, "inertia J must be positive");
  if (!(p.turbine_time_s > 0.0))
    fail(Status::degenerate_params, "turbine time constant T_u must be positive");
  if (!(p.valve_time_s > 0.0))
    fail(Status::degenerate_params, "valve time constant T_a must be positive");
  if (!(p.regulation > 0.0))
    fail(Status::degenerate_params, "regulation constant r must be positive");
  if (!(p.damping >= 0.0))
    fail(Status::degenerate_params, "damping D must be nonnegative");
  if (!(p.turbine_gain > 0.0))
    fail(Status::degenerate_params, "turbine gain K_t must be positive");
}

GtgState step_gtg(const GtgState& s, const GtgParams& p, double omega_ref,
                  double p_elec, double dt) {
  validate_params(p);
  if (!(dt > 0.0) || dt > p.valve_time_s / 10.0)
    fail(Status::step_too_large,
         "integrator step must satisfy 0 < dt <= T_a/10");
  if (!std::isfinite(omega_ref) || !std::isfinite(p_elec))
    fail(Status::non_finite_state, "inputs to step_gtg must be finite");

  Deriv k1 = derivs(p, s, omega_ref, p_elec);
  Deriv k2 = derivs(p, advance(s, k1, dt / 2.0), omega_ref, p_elec);
  Deriv k3 = derivs(p, advance(s, k2, dt / 2.0), omega_ref, p_elec);
  Deriv k4 = derivs(p, advance(s, k3, dt), omega_ref, p_elec);

  GtgState out;
  out.rotor_angle =
      s.rotor_angle +
      dt / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta);
  out.freq_dev =
      s.freq_dev +
      dt / 6.0 * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega);
  out.mech_power =
      s.mech_power + dt / 6.0 * (k1.d_pt + 2.0 * k2.d_pt + 2.0 * k3.d_pt + k4.d_pt);
  out.valve_pos =
      s.valve_pos + dt / 6.0 * (k1.d_a + 2.0 * k2.d_a + 2.0 * k3.d_a + k4.d_a);

  if (!std::isfinite(out.rotor_angle) || !std::isfinite(out.freq_dev) ||
      !std::isfinite(out.mech_power) || !std::isfinite(out.valve_pos))
    fail(Status::non_finite_state, "state diverged during integration");
  return out;
}

PlantDroop analytic_droop(const GtgParams& p) {
  validate_params(p);
  double denom = p.regulation * p.damping + p.turbine_gain + p.valve_coupling;
  if (!(denom > 0.0))
    fail(Status::degenerate_params,
         "droop undefined: r*D + K_t + e_T must be positive");
  PlantDroop d;
  d.sigma = p.regulation / denom;
  d.alpha = 1.0 - d.sigma * p.damping;
  return d;
}

GtgState equilibrium_state(const GtgParams& p, double omega_ref,
                           double p_elec) {
  PlantDroop d = analytic_droop(p);
  GtgState s;
  s.freq_dev = d.alpha * omega_ref - d.sigma * p_elec;
  s.valve_pos = (omega_ref - s.freq_dev) / p.regulation;
  s.mech_power = p.turbine_gain * s.valve_pos;
  s.rotor_angle = 0.0;
  return s;
}

double default_step_s(const GtgParams& p) {
  return std::min(p.turbine_time_s, p.valve_time_s) / 20.0;
}

AreaDroop aggregate_area(const std::vector<GtgParams>& units,
                         double power_base_mw) {
  if (units.empty()) fail(Status::empty_area, "area needs at least one plant");
  if (!(power_base_mw > 0.0) || !std::isfinite(power_base_mw))
    fail(Status::degenerate_params, "power base must be positive and finite");
  AreaDroop area;
  double beta = 0.0;
  double damping = 0.0;
  area.member_sigmas.reserve(units.size());
  for (const GtgParams& u : units) {
    PlantDroop d = analytic_droop(u);
    if (!(d.sigma > 0.0))
      fail(Status::degenerate_params, "plant droop must be positive");
    area.member_sigmas.push_back(d.sigma);
    beta += power_base_mw / d.sigma;
    damping += u.damping * power_base_mw;
  }
  area.beta = BiasValue{beta, Unit::mw_per_hz};
  area.sigma_hz_per_mw = 1.0 / beta;
  area.damping_mw_per_hz = damping;
  area.alpha = 1.0 - area.sigma_hz_per_mw * damping;
  return area;
}

AreaDroop area_from_alpha_beta(double alpha, double beta_mw_per_hz) {
  if (!std::isfinite(alpha) || !std::isfinite(beta_mw_per_hz) ||
      !(beta_mw_per_hz > 0.0) || !(alpha > 0.0) || alpha > 1.0)
    fail(Status::degenerate_params,
         "area needs beta > 0 and alpha in (0, 1]");
  AreaDroop area;
  area.alpha = alpha;
  area.beta = BiasValue{beta_mw_per_hz, Unit::mw_per_hz};
  area.sigma_hz_per_mw = 1.0 / beta_mw_per_hz;
  area.damping_mw_per_hz = (1.0 - alpha) * beta_mw_per_hz;
  return area;
}

double aggregate_reference(const std::vector<GtgParams>& units,
                           const std::vector<double>& unit_refs,
                           double power_base_mw) {
  if (units.size() != unit_refs.size())
    fail(Status::shape_mismatch,
         "aggregate_reference: one set point per plant required");
  AreaDroop area = aggregate_area(units, power_base_mw);
  double weighted = 0.0;
  for (std::size_t j = 0; j < units.size(); ++j)
    weighted += analytic_droop(units[j]).alpha * unit_refs[j];
  return weighted / area.alpha;
}

BiasSchedule BiasSchedule::piecewise(std::vector<Segment> segs) {
  BiasSchedule s;
  s.kind = Kind::piecewise;
  s.segments = std::move(segs);
  return s;
}

BiasSchedule BiasSchedule::sinusoidal(double beta0, double amplitude,
                                      double period_minutes, double phase_rad) {
  BiasSchedule s;
  s.kind = Kind::sinusoidal;
  s.beta0_mw_per_hz = beta0;
  s.amplitude_mw_per_hz = amplitude;
  s.period_minutes = period_minutes;
  s.phase_rad = phase_rad;
  return s;
}

double BiasSchedule::beta_at(int minute) const {
  switch (kind) {
    case Kind::constant:
      return beta0_mw_per_hz;
    case Kind::piecewise: {
      double beta = segments.front().beta_mw_per_hz;
      for (const Segment& seg : segments) {
        if (seg.start_minute <= minute) beta = seg.beta_mw_per_hz;
      }
      return beta;
    }
    case Kind::sinusoidal:
      return beta0_mw_per_hz +
             amplitude_mw_per_hz *
                 std::sin(2.0 * kPi * minute / period_minutes + phase_rad);
  }
  return beta0_mw_per_hz;
}

namespace {

void validate_schedule(const BiasSchedule& s, int minutes) {
  switch (s.kind) {
    case BiasSchedule::Kind::constant:
      if (!(s.beta0_mw_per_hz > 0.0))
        fail(Status::invalid_spec, "bias schedule needs beta > 0");
      break;
    case BiasSchedule::Kind::piecewise: {
      if (s.segments.empty())
        fail(Status::invalid_spec, "piecewise bias schedule has no segments");
      if (s.segments.front().start_minute != 0)
        fail(Status::invalid_spec,
             "piecewise bias schedule must start at minute 0");
      int prev = -1;
      for (const BiasSchedule::Segment& seg : s.segments) {
        if (seg.start_minute <= prev || seg.start_minute >= minutes)
          fail(Status::invalid_spec,
               "piecewise segments must be strictly increasing within the run");
        if (!(seg.beta_mw_per_hz > 0.0))
          fail(Status::invalid_spec, "bias schedule needs beta > 0");
        prev = seg.start_minute;
      }
      break;
    }
    case BiasSchedule::Kind::sinusoidal:
      if (!(s.period_minutes > 0.0))
        fail(Status::invalid_spec, "sinusoidal bias period must be positive");
      if (!(s.beta0_mw_per_hz - std::fabs(s.amplitude_mw_per_hz) > 0.0))
        fail(Status::invalid_spec,
             "sinusoidal bias must stay positive over the full cycle");
      break;
  }
}

void validate_spec(const AreaDroop& area, const DisturbanceSpec& spec,
                   int minutes, bool agc_enabled) {
  if (minutes < 2) fail(Status::invalid_spec, "simulation needs >= 2 minutes");
  if (!(area.sigma_hz_per_mw > 0.0) || !(area.beta.magnitude > 0.0))
    fail(Status::invalid_spec, "area droop must be positive");
  if (agc_enabled && area.alpha == 1.0)
    fail(Status::invalid_spec,
         "AGC set-point control needs alpha != 1 in the quasi-static model");
  const LoadModel& lm = spec.load;
  if (!std::isfinite(lm.base_mw))
    fail(Status::invalid_spec, "load base must be finite");
  if (lm.kind == LoadModel::Kind::random_walk && !(lm.step_mw >= 0.0))
    fail(Status::invalid_spec, "random-walk step must be >= 0");
  if (lm.kind == LoadModel::Kind::ar1) {
    if (!(lm.rho >= 0.0) || lm.rho >= 1.0)
      fail(Status::invalid_spec, "ar1 coefficient must lie in [0, 1)");
    if (!(lm.noise_mw >= 0.0))
      fail(Status::invalid_spec, "ar1 noise must be >= 0");
  }
  if (spec.interchange == DisturbanceSpec::InterchangeKind::exogenous) {
    if (!spec.interchange_series)
      fail(Status::invalid_spec, "exogenous interchange needs a series");
    const TimeSeries& x = *spec.interchange_series;
    if (x.period_s() != 60.0 ||
        x.size() != static_cast<std::size_t>(minutes))
      fail(Status::invalid_spec,
           "interchange series must be minute-sampled over the full run");
  }
  if (spec.bias_schedule) validate_schedule(*spec.bias_schedule, minutes);
}

/// Shared per-minute kernel. nai/nsi are fully resolved MW series of
/// length `minutes`.
SyntheticDataset simulate_area(const AreaDroop& area,
                               const DisturbanceSpec& spec,
                               const std::vector<double>& nai,
                               const std::vector<double>& nsi, int minutes,
                               bool agc_enabled, std::int64_t start_unix_s) {
  const std::size_t n = static_cast<std::size_t>(minutes);
  std::vector<double> load(n), p_g(n), f(n), f_ref(n);
  std::vector<TruthPoint> truth(n);

  Rng rng(spec.seed);
  const LoadModel& lm = spec.load;
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    switch (lm.kind) {
      case LoadModel::Kind::constant:
        break;
      case LoadModel::Kind::random_walk:
        if (k > 0) dev += lm.step_mw * rng.normal();
        break;
      case LoadModel::Kind::ar1:
        if (k > 0) dev = lm.rho * dev + lm.noise_mw * rng.normal();
        break;
    }
    load[k] = lm.base_mw + dev;
    p_g[k] = load[k] + nai[k];
  }

  for (std::size_t k = 0; k < n; ++k) {
    double beta = spec.bias_schedule
                      ? spec.bias_schedule->beta_at(static_cast<int>(k))
                      : area.beta.magnitude;
    double sigma = 1.0 / beta;
    truth[k] = TruthPoint{area.alpha, sigma, beta};

    if (agc_enabled) {
      // Deadbeat set-point correction on last minute's measurements:
      // choose f_ref so ACE would vanish if the disturbances held still.
      std::size_t j = (k == 0) ? 0 : k - 1;  // warm start at equilibrium
      double df_inter = nai[j] - nsi[j];
      f_ref[k] = sigma * (p_g[j] + df_inter) / (area.alpha - 1.0);
    } else {
      f_ref[k] = 60.0;
    }
    f[k] = area.alpha * f_ref[k] - sigma * p_g[k];
  }

  SyntheticDataset ds{
      make_series(start_unix_s, 60.0, std::move(f), Unit::hz),
      make_series(start_unix_s, 60.0, std::move(f_ref), Unit::hz),
      make_series(start_unix_s, 60.0, std::move(p_g), Unit::mw),
      make_series(start_unix_s, 60.0, std::vector<double>(nai), Unit::mw),
      make_series(start_unix_s, 60.0, std::vector<double>(nsi), Unit::mw),
      make_series(start_unix_s, 60.0, std::move(load), Unit::mw),
      std::move(truth)};
  return ds;
}

}  // namespace

SyntheticDataset simulate_ba(const AreaDroop& area, const DisturbanceSpec& spec,
                             int minutes, bool agc_enabled,
                             std::int64_t start_unix_s) {
  validate_spec(area, spec, minutes, agc_enabled);
  std::size_t n = static_cast<std::size_t>(minutes);
  std::vector<double> nai(n, 0.0), nsi(n, 0.0);
  if (spec.interchange == DisturbanceSpec::InterchangeKind::exogenous) {
    // Unscheduled deviation against a zero schedule: NAI - NSI = series.
    for (std::size_t k = 0; k < n; ++k) nai[k] = (*spec.interchange_series)[k];
  }
  return simulate_area(area, spec, nai, nsi, minutes, agc_enabled,
                       start_unix_s);
}

SyntheticDataset simulate_ba(const std::vector<GtgParams>& units,
                             const DisturbanceSpec& spec, int minutes,
                             bool agc_enabled, std::int64_t start_unix_s) {
  return simulate_ba(aggregate_area(units), spec, minutes, agc_enabled,
                     start_unix_s);
}

std::pair<SyntheticDataset, SyntheticDataset> two_area_interchange(
    const AreaDroop& area_a, const DisturbanceSpec& spec_a,
    const AreaDroop& area_b, const DisturbanceSpec& spec_b,
    const TimeSeries& schedule_nsi, bool agc_enabled,
    std::int64_t start_unix_s) {
  std::size_t minutes = 0;
  std::vector<double> sched;
  if (schedule_nsi.period_s() == 60.0) {
    minutes = schedule_nsi.size();
    sched.assign(schedule_nsi.values().begin(), schedule_nsi.values().end());
  } else if (schedule_nsi.period_s() == 3600.0) {
    minutes = schedule_nsi.size() * 60;
    sched.resize(minutes);
    for (std::size_t k = 0; k < minutes; ++k)
      sched[k] = schedule_nsi[k / 60];  // hold each hourly schedule flat
  } else {
    fail(Status::schedule_mismatch,
         "interchange schedule must be minute (60 s) or hourly (3600 s)");
  }
  if (minutes < 2)
    fail(Status::schedule_mismatch, "schedule must span at least 2 minutes");
  if (spec_b.interchange != DisturbanceSpec::InterchangeKind::zero)
    fail(Status::invalid_spec,
         "two-area deviation is driven from the first spec only");

  validate_spec(area_a, spec_a, static_cast<int>(minutes), agc_enabled);
  validate_spec(area_b, spec_b, static_cast<int>(minutes), agc_enabled);
  if (spec_a.interchange == DisturbanceSpec::InterchangeKind::exogenous &&
      spec_a.interchange_series->size() != minutes)
    fail(Status::schedule_mismatch,
         "deviation series must align with the interchange schedule");

  std::vector<double> nai_a(minutes), nsi_a(sched), nai_b(minutes),
      nsi_b(minutes);
  for (std::size_t k = 0; k < minutes; ++k) {
    double dev = 0.0;
    if (spec_a.interchange == DisturbanceSpec::InterchangeKind::exogenous)
      dev = (*spec_a.interchange_series)[k];
    nai_a[k] = sched[k] + dev;
    nai_b[k] = -nai_a[k];
    nsi_b[k] = -sched[k];
  }
  SyntheticDataset a = simulate_area(area_a, spec_a, nai_a, nsi_a,
                                     static_cast<int>(minutes), agc_enabled,
                                     start_unix_s);
  SyntheticDataset b = simulate_area(area_b, spec_b, nai_b, nsi_b,
                                     static_cast<int>(minutes), agc_enabled,
                                     start_unix_s);
  return {std::move(a), std::move(b)};
}

}  // namespace freqbias
