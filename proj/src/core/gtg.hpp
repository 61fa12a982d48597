// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_GTG_HPP
#define FREQBIAS_CORE_GTG_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/timeseries.hpp"

namespace freqbias {

/// Governor-turbine-generator constants (per-unit on the plant base).
/// The droop loop closed through the governor is only conditionally
/// stable: (T_a s + r)(T_u s + 1)(J s + D) + K_t + e_T (T_u s + 1) must
/// be Hurwitz. The defaults below are a deliberately well damped plant
/// (closed-loop poles near -3.3 and -0.67 +/- 0.83j) so step responses
/// settle far inside 50*max(T_u, T_a).
struct GtgParams {
  double inertia = 2.0;          // J, pu*s^2
  double damping = 4.0;          // D, pu
  double turbine_time_s = 0.4;   // T_u
  double turbine_gain = 1.0;     // K_t, pu
  double valve_time_s = 0.4;     // T_a
  double regulation = 0.05;      // r, pu, > 0
  double valve_coupling = 0.0;   // e_T, pu; the source model leaves it open
  double omega_nominal = 376.99111843077515;  // omega_0 = 2*pi*60 rad/s
};

/// Throws DegenerateParams unless J, T_u, T_a, r > 0, D >= 0, K_t > 0,
/// all finite.
void validate_params(const GtgParams& p);

/// Plant dynamic state.
struct GtgState {
  double rotor_angle = 0.0;  // theta_G, rad
  double freq_dev = 0.0;     // omega_G, pu
  double mech_power = 0.0;   // P_T, pu
  double valve_pos = 0.0;    // a, pu
};

/// One fixed-step RK4 step of the four-state plant under a governor set
/// point omega_ref and electrical loading p_elec (both per-unit).
/// dt must satisfy 0 < dt <= T_a/10.
GtgState step_gtg(const GtgState& s, const GtgParams& p, double omega_ref,
                  double p_elec, double dt);

/// Steady-state droop coefficients of a single plant:
///   sigma = r / (r*D + K_t + e_T),  alpha = 1 - sigma*D.
struct PlantDroop {
  double sigma = 0.0;  // pu frequency per pu power
  double alpha = 1.0;
};

PlantDroop analytic_droop(const GtgParams& p);

/// The fixed point of the fast states for constant (omega_ref, p_elec);
/// rotor_angle is set to 0 (it integrates freq_dev and only holds still
/// when the settled frequency deviation is zero).
GtgState equilibrium_state(const GtgParams& p, double omega_ref,
                           double p_elec);

/// Suggested integrator step for a plant: min(T_u, T_a)/20.
double default_step_s(const GtgParams& p);

/// Aggregate droop of one balancing area.
struct AreaDroop {
  double sigma_hz_per_mw = 0.0;
  double alpha = 1.0;
  BiasValue beta{0.0, Unit::mw_per_hz};
  std::vector<double> member_sigmas;  // per-unit plant droops
  double damping_mw_per_hz = 0.0;
};

/// Sums plant natural responses: beta = sum(base_mw / sigma_j),
/// sigma = 1/beta, alpha = 1 - sigma * sum(D_j * base_mw).
AreaDroop aggregate_area(const std::vector<GtgParams>& units,
                         double power_base_mw = 1000.0);

/// Area with prescribed (alpha, beta) and the damping implied by them.
AreaDroop area_from_alpha_beta(double alpha, double beta_mw_per_hz);

/// Aggregate set point: alpha_area * ref_area = sum(alpha_j * ref_j).
double aggregate_reference(const std::vector<GtgParams>& units,
                           const std::vector<double>& unit_refs,
                           double power_base_mw = 1000.0);

/// Internal load process driving a synthetic day.
struct LoadModel {
  enum class Kind { constant, random_walk, ar1 };
  Kind kind = Kind::constant;
  double base_mw = 1000.0;
  double step_mw = 0.0;   // random_walk innovation scale, >= 0
  double rho = 0.0;       // ar1 pole, in [0, 1)
  double noise_mw = 0.0;  // ar1 innovation scale, >= 0
};

/// Ground-truth bias trajectory beta(t) in MW/Hz.
struct BiasSchedule {
  enum class Kind { constant, piecewise, sinusoidal };
  struct Segment {
    int start_minute = 0;
    double beta_mw_per_hz = 0.0;
  };
  Kind kind = Kind::constant;
  std::vector<Segment> segments;  // piecewise: sorted, first at minute 0
  double beta0_mw_per_hz = 0.0;   // sinusoidal center
  double amplitude_mw_per_hz = 0.0;
  double period_minutes = 1440.0;
  double phase_rad = 0.0;

  static BiasSchedule piecewise(std::vector<Segment> segs);
  static BiasSchedule sinusoidal(double beta0, double amplitude,
                                 double period_minutes, double phase_rad = 0.0);
  double beta_at(int minute) const;
};

/// Disturbances for one synthetic balancing-authority day.
struct DisturbanceSpec {
  std::uint64_t seed = 0;
  LoadModel load;
  enum class InterchangeKind { zero, exogenous };
  InterchangeKind interchange = InterchangeKind::zero;
  // Unscheduled interchange deviation in MW, minute-sampled; NAI takes
  // this value against a zero schedule (NSI == 0).
  std::optional<TimeSeries> interchange_series;
  std::optional<BiasSchedule> bias_schedule;
};

struct TruthPoint {
  double alpha = 0.0;
  double sigma_hz_per_mw = 0.0;
  double beta_mw_per_hz = 0.0;
};

/// Minute telemetry with the generating ground truth attached.
struct SyntheticDataset {
  TimeSeries f;         // Hz
  TimeSeries f_ref;     // Hz
  TimeSeries p_g;       // MW
  TimeSeries nai;       // MW
  TimeSeries nsi;       // MW
  TimeSeries p_l_true;  // MW
  std::vector<TruthPoint> truth;
};

inline constexpr std::int64_t kDefaultSimStart = 1483228800;  // 2017-01-01Z

/// Quasi-static per-minute sampling of the aggregate droop plane
/// f = alpha*f_ref - sigma*p_g with generation balancing load plus
/// interchange. With AGC on, the set point is re-adjusted each minute to
/// cancel the previous minute's ACE (computed against f_ref as the
/// scheduled frequency), so ACE carries only disturbance innovations.
SyntheticDataset simulate_ba(const AreaDroop& area, const DisturbanceSpec& spec,
                             int minutes, bool agc_enabled,
                             std::int64_t start_unix_s = kDefaultSimStart);

SyntheticDataset simulate_ba(const std::vector<GtgParams>& units,
                             const DisturbanceSpec& spec, int minutes,
                             bool agc_enabled,
                             std::int64_t start_unix_s = kDefaultSimStart);

/// Two coupled areas sharing one tie schedule. Area A exports what B
/// imports: nai_B = -nai_A per sample, nsi_A = schedule, nsi_B = -schedule.
/// The unscheduled deviation comes from spec_a; spec_b must use the zero
/// interchange model. schedule_nsi may be minute (60 s) or hourly (3600 s,
/// zero-order held).
std::pair<SyntheticDataset, SyntheticDataset> two_area_interchange(
    const AreaDroop& area_a, const DisturbanceSpec& spec_a,
    const AreaDroop& area_b, const DisturbanceSpec& spec_b,
    const TimeSeries& schedule_nsi, bool agc_enabled,
    std::int64_t start_unix_s = kDefaultSimStart);

}  // namespace freqbias

#endif
