// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/ace.hpp"

#include <cmath>

namespace freqbias {

namespace {

TimeSeries expand_if_hourly(const TimeSeries& nsi, const TimeSeries& nai) {
  if (nsi.period_s() == 3600.0 && nai.period_s() == 60.0) {
    if (nai.size() != nsi.size() * 60 || nai.start_time() != nsi.start_time())
      fail(Status::shape_mismatch,
           "hourly schedule must cover the minute series exactly");
    std::vector<double> v(nai.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = nsi[k / 60];
    return make_series(nai.start_time(), 60.0, std::move(v), nsi.unit());
  }
  return nsi;
}

void check_mw(const TimeSeries& s, const char* name) {
  if (s.unit() != Unit::mw)
    fail(Status::unit_mismatch, std::string(name) + " must be in MW");
}

std::vector<double> scaled_delta_f(const std::vector<BiasValue>& betas,
                                   const TimeSeries& delta_f) {
  if (delta_f.unit() != Unit::hz)
    fail(Status::unit_mismatch, "delta_f must be in Hz");
  if (betas.size() != delta_f.size())
    fail(Status::shape_mismatch, "need one bias value per frequency sample");
  std::vector<double> out(delta_f.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = -bias_mw_per_hz(betas[k]) * delta_f[k];
  return out;
}

}  // namespace

TimeSeries interchange_deviation(const TimeSeries& nai, const TimeSeries& nsi) {
  check_mw(nai, "nai");
  check_mw(nsi, "nsi");
  TimeSeries sched = expand_if_hourly(nsi, nai);
  return subtract(nai, sched);
}

TimeSeries ace_f_from_bias(BiasValue beta, const TimeSeries& delta_f) {
  if (delta_f.unit() != Unit::hz)
    fail(Status::unit_mismatch, "delta_f must be in Hz");
  double b = bias_mw_per_hz(beta);
  std::vector<double> out(delta_f.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -b * delta_f[k];
  return make_series(delta_f.start_time(), delta_f.period_s(), std::move(out),
                     Unit::mw);
}

TimeSeries ace_f_from_bias(const std::vector<BiasValue>& betas,
                           const TimeSeries& delta_f) {
  return make_series(delta_f.start_time(), delta_f.period_s(),
                     scaled_delta_f(betas, delta_f), Unit::mw);
}

std::vector<AceRecord> compose_ace(const TimeSeries& ace_f,
                                   const TimeSeries& delta_F) {
  require_aligned(ace_f, delta_F, "compose_ace");
  check_mw(ace_f, "ace_f");
  check_mw(delta_F, "delta_F");
  std::vector<AceRecord> out(ace_f.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].minute_index = k;
    out[k].ace_f_mw = ace_f[k];
    out[k].delta_f_interchange_mw = delta_F[k];
    out[k].ace_total_mw = ace_f[k] + delta_F[k];
  }
  return out;
}

LoadDeviationSeries estimate_load_deviation(BiasValue fixed_beta,
                                            const TimeSeries& delta_f) {
  return LoadDeviationSeries{ace_f_from_bias(fixed_beta, delta_f),
                             BetaSource::fixed};
}

LoadDeviationSeries estimate_load_deviation(const std::vector<BiasValue>& betas,
                                            const TimeSeries& delta_f) {
  return LoadDeviationSeries{ace_f_from_bias(betas, delta_f),
                             BetaSource::estimated};
}

std::vector<IeeRecord> iee_hourly(const TimeSeries& nai, const TimeSeries& nsi) {
  TimeSeries hourly = hourly_sum_mwh(interchange_deviation(nai, nsi));
  std::vector<IeeRecord> out(hourly.size());
  for (std::size_t h = 0; h < out.size(); ++h)
    out[h] = IeeRecord{h, hourly[h], hourly[h]};
  return out;
}

std::vector<IeeRecord> iee_compare(const TimeSeries& nai, const TimeSeries& nsi,
                                   const TimeSeries& f, const TimeSeries& f_ref,
                                   BiasValue fixed_beta,
                                   const std::vector<BiasValue>& estimated) {
  TimeSeries dev = interchange_deviation(nai, nsi);
  require_aligned(f, f_ref, "iee_compare");
  require_aligned(dev, f, "iee_compare");
  TimeSeries delta_f = subtract(f, f_ref);
  double b_fix = bias_mw_per_hz(fixed_beta);
  if (estimated.size() != dev.size())
    fail(Status::shape_mismatch, "need one estimated bias per minute");

  // Counterfactual interchange: regulation recomputed with the estimated
  // bias shifts NAI by (beta_est - beta_fixed) * delta_f each minute.
  std::vector<double> adjusted(dev.size());
  for (std::size_t k = 0; k < dev.size(); ++k) {
    double b_est = bias_mw_per_hz(estimated[k]);
    adjusted[k] = dev[k] + (b_est - b_fix) * delta_f[k];
  }
  TimeSeries as_recorded = hourly_sum_mwh(dev);
  TimeSeries optimal = hourly_sum_mwh(make_series(
      dev.start_time(), dev.period_s(), std::move(adjusted), Unit::mw));

  std::vector<IeeRecord> out(as_recorded.size());
  for (std::size_t h = 0; h < out.size(); ++h)
    out[h] = IeeRecord{h, as_recorded[h], optimal[h]};
  return out;
}

std::vector<BiasValue> beta_series_from_estimates(
    const std::vector<DroopEstimate>& estimates, std::size_t minutes) {
  if (estimates.empty())
    fail(Status::empty_series, "no estimates to expand");
  std::vector<BiasValue> out(minutes);
  std::size_t next = 0;
  BiasValue current = estimates.front().beta;
  for (std::size_t k = 0; k < minutes; ++k) {
    while (next < estimates.size() && estimates[next].minute_index <= k) {
      current = estimates[next].beta;
      ++next;
    }
    if (!std::isfinite(current.magnitude))
      fail(Status::non_finite_value,
           "estimate sequence contains a non-finite bias");
    out[k] = current;
  }
  return out;
}

}  // namespace freqbias
