// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/reserve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/timeutil.hpp"

namespace freqbias {

namespace {

void check_hourly_minutes(const TimeSeries& s) {
  if (s.unit() != Unit::mw)
    fail(Status::unit_mismatch, "envelope input must be in MW");
  if (s.period_s() != 60.0)
    fail(Status::period_mismatch, "envelope input must be minute-sampled");
  if (s.size() % 60 != 0)
    fail(Status::partial_hour, "envelope input must span whole hours");
}

double lower_quantile(std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(v.size())));
  if (idx == 0) idx = 1;
  if (idx > v.size()) idx = v.size();
  return v[idx - 1];
}

}  // namespace

std::vector<ReserveEnvelope> reserve_envelope(const TimeSeries& series,
                                              double quantile,
                                              EnvelopeBasis basis) {
  check_hourly_minutes(series);
  if (!(quantile > 0.5) || !(quantile <= 1.0))
    fail(Status::bad_quantile, "quantile must lie in (0.5, 1.0]");
  std::size_t hours = series.size() / 60;
  std::vector<ReserveEnvelope> out(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    std::vector<double> up, down;
    for (std::size_t m = 0; m < 60; ++m) {
      double x = series[h * 60 + m];
      if (x > 0.0) up.push_back(x);
      if (x < 0.0) down.push_back(-x);
    }
    out[h] = ReserveEnvelope{h, lower_quantile(up, quantile),
                             lower_quantile(down, quantile), basis, quantile};
  }
  return out;
}

TighteningResult envelope_tightening(const TimeSeries& with_interchange,
                                     const TimeSeries& without_interchange,
                                     double quantile) {
  require_aligned(with_interchange, without_interchange, "envelope_tightening");
  std::vector<ReserveEnvelope> before =
      reserve_envelope(with_interchange, quantile);
  std::vector<ReserveEnvelope> after =
      reserve_envelope(without_interchange, quantile);
  TighteningResult r;
  r.per_hour_mw.resize(before.size());
  double acc = 0.0;
  for (std::size_t h = 0; h < before.size(); ++h) {
    r.per_hour_mw[h] = (before[h].reg_up_mw + before[h].reg_down_mw) -
                       (after[h].reg_up_mw + after[h].reg_down_mw);
    acc += r.per_hour_mw[h];
  }
  r.average_mw = before.empty() ? 0.0 : acc / static_cast<double>(before.size());
  return r;
}

double cost_savings(double avg_mw, const CostModel& model) {
  if (!(avg_mw >= 0.0) || !(model.price_up >= 0.0) ||
      !(model.price_down >= 0.0) || !(model.hours >= 0.0))
    fail(Status::negative_input, "cost model inputs must be nonnegative");
  return avg_mw * (model.price_up + model.price_down) * model.hours;
}

double band_compliance(const TimeSeries& f, const TimeSeries& f_ref,
                       const BandSpec& band) {
  require_aligned(f, f_ref, "band_compliance");
  if (!(band.half_width_hz > 0.0))
    fail(Status::invalid_spec, "band half-width must be positive");
  std::size_t in_band = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (std::fabs(f[k] - f_ref[k]) <= band.half_width_hz) ++in_band;
  }
  return static_cast<double>(in_band) / static_cast<double>(f.size());
}

std::vector<MonthlyEnvelope> group_envelopes_by_month(
    const std::vector<ReserveEnvelope>& envelopes, std::int64_t start_unix_s) {
  std::vector<MonthlyEnvelope> out;
  for (const ReserveEnvelope& e : envelopes) {
    std::int64_t t =
        start_unix_s + static_cast<std::int64_t>(e.hour_index) * 3600;
    std::int64_t days = t / 86400;
    if (t % 86400 < 0) --days;  // floor for pre-epoch times
    CivilDate d = civil_from_days(days);
    if (out.empty() || out.back().year != d.year || out.back().month != d.month)
      out.push_back(MonthlyEnvelope{d.year, d.month, 0.0, 0.0, 0});
    MonthlyEnvelope& m = out.back();
    m.mean_reg_up_mw += e.reg_up_mw;
    m.mean_reg_down_mw += e.reg_down_mw;
    ++m.hours;
  }
  for (MonthlyEnvelope& m : out) {
    m.mean_reg_up_mw /= static_cast<double>(m.hours);
    m.mean_reg_down_mw /= static_cast<double>(m.hours);
  }
  return out;
}

double round_to_cents(double dollars) {
  // nearbyint honors the default to-nearest-even mode, giving banker's
  // rounding at the cent boundary.
  return std::nearbyint(dollars * 100.0) / 100.0;
}

std::string format_usd(double dollars) {
  double cents = std::nearbyint(dollars * 100.0);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "$%.2f", cents / 100.0);
  return std::string(buf);
}

}  // namespace freqbias
