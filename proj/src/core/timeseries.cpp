// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/timeseries.hpp"

#include <cmath>
#include <string>

namespace freqbias {

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::mw: return "mw";
    case Unit::hz: return "hz";
    case Unit::mw_per_hz: return "mw_per_hz";
    case Unit::mw_per_0p1hz: return "mw_per_0p1hz";
    case Unit::mwh: return "mwh";
    case Unit::dimensionless: return "dimensionless";
  }
  return "unknown";
}

TimeSeries TimeSeries::make(std::int64_t start_unix_s, double period_s,
                            std::vector<double> values, Unit unit) {
  if (values.empty()) fail(Status::empty_series, "series has no samples");
  if (!(period_s > 0.0) || !std::isfinite(period_s))
    fail(Status::non_positive_period,
         "sample period must be a positive finite number of seconds");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      fail(Status::non_finite_value,
           "non-finite sample at index " + std::to_string(i));
  }
  return TimeSeries(start_unix_s, period_s, std::move(values), unit);
}

TimeSeries make_series(std::int64_t start_unix_s, double period_s,
                       std::vector<double> values, Unit unit) {
  return TimeSeries::make(start_unix_s, period_s, std::move(values), unit);
}

void require_aligned(const TimeSeries& a, const TimeSeries& b,
                     const char* what) {
  if (a.size() != b.size() || a.period_s() != b.period_s() ||
      a.start_time() != b.start_time())
    fail(Status::shape_mismatch,
         std::string(what) + ": series must share start, period and length");
}

TimeSeries subtract(const TimeSeries& a, const TimeSeries& b) {
  require_aligned(a, b, "subtract");
  if (a.unit() != b.unit())
    fail(Status::unit_mismatch, "subtract: operands carry different units");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return make_series(a.start_time(), a.period_s(), std::move(out), a.unit());
}

TimeSeries hourly_sum_mwh(const TimeSeries& s) {
  if (s.unit() != Unit::mw)
    fail(Status::unit_mismatch, "hourly_sum_mwh: input must be in MW");
  if (s.period_s() != 60.0)
    fail(Status::period_mismatch,
         "hourly_sum_mwh: input must be minute-sampled (period 60s)");
  if (s.size() % 60 != 0)
    fail(Status::partial_hour,
         "hourly_sum_mwh: length must be a whole number of hours");
  std::size_t hours = s.size() / 60;
  std::vector<double> out(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    double acc = 0.0;
    for (std::size_t m = 0; m < 60; ++m) acc += s[h * 60 + m];
    // MW averaged over an hour: sum of 60 minute samples / 60 gives MWh.
    out[h] = acc / 60.0;
  }
  return make_series(s.start_time(), 3600.0, std::move(out), Unit::mwh);
}

TimeSeries slice(const TimeSeries& s, Window w) {
  if (w.length == 0) fail(Status::empty_series, "slice: empty window");
  if (w.start > s.size() || w.length > s.size() - w.start)
    fail(Status::out_of_bounds, "slice: window exceeds series bounds");
  std::vector<double> out(s.values().begin() + static_cast<std::ptrdiff_t>(w.start),
                          s.values().begin() +
                              static_cast<std::ptrdiff_t>(w.start + w.length));
  std::int64_t start =
      s.start_time() +
      static_cast<std::int64_t>(static_cast<double>(w.start) * s.period_s());
  return make_series(start, s.period_s(), std::move(out), s.unit());
}

BiasValue convert_bias(BiasValue v, Unit target_unit) {
  bool src_ok = v.unit == Unit::mw_per_hz || v.unit == Unit::mw_per_0p1hz;
  bool dst_ok = target_unit == Unit::mw_per_hz || target_unit == Unit::mw_per_0p1hz;
  if (!src_ok || !dst_ok)
    fail(Status::unsupported_unit,
         "convert_bias: only mw_per_hz and mw_per_0p1hz are convertible");
  if (v.unit == target_unit) return v;
  if (v.unit == Unit::mw_per_hz) {
    // B MW per full Hz responds to a 0.1 Hz excursion with B/10 MW.
    return BiasValue{v.magnitude / 10.0, target_unit};
  }
  return BiasValue{v.magnitude * 10.0, target_unit};
}

double bias_mw_per_hz(BiasValue v) {
  return convert_bias(v, Unit::mw_per_hz).magnitude;
}

}  // namespace freqbias
