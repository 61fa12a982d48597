// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_TIMESERIES_HPP
#define FREQBIAS_CORE_TIMESERIES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace freqbias {

/// Physical unit carried by a TimeSeries or BiasValue.
enum class Unit : int {
  mw = 0,
  hz = 1,
  mw_per_hz = 2,
  mw_per_0p1hz = 3,
  mwh = 4,
  dimensionless = 5,
};

const char* unit_name(Unit u);

/// Uniformly sampled sequence of finite reals with a fixed unit.
/// Immutable after construction; cheap to copy, safe to share across threads.
class TimeSeries {
 public:
  /// start: UTC unix seconds of the first sample. period_s must be > 0,
  /// values nonempty and all finite.
  static TimeSeries make(std::int64_t start_unix_s, double period_s,
                         std::vector<double> values, Unit unit);

  std::int64_t start_time() const { return start_unix_s_; }
  double period_s() const { return period_s_; }
  Unit unit() const { return unit_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  TimeSeries(std::int64_t start, double period, std::vector<double> v, Unit u)
      : start_unix_s_(start), period_s_(period), values_(std::move(v)), unit_(u) {}

  std::int64_t start_unix_s_;
  double period_s_;
  std::vector<double> values_;
  Unit unit_;
};

/// Contiguous index range into a TimeSeries.
struct Window {
  std::size_t start = 0;
  std::size_t length = 0;
};

/// Frequency bias magnitude with its quoting unit (MW/Hz or MW/0.1Hz).
struct BiasValue {
  double magnitude = 0.0;
  Unit unit = Unit::mw_per_hz;
};

TimeSeries make_series(std::int64_t start_unix_s, double period_s,
                       std::vector<double> values, Unit unit);

/// Elementwise a - b. Series must share start, period, length and unit.
TimeSeries subtract(const TimeSeries& a, const TimeSeries& b);

/// Integrates a 60s-period MW series into hourly MWh (mean of 60 samples).
/// Length must be a whole number of hours.
TimeSeries hourly_sum_mwh(const TimeSeries& s);

/// Contiguous sub-series; start_time is shifted to the window start.
TimeSeries slice(const TimeSeries& s, Window w);

/// Converts between MW/Hz and MW/0.1Hz (factor exactly 10).
BiasValue convert_bias(BiasValue v, Unit target_unit);

/// Convenience: any bias value expressed in MW/Hz.
double bias_mw_per_hz(BiasValue v);

/// Throws ShapeMismatch unless a and b share start, period and length.
void require_aligned(const TimeSeries& a, const TimeSeries& b,
                     const char* what);

}  // namespace freqbias

#endif
