// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_RESERVE_HPP
#define FREQBIAS_CORE_RESERVE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/timeseries.hpp"

namespace freqbias {

enum class EnvelopeBasis { dp_l, ace };

/// Per-hour regulation bounds at a one-sided quantile.
struct ReserveEnvelope {
  std::size_t hour_index = 0;
  double reg_up_mw = 0.0;    // bound on positive deviations
  double reg_down_mw = 0.0;  // bound on |negative| deviations
  EnvelopeBasis basis = EnvelopeBasis::ace;
  double quantile = 1.0;
};

struct CostModel {
  double price_up = 10.0;    // $/MW/h
  double price_down = 10.0;  // $/MW/h
  double hours = 720.0;
};

struct BandSpec {
  double nominal_hz = 60.0;
  double half_width_hz = 0.036;
};

/// Hourly up/down bounds of a minute MW series. The quantile is the lower
/// empirical quantile of each hour's one-sided samples (sorted, index
/// ceil(q*m) - 1); quantile 1.0 is the hourly extreme. q must lie in
/// (0.5, 1.0].
std::vector<ReserveEnvelope> reserve_envelope(
    const TimeSeries& series, double quantile,
    EnvelopeBasis basis = EnvelopeBasis::ace);

struct TighteningResult {
  std::vector<double> per_hour_mw;  // (up+down) reduction per hour
  double average_mw = 0.0;
};

/// How much the total envelope shrinks when moving from the first series
/// to the second (e.g. ACE with interchange vs. ACE_f without).
TighteningResult envelope_tightening(const TimeSeries& with_interchange,
                                     const TimeSeries& without_interchange,
                                     double quantile);

/// avg_mw * (price_up + price_down) * hours, in dollars.
double cost_savings(double avg_mw, const CostModel& model);

/// Fraction of samples with |f - f_ref| <= band.half_width_hz.
double band_compliance(const TimeSeries& f, const TimeSeries& f_ref,
                       const BandSpec& band);

/// Hourly envelopes averaged per calendar month (UTC), for seasonal views.
struct MonthlyEnvelope {
  int year = 1970;
  int month = 1;
  double mean_reg_up_mw = 0.0;
  double mean_reg_down_mw = 0.0;
  std::size_t hours = 0;
};

std::vector<MonthlyEnvelope> group_envelopes_by_month(
    const std::vector<ReserveEnvelope>& envelopes, std::int64_t start_unix_s);

/// Half-even rounding to whole cents.
double round_to_cents(double dollars);

/// "$1234.50" style rendering of a dollar amount at cent precision.
std::string format_usd(double dollars);

}  // namespace freqbias

#endif
