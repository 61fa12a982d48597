// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_ACE_HPP
#define FREQBIAS_CORE_ACE_HPP

#include <cstddef>
#include <vector>

#include "core/estimator.hpp"
#include "core/timeseries.hpp"

namespace freqbias {

struct AceRecord {
  std::size_t minute_index = 0;
  double ace_f_mw = 0.0;
  double delta_f_interchange_mw = 0.0;
  double ace_total_mw = 0.0;  // always the exact sum of the two parts
};

struct IeeRecord {
  std::size_t hour_index = 0;
  double iee_mwh = 0.0;
  double iee_optimal_mwh = 0.0;
};

enum class BetaSource { fixed, estimated };

struct LoadDeviationSeries {
  TimeSeries dp_l;  // MW
  BetaSource beta_used = BetaSource::fixed;
};

/// NAI - NSI per minute. An hourly NSI (period 3600) is held flat across
/// each of its hours; otherwise the series must be aligned.
TimeSeries interchange_deviation(const TimeSeries& nai, const TimeSeries& nsi);

/// Frequency part of ACE: -beta * delta_f, with beta's magnitude positive
/// so generation rises when frequency sags.
TimeSeries ace_f_from_bias(BiasValue beta, const TimeSeries& delta_f);

/// Time-varying variant: one bias value per sample.
TimeSeries ace_f_from_bias(const std::vector<BiasValue>& betas,
                           const TimeSeries& delta_f);

/// Per-minute records with ace_total = ace_f + delta_F by construction.
std::vector<AceRecord> compose_ace(const TimeSeries& ace_f,
                                   const TimeSeries& delta_F);

/// Reconstructed load deviations dp_l[k] = -beta[k] * delta_f[k].
LoadDeviationSeries estimate_load_deviation(BiasValue fixed_beta,
                                            const TimeSeries& delta_f);
LoadDeviationSeries estimate_load_deviation(const std::vector<BiasValue>& betas,
                                            const TimeSeries& delta_f);

/// Hourly inadvertent energy exchange, MWh of NAI - NSI. Single-accounting
/// records: the optimal column repeats the as-recorded value.
std::vector<IeeRecord> iee_hourly(const TimeSeries& nai, const TimeSeries& nsi);

/// Hourly IEE under the as-recorded accounting (iee_mwh) next to the
/// counterfactual where regulation had been driven by the estimated bias
/// instead of the fixed one (iee_optimal_mwh):
///   optimal[h] = hourly( (nai - nsi) + (beta_est[k] - beta_fixed) * delta_f[k] ).
std::vector<IeeRecord> iee_compare(const TimeSeries& nai, const TimeSeries& nsi,
                                   const TimeSeries& f, const TimeSeries& f_ref,
                                   BiasValue fixed_beta,
                                   const std::vector<BiasValue>& estimated);

/// Expands rolling estimates to one bias value per minute: the value at
/// each estimate's minute_index holds until the next estimate, and the
/// first estimate backfills the warm-up minutes. Throws on non-finite
/// estimates (windows never fit).
std::vector<BiasValue> beta_series_from_estimates(
    const std::vector<DroopEstimate>& estimates, std::size_t minutes);

}  // namespace freqbias

#endif
