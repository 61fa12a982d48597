// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_ESTIMATOR_HPP
#define FREQBIAS_CORE_ESTIMATOR_HPP

#include <cstddef>
#include <vector>

#include "core/timeseries.hpp"

namespace freqbias {

struct EstimatorConfig {
  int window_minutes = 60;       // >= 2
  int stride_minutes = 1;        // >= 1
  double condition_threshold = 1e8;
  double min_regressor_variance = 1e-12;
};

/// One fitted droop plane f = alpha*f_ref - sigma*p over a window.
struct DroopEstimate {
  std::size_t minute_index = 0;  // index of the window's last sample
  double alpha = 0.0;
  double sigma_hz_per_mw = 0.0;
  BiasValue beta{0.0, Unit::mw_per_hz};  // 1/sigma; +inf when sigma == 0
  Window window;
  double r_squared = 0.0;        // uncentered, in [0, 1]
  double condition_number = 1.0; // of the 2x2 normal matrix, >= 1
  double residual_rms = 0.0;     // Hz
  bool ill_conditioned = false;
};

/// No-intercept least squares of f against [f_ref, -p] over the window,
/// solved from the 2x2 normal equations. Throws CollinearRegressors when
/// the normal matrix is numerically singular (or the window has no
/// regressor variation at all); merely badly conditioned fits are
/// returned with ill_conditioned set.
DroopEstimate ols_fit(const TimeSeries& f, const TimeSeries& f_ref,
                      const TimeSeries& p, Window w,
                      const EstimatorConfig& cfg = EstimatorConfig{});

/// Sum of squared residuals of the droop plane over the window.
double objective_value(const TimeSeries& f, const TimeSeries& f_ref,
                       const TimeSeries& p, Window w, double alpha,
                       double sigma);

/// Trailing-window fits every stride_minutes. A window that fails to fit
/// repeats the last good estimate, flagged ill_conditioned; if no good
/// window has occurred yet the carried values are NaN.
std::vector<DroopEstimate> rolling_estimate(const TimeSeries& f,
                                            const TimeSeries& f_ref,
                                            const TimeSeries& p,
                                            const EstimatorConfig& cfg);

/// beta = 1/sigma in MW/Hz; sigma must be nonzero.
BiasValue beta_from_sigma(double sigma_hz_per_mw);

}  // namespace freqbias

#endif
