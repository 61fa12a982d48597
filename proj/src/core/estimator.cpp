// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/estimator.hpp"

#include <cmath>
#include <limits>

namespace freqbias {

namespace {

void check_inputs(const TimeSeries& f, const TimeSeries& f_ref,
                  const TimeSeries& p, Window w) {
  require_aligned(f, f_ref, "estimator");
  require_aligned(f, p, "estimator");
  if (f.unit() != Unit::hz || f_ref.unit() != Unit::hz || p.unit() != Unit::mw)
    fail(Status::unit_mismatch, "estimator expects f, f_ref in Hz and p in MW");
  if (w.length < 2) fail(Status::series_too_short, "window needs >= 2 samples");
  if (w.start > f.size() || w.length > f.size() - w.start)
    fail(Status::out_of_bounds, "window exceeds series bounds");
}

// Two-pass population variance; exactly zero for a constant window.
double window_variance(const TimeSeries& s, Window w) {
  long double mean = 0.0L;
  for (std::size_t k = 0; k < w.length; ++k) mean += s[w.start + k];
  mean /= static_cast<long double>(w.length);
  long double acc = 0.0L;
  for (std::size_t k = 0; k < w.length; ++k) {
    long double d = s[w.start + k] - mean;
    acc += d * d;
  }
  return static_cast<double>(acc / static_cast<long double>(w.length));
}

void validate_config(const EstimatorConfig& cfg) {
  if (cfg.window_minutes < 2)
    fail(Status::bad_config, "window_minutes must be >= 2");
  if (cfg.stride_minutes < 1)
    fail(Status::bad_config, "stride_minutes must be >= 1");
  if (!(cfg.condition_threshold > 0.0))
    fail(Status::bad_config, "condition_threshold must be positive");
  if (!(cfg.min_regressor_variance >= 0.0))
    fail(Status::bad_config, "min_regressor_variance must be >= 0");
}

}  // namespace

DroopEstimate ols_fit(const TimeSeries& f, const TimeSeries& f_ref,
                      const TimeSeries& p, Window w,
                      const EstimatorConfig& cfg) {
  check_inputs(f, f_ref, p, w);
  validate_config(cfg);

  if (window_variance(f_ref, w) < cfg.min_regressor_variance &&
      window_variance(p, w) < cfg.min_regressor_variance)
    fail(Status::collinear_regressors,
         "window has no regressor variation; droop plane unidentifiable");

  // Normal-equation sums for the model f = alpha*f_ref - sigma*p.
  // f_ref (~60) and p (~1e3) differ in scale enough that the determinant
  // cancellation eats double precision; the extended accumulators keep
  // exact-plane recovery comfortably inside 1e-9.
  long double A = 0.0L, B = 0.0L, C = 0.0L, b1 = 0.0L, b2 = 0.0L;
  for (std::size_t k = 0; k < w.length; ++k) {
    long double fr = f_ref[w.start + k];
    long double pw = p[w.start + k];
    long double fv = f[w.start + k];
    A += fr * fr;
    B += fr * pw;
    C += pw * pw;
    b1 += fv * fr;
    b2 += fv * pw;
  }

  long double det = A * C - B * B;
  long double scale = A * C + B * B;
  if (!(det > scale * 1e-14L))
    fail(Status::collinear_regressors,
         "normal matrix is numerically singular over this window");

  double alpha = static_cast<double>((C * b1 - B * b2) / det);
  double sigma = static_cast<double>((B * b1 - A * b2) / det);

  // Condition number of [[A, -B], [-B, C]] via its eigenvalues.
  long double tr = A + C;
  long double disc = std::sqrt((A - C) * (A - C) + 4.0L * B * B);
  long double lam_max = (tr + disc) / 2.0L;
  double cond = (lam_max > 0.0L)
                    ? static_cast<double>(lam_max * lam_max / det)
                    : std::numeric_limits<double>::infinity();
  if (cond < 1.0) cond = 1.0;

  long double ssr = 0.0L, sff = 0.0L;
  for (std::size_t k = 0; k < w.length; ++k) {
    long double r = f[w.start + k] -
                    static_cast<long double>(alpha) * f_ref[w.start + k] +
                    static_cast<long double>(sigma) * p[w.start + k];
    ssr += r * r;
    sff += static_cast<long double>(f[w.start + k]) * f[w.start + k];
  }
  double r2 = 1.0;
  if (sff > 0.0L) r2 = static_cast<double>(1.0L - ssr / sff);
  if (r2 < 0.0) r2 = 0.0;
  if (r2 > 1.0) r2 = 1.0;

  DroopEstimate e;
  e.minute_index = w.start + w.length - 1;
  e.alpha = alpha;
  e.sigma_hz_per_mw = sigma;
  e.beta = (sigma == 0.0)
               ? BiasValue{std::numeric_limits<double>::infinity(),
                           Unit::mw_per_hz}
               : BiasValue{1.0 / sigma, Unit::mw_per_hz};
  e.window = w;
  e.r_squared = r2;
  e.condition_number = cond;
  e.residual_rms = static_cast<double>(
      std::sqrt(ssr / static_cast<long double>(w.length)));
  e.ill_conditioned = cond > cfg.condition_threshold;
  return e;
}

double objective_value(const TimeSeries& f, const TimeSeries& f_ref,
                       const TimeSeries& p, Window w, double alpha,
                       double sigma) {
  check_inputs(f, f_ref, p, w);
  long double acc = 0.0L;
  for (std::size_t k = 0; k < w.length; ++k) {
    long double r = f[w.start + k] -
                    static_cast<long double>(alpha) * f_ref[w.start + k] +
                    static_cast<long double>(sigma) * p[w.start + k];
    acc += r * r;
  }
  return static_cast<double>(acc);
}

std::vector<DroopEstimate> rolling_estimate(const TimeSeries& f,
                                            const TimeSeries& f_ref,
                                            const TimeSeries& p,
                                            const EstimatorConfig& cfg) {
  validate_config(cfg);
  require_aligned(f, f_ref, "rolling_estimate");
  require_aligned(f, p, "rolling_estimate");
  std::size_t window = static_cast<std::size_t>(cfg.window_minutes);
  if (f.size() < window)
    fail(Status::series_too_short,
         "series shorter than one estimation window");

  std::vector<DroopEstimate> out;
  bool have_good = false;
  DroopEstimate last_good;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t end = window - 1; end < f.size();
       end += static_cast<std::size_t>(cfg.stride_minutes)) {
    Window w{end + 1 - window, window};
    double cond = inf;
    bool usable = false;
    DroopEstimate e;
    try {
      e = ols_fit(f, f_ref, p, w, cfg);
      cond = e.condition_number;
      usable = !e.ill_conditioned;
    } catch (const Error& err) {
      if (err.status() != Status::collinear_regressors) throw;
    }
    if (usable) {
      have_good = true;
      last_good = e;
      out.push_back(e);
      continue;
    }
    // Degraded window: repeat the last trustworthy fit, keeping this
    // window's identity and conditioning so the flag stays honest.
    DroopEstimate carried = have_good ? last_good : DroopEstimate{};
    if (!have_good) {
      carried.alpha = nan;
      carried.sigma_hz_per_mw = nan;
      carried.beta = BiasValue{nan, Unit::mw_per_hz};
      carried.r_squared = 0.0;
      carried.residual_rms = 0.0;
    }
    carried.minute_index = end;
    carried.window = w;
    carried.condition_number = cond;
    carried.ill_conditioned = true;
    out.push_back(carried);
  }
  return out;
}

BiasValue beta_from_sigma(double sigma_hz_per_mw) {
  if (sigma_hz_per_mw == 0.0)
    fail(Status::zero_sigma, "beta undefined for zero droop");
  if (!std::isfinite(sigma_hz_per_mw))
    fail(Status::non_finite_value, "sigma must be finite");
  return BiasValue{1.0 / sigma_hz_per_mw, Unit::mw_per_hz};
}

}  // namespace freqbias
