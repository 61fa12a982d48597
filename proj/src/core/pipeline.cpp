// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include "core/ace.hpp"

namespace freqbias {

namespace {

// Pin every summary float to 9 significant digits so reruns are
// byte-identical regardless of accumulated last-bit noise.
double sig9(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_double_sig9(v).c_str(), nullptr);
}

struct Stats {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double min = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  std::size_t count = 0;
};

Stats finite_stats(const std::vector<double>& v) {
  Stats s;
  double acc = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    if (s.count == 0) {
      s.min = x;
      s.max = x;
    } else {
      if (x < s.min) s.min = x;
      if (x > s.max) s.max = x;
    }
    acc += x;
    ++s.count;
  }
  if (s.count > 0) s.mean = acc / static_cast<double>(s.count);
  return s;
}

nlohmann::ordered_json stats_json(const Stats& s) {
  nlohmann::ordered_json j;
  j["mean"] = sig9(s.mean);
  j["min"] = sig9(s.min);
  j["max"] = sig9(s.max);
  return j;
}

// Per-minute bias from the rolling estimates, falling back to the fixed
// operating bias wherever no finite estimate exists (warm-up before the
// first usable window, or a zero-droop sentinel).
std::vector<BiasValue> expand_betas(const std::vector<DroopEstimate>& est,
                                    std::size_t minutes, BiasValue fallback) {
  double fb = bias_mw_per_hz(fallback);
  std::vector<BiasValue> out(minutes, BiasValue{fb, Unit::mw_per_hz});
  if (est.empty()) return out;
  std::size_t next = 0;
  double current = std::isfinite(est.front().beta.magnitude)
                       ? est.front().beta.magnitude
                       : fb;
  for (std::size_t k = 0; k < minutes; ++k) {
    while (next < est.size() && est[next].minute_index <= k) {
      if (std::isfinite(est[next].beta.magnitude))
        current = est[next].beta.magnitude;
      ++next;
    }
    out[k] = BiasValue{current, Unit::mw_per_hz};
  }
  return out;
}

}  // namespace

TelemetryBundle to_bundle(const SyntheticDataset& ds) {
  TimeSeries delta_t = subtract(ds.nai, ds.nsi);
  std::vector<double> ace_f(ds.f.size());
  for (std::size_t k = 0; k < ace_f.size(); ++k)
    ace_f[k] = -ds.truth[k].beta_mw_per_hz * (ds.f[k] - ds.f_ref[k]);
  std::vector<std::size_t> kept;
  for (std::size_t h = 0; h < ds.f.size() / 60; ++h) kept.push_back(h);
  return TelemetryBundle{
      std::move(delta_t),
      make_series(ds.f.start_time(), 60.0, std::move(ace_f), Unit::mw),
      ds.f_ref,
      ds.f,
      ds.p_g,
      ds.nai,
      ds.nsi,
      std::move(kept),
      ds.f.size(),
      ds.f.start_time()};
}

nlohmann::ordered_json run_pipeline(const TelemetryBundle& bundle,
                                    const std::vector<TruthPoint>& truth,
                                    const RunConfig& cfg,
                                    const std::string& out_dir,
                                    unsigned stages) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(Status::io_error, "cannot create output directory " + out_dir);
  auto path = [&](const char* name) { return out_dir + "/" + name; };

  const std::size_t n = bundle.f.size();
  if (!truth.empty() && truth.size() != n)
    fail(Status::shape_mismatch,
         "truth sidecar does not align with the telemetry minutes");

  TimeSeries delta_f = subtract(bundle.f, bundle.f_ref);

  // Interchange part of ACE: recomputed from NSI when the file carries a
  // schedule, otherwise taken from the recorded delta_t column.
  TimeSeries delta_F = bundle.nsi
                           ? interchange_deviation(bundle.nai, *bundle.nsi)
                           : bundle.delta_t;
  if (!bundle.nsi && cfg.flip_interchange_sign) {
    std::vector<double> v(delta_F.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = -delta_F[k];
    delta_F =
        make_series(delta_F.start_time(), 60.0, std::move(v), Unit::mw);
  }
  TimeSeries nsi_eff = bundle.nsi ? *bundle.nsi
                                  : subtract(bundle.nai, delta_F);

  // The estimator is cheap and later stages consume its output, so it
  // always runs; stages only gate which files are written.
  std::vector<DroopEstimate> estimates =
      rolling_estimate(bundle.f, bundle.f_ref, bundle.p_g, cfg.estimator);
  std::vector<BiasValue> beta_minutes =
      expand_betas(estimates, n, cfg.fixed_beta);

  TimeSeries ace_f_fixed = ace_f_from_bias(cfg.fixed_beta, delta_f);
  std::vector<AceRecord> ace_records = compose_ace(ace_f_fixed, delta_F);
  std::vector<double> ace_total_v(n);
  for (std::size_t k = 0; k < n; ++k)
    ace_total_v[k] = ace_records[k].ace_total_mw;
  TimeSeries ace_total = make_series(bundle.f.start_time(), 60.0,
                                     std::move(ace_total_v), Unit::mw);

  // Hourly accounting uses the whole-hour prefix.
  std::size_t whole = (n / 60) * 60;
  std::vector<IeeRecord> iee;
  std::vector<ReserveEnvelope> envelopes;
  TighteningResult tightening;
  double savings = 0.0;
  Stats up_stats, down_stats;
  if (whole > 0) {
    Window hw{0, whole};
    iee = iee_compare(slice(bundle.nai, hw), slice(nsi_eff, hw),
                      slice(bundle.f, hw), slice(bundle.f_ref, hw),
                      cfg.fixed_beta,
                      {beta_minutes.begin(),
                       beta_minutes.begin() + static_cast<std::ptrdiff_t>(whole)});
    TimeSeries ace_hw = slice(ace_total, hw);
    TimeSeries ace_f_hw = slice(ace_f_fixed, hw);
    std::vector<ReserveEnvelope> env_ace =
        reserve_envelope(ace_hw, cfg.quantile, EnvelopeBasis::ace);
    std::vector<ReserveEnvelope> env_dpl =
        reserve_envelope(ace_f_hw, cfg.quantile, EnvelopeBasis::dp_l);
    tightening = envelope_tightening(ace_hw, ace_f_hw, cfg.quantile);
    savings = cost_savings(std::max(0.0, tightening.average_mw), cfg.cost);
    std::vector<double> ups, downs;
    for (const ReserveEnvelope& e : env_ace) {
      ups.push_back(e.reg_up_mw);
      downs.push_back(e.reg_down_mw);
    }
    up_stats = finite_stats(ups);
    down_stats = finite_stats(downs);
    envelopes = std::move(env_ace);
    envelopes.insert(envelopes.end(), env_dpl.begin(), env_dpl.end());
  }

  double compliance = band_compliance(bundle.f, bundle.f_ref, cfg.band);

  if (stages & kStageEstimates) {
    write_estimates_csv(estimates, path("estimates.csv"));
    std::vector<double> beta_est(n), beta_fix(n);
    for (std::size_t k = 0; k < n; ++k) {
      beta_est[k] = beta_minutes[k].magnitude;
      beta_fix[k] = bias_mw_per_hz(cfg.fixed_beta);
    }
    emit_plot_data(
        {{"beta_estimate",
          make_series(bundle.f.start_time(), 60.0, std::move(beta_est),
                      Unit::mw_per_hz)},
         {"beta_fixed",
          make_series(bundle.f.start_time(), 60.0, std::move(beta_fix),
                      Unit::mw_per_hz)}},
        path("plot_beta.csv"));
  }
  if (stages & kStageAce) {
    write_ace_csv(ace_records, path("ace.csv"));
    write_iee_csv(iee, path("iee.csv"));
    if (!iee.empty()) {
      std::vector<double> as_rec(iee.size()), opt(iee.size());
      for (std::size_t h = 0; h < iee.size(); ++h) {
        as_rec[h] = iee[h].iee_mwh;
        opt[h] = iee[h].iee_optimal_mwh;
      }
      std::int64_t start = bundle.f.start_time();
      emit_plot_data(
          {{"iee", make_series(start, 3600.0, std::move(as_rec), Unit::mwh)},
           {"iee_optimal",
            make_series(start, 3600.0, std::move(opt), Unit::mwh)}},
          path("plot_iee.csv"));
    }
  }
  if (stages & kStageReserves) {
    write_envelopes_csv(envelopes, path("envelopes.csv"));
  }

  nlohmann::ordered_json summary;
  summary["rows_ingested"] = bundle.rows_ingested;
  summary["minutes_used"] = n;
  summary["hours_used"] = whole / 60;
  summary["kept_hours"] = bundle.kept_hours;

  nlohmann::ordered_json jcfg;
  jcfg["window_minutes"] = cfg.estimator.window_minutes;
  jcfg["stride_minutes"] = cfg.estimator.stride_minutes;
  jcfg["condition_threshold"] = sig9(cfg.estimator.condition_threshold);
  jcfg["min_regressor_variance"] = sig9(cfg.estimator.min_regressor_variance);
  jcfg["fixed_beta_mw_per_hz"] = sig9(bias_mw_per_hz(cfg.fixed_beta));
  jcfg["quantile"] = sig9(cfg.quantile);
  jcfg["band_nominal_hz"] = sig9(cfg.band.nominal_hz);
  jcfg["band_half_width_hz"] = sig9(cfg.band.half_width_hz);
  jcfg["price_up"] = sig9(cfg.cost.price_up);
  jcfg["price_down"] = sig9(cfg.cost.price_down);
  jcfg["cost_hours"] = sig9(cfg.cost.hours);
  jcfg["gap_policy"] =
      cfg.gap_policy == GapPolicy::reject ? "reject" : "drop_hour";
  jcfg["flip_interchange_sign"] = cfg.flip_interchange_sign;
  summary["config"] = jcfg;

  std::vector<double> betas, alphas;
  std::size_t flagged = 0;
  for (const DroopEstimate& e : estimates) {
    betas.push_back(e.beta.magnitude);
    alphas.push_back(e.alpha);
    if (e.ill_conditioned) ++flagged;
  }
  nlohmann::ordered_json jest;
  jest["count"] = estimates.size();
  jest["ill_conditioned_count"] = flagged;
  jest["beta_mw_per_hz"] = stats_json(finite_stats(betas));
  jest["alpha"] = stats_json(finite_stats(alphas));
  summary["estimates"] = jest;

  std::vector<double> abs_ace(n), abs_ace_f(n);
  for (std::size_t k = 0; k < n; ++k) {
    abs_ace[k] = std::fabs(ace_records[k].ace_total_mw);
    abs_ace_f[k] = std::fabs(ace_records[k].ace_f_mw);
  }
  nlohmann::ordered_json jace;
  jace["mean_abs_ace_mw"] = sig9(finite_stats(abs_ace).mean);
  jace["mean_abs_ace_f_mw"] = sig9(finite_stats(abs_ace_f).mean);
  summary["ace"] = jace;

  double iee_total = 0.0, iee_opt_total = 0.0;
  for (const IeeRecord& r : iee) {
    iee_total += r.iee_mwh;
    iee_opt_total += r.iee_optimal_mwh;
  }
  nlohmann::ordered_json jiee;
  jiee["total_mwh"] = sig9(iee_total);
  jiee["total_optimal_mwh"] = sig9(iee_opt_total);
  summary["iee"] = jiee;

  nlohmann::ordered_json jres;
  jres["average_tightening_mw"] = sig9(tightening.average_mw);
  jres["cost_savings_usd"] = sig9(round_to_cents(savings));
  jres["mean_reg_up_mw"] = sig9(up_stats.mean);
  jres["mean_reg_down_mw"] = sig9(down_stats.mean);
  summary["reserves"] = jres;

  summary["band_compliance"] = sig9(compliance);

  if (!truth.empty()) {
    double max_beta_err = 0.0, max_alpha_err = 0.0;
    for (const DroopEstimate& e : estimates) {
      const TruthPoint& t = truth[e.minute_index];
      if (std::isfinite(e.beta.magnitude) && t.beta_mw_per_hz != 0.0) {
        double err =
            std::fabs(e.beta.magnitude - t.beta_mw_per_hz) / t.beta_mw_per_hz;
        if (err > max_beta_err) max_beta_err = err;
      }
      if (std::isfinite(e.alpha) && t.alpha != 0.0) {
        double err = std::fabs(e.alpha - t.alpha) / std::fabs(t.alpha);
        if (err > max_alpha_err) max_alpha_err = err;
      }
    }
    nlohmann::ordered_json jtruth;
    jtruth["max_rel_beta_error"] = sig9(max_beta_err);
    jtruth["max_rel_alpha_error"] = sig9(max_alpha_err);
    summary["truth"] = jtruth;
  }

  std::ofstream out(path("summary.json"));
  if (!out) fail(Status::io_error, "cannot write summary.json");
  out << summary.dump(2) << "\n";
  if (!out) fail(Status::io_error, "write to summary.json failed");
  return summary;
}

}  // namespace freqbias
