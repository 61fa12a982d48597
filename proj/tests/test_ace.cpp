// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "core/ace.hpp"
#include "core/estimator.hpp"
#include "core/gtg.hpp"
#include "core/timeseries.hpp"

using namespace freqbias;

namespace {

template <typename Fn>
Status status_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.status();
  }
  return Status::ok;
}

TimeSeries mw_series(std::vector<double> v, std::int64_t start = 0,
                     double period = 60.0) {
  return make_series(start, period, std::move(v), Unit::mw);
}

TimeSeries hz_series(std::vector<double> v, std::int64_t start = 0) {
  return make_series(start, 60.0, std::move(v), Unit::hz);
}

SyntheticDataset agc_day(std::uint64_t seed, int minutes) {
  AreaDroop area = area_from_alpha_beta(0.98, 4090.0);
  DisturbanceSpec spec;
  spec.seed = seed;
  spec.load.kind = LoadModel::Kind::random_walk;
  spec.load.base_mw = 1000.0;
  spec.load.step_mw = 20.0;
  return simulate_ba(area, spec, minutes, true);
}

}  // namespace

TEST_CASE("interchange_deviation of matching series is zero") {
  TimeSeries nai = mw_series(std::vector<double>(120, 350.0));
  TimeSeries nsi = mw_series(std::vector<double>(120, 350.0));
  TimeSeries dev = interchange_deviation(nai, nsi);
  for (std::size_t k = 0; k < dev.size(); ++k) CHECK(dev[k] == 0.0);
  CHECK(dev.unit() == Unit::mw);
}

TEST_CASE("interchange_deviation picks up a flat offset") {
  std::vector<double> actual(60), sched(60);
  for (int k = 0; k < 60; ++k) {
    sched[std::size_t(k)] = 400.0 + 3.0 * k;
    actual[std::size_t(k)] = sched[std::size_t(k)] + 100.0;
  }
  TimeSeries dev = interchange_deviation(mw_series(actual), mw_series(sched));
  for (std::size_t k = 0; k < 60; ++k)
    CHECK(dev[k] == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("an hourly schedule is held flat across its minutes") {
  std::vector<double> actual(120);
  for (int k = 0; k < 120; ++k) actual[std::size_t(k)] = 510.0 + 0.25 * k;
  TimeSeries nai = mw_series(actual);
  TimeSeries nsi = mw_series({500.0, 450.0}, 0, 3600.0);
  TimeSeries dev = interchange_deviation(nai, nsi);
  REQUIRE(dev.size() == 120);
  for (std::size_t k = 0; k < 120; ++k) {
    double sched = (k < 60) ? 500.0 : 450.0;
    CHECK(dev[k] == actual[k] - sched);
  }
}

TEST_CASE("interchange_deviation rejects misaligned inputs") {
  TimeSeries nai90 = mw_series(std::vector<double>(90, 1.0));
  TimeSeries hourly2 = mw_series({500.0, 450.0}, 0, 3600.0);
  CHECK(status_of([&] { interchange_deviation(nai90, hourly2); }) ==
        Status::shape_mismatch);
  TimeSeries shifted = mw_series(std::vector<double>(120, 1.0), 60);
  CHECK(status_of([&] { interchange_deviation(shifted, hourly2); }) ==
        Status::shape_mismatch);
  TimeSeries hz = make_series(0, 60.0, std::vector<double>(120, 1.0), Unit::hz);
  TimeSeries nai120 = mw_series(std::vector<double>(120, 1.0));
  CHECK(status_of([&] { interchange_deviation(hz, hourly2); }) ==
        Status::unit_mismatch);
  CHECK(status_of([&] { interchange_deviation(nai120, hz); }) ==
        Status::unit_mismatch);
  TimeSeries short_minutes = mw_series(std::vector<double>(60, 1.0));
  CHECK(status_of([&] {
          interchange_deviation(nai120, short_minutes);
        }) == Status::shape_mismatch);
}

TEST_CASE("ace_f_from_bias scales the frequency error") {
  TimeSeries flat = hz_series(std::vector<double>(5, -0.036));
  TimeSeries ace = ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, flat);
  CHECK(ace.unit() == Unit::mw);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(std::fabs(ace[k] - 147.24) < 1e-9);

  TimeSeries zeros = hz_series(std::vector<double>(5, 0.0));
  TimeSeries quiet = ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, zeros);
  for (std::size_t k = 0; k < 5; ++k) CHECK(quiet[k] == 0.0);

  // Over-frequency sheds generation.
  TimeSeries high = hz_series({0.02});
  CHECK(ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, high)[0] < 0.0);
}

TEST_CASE("doubling the bias doubles the response exactly") {
  std::vector<double> df(16);
  for (int k = 0; k < 16; ++k) df[std::size_t(k)] = 0.01 * std::sin(0.8 * k);
  TimeSeries delta = hz_series(df);
  TimeSeries one = ace_f_from_bias(BiasValue{2045.0, Unit::mw_per_hz}, delta);
  TimeSeries two = ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, delta);
  for (std::size_t k = 0; k < 16; ++k) CHECK(two[k] == 2.0 * one[k]);
}

TEST_CASE("both quoting units give bitwise identical ACE_f") {
  std::vector<double> df(32);
  for (int k = 0; k < 32; ++k) df[std::size_t(k)] = 0.02 * std::cos(1.1 * k);
  TimeSeries delta = hz_series(df);
  TimeSeries full = ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, delta);
  TimeSeries tenth =
      ace_f_from_bias(BiasValue{409.0, Unit::mw_per_0p1hz}, delta);
  for (std::size_t k = 0; k < 32; ++k) CHECK(full[k] == tenth[k]);
}

TEST_CASE("per-sample bias values are applied per sample") {
  std::vector<double> df{0.01, -0.02, 0.005, 0.0};
  TimeSeries delta = hz_series(df);
  std::vector<BiasValue> betas{{4090.0, Unit::mw_per_hz},
                               {409.0, Unit::mw_per_0p1hz},
                               {3500.0, Unit::mw_per_hz},
                               {3000.0, Unit::mw_per_hz}};
  TimeSeries ace = ace_f_from_bias(betas, delta);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(ace[k] == -bias_mw_per_hz(betas[k]) * df[k]);

  std::vector<BiasValue> wrong_count{{4090.0, Unit::mw_per_hz}};
  CHECK(status_of([&] { ace_f_from_bias(wrong_count, delta); }) ==
        Status::shape_mismatch);
  TimeSeries mw = mw_series({1.0, 2.0, 3.0, 4.0});
  CHECK(status_of([&] { ace_f_from_bias(betas, mw); }) ==
        Status::unit_mismatch);
  CHECK(status_of([&] {
          ace_f_from_bias(BiasValue{4090.0, Unit::mw_per_hz}, mw);
        }) == Status::unit_mismatch);
}

TEST_CASE("compose_ace keeps the exact sum per record") {
  std::vector<double> a(24), b(24);
  for (int k = 0; k < 24; ++k) {
    a[std::size_t(k)] = 35.0 * std::sin(0.7 * k);
    b[std::size_t(k)] = -12.0 * std::cos(0.4 * k);
  }
  std::vector<AceRecord> recs = compose_ace(mw_series(a), mw_series(b));
  REQUIRE(recs.size() == 24);
  for (std::size_t k = 0; k < 24; ++k) {
    CHECK(recs[k].minute_index == k);
    CHECK(recs[k].ace_f_mw == a[k]);
    CHECK(recs[k].delta_f_interchange_mw == b[k]);
    CHECK(recs[k].ace_total_mw == a[k] + b[k]);
  }
}

TEST_CASE("opposite components cancel in the total") {
  std::vector<double> x{10.0, -4.5, 0.25, 1e6};
  std::vector<double> nx{-10.0, 4.5, -0.25, -1e6};
  std::vector<AceRecord> recs = compose_ace(mw_series(x), mw_series(nx));
  for (const AceRecord& r : recs) CHECK(r.ace_total_mw == 0.0);
}

TEST_CASE("compose_ace polices units and alignment") {
  TimeSeries a = mw_series({1.0, 2.0});
  TimeSeries b = mw_series({1.0, 2.0, 3.0});
  CHECK(status_of([&] { compose_ace(a, b); }) == Status::shape_mismatch);
  TimeSeries hz = hz_series({1.0, 2.0});
  CHECK(status_of([&] { compose_ace(a, hz); }) == Status::unit_mismatch);
}

TEST_CASE("estimate_load_deviation reconstructs minute load swings") {
  TimeSeries delta = hz_series({0.01});
  LoadDeviationSeries fixed =
      estimate_load_deviation(BiasValue{4090.0, Unit::mw_per_hz}, delta);
  CHECK(fixed.beta_used == BetaSource::fixed);
  CHECK(std::fabs(fixed.dp_l[0] - (-40.9)) < 1e-9);
  CHECK(fixed.dp_l.unit() == Unit::mw);

  std::vector<BiasValue> betas{{4090.0, Unit::mw_per_hz}};
  LoadDeviationSeries est = estimate_load_deviation(betas, delta);
  CHECK(est.beta_used == BetaSource::estimated);
  CHECK(est.dp_l[0] == fixed.dp_l[0]);
}

TEST_CASE("load deviation is linear in bias and frequency error") {
  std::vector<double> df(12);
  for (int k = 0; k < 12; ++k) df[std::size_t(k)] = 0.004 * std::sin(1.3 * k);
  TimeSeries delta = hz_series(df);
  std::vector<double> df2(12);
  for (int k = 0; k < 12; ++k) df2[std::size_t(k)] = 2.0 * df[std::size_t(k)];
  TimeSeries delta2 = hz_series(df2);

  LoadDeviationSeries b1 =
      estimate_load_deviation(BiasValue{2000.0, Unit::mw_per_hz}, delta);
  LoadDeviationSeries b2 =
      estimate_load_deviation(BiasValue{4000.0, Unit::mw_per_hz}, delta);
  LoadDeviationSeries f2 =
      estimate_load_deviation(BiasValue{2000.0, Unit::mw_per_hz}, delta2);
  for (std::size_t k = 0; k < 12; ++k) {
    CHECK(b2.dp_l[k] == 2.0 * b1.dp_l[k]);
    CHECK(f2.dp_l[k] == 2.0 * b1.dp_l[k]);
  }
}

TEST_CASE("reconstructed load deviations match the simulator's load") {
  SyntheticDataset ds = agc_day(13, 480);
  TimeSeries delta_f = subtract(ds.f, ds.f_ref);
  LoadDeviationSeries rec =
      estimate_load_deviation(BiasValue{4090.0, Unit::mw_per_hz}, delta_f);
  // With AGC holding last minute's state, -beta*delta_f is the load
  // innovation; compare against the simulator's own load channel.
  for (std::size_t k = 1; k < rec.dp_l.size(); ++k) {
    double innovation = ds.p_l_true[k] - ds.p_l_true[k - 1];
    CHECK(std::fabs(rec.dp_l[k] - innovation) < 1e-8);
  }
}

TEST_CASE("iee_hourly is zero when actuals track schedule") {
  TimeSeries nai = mw_series(std::vector<double>(120, 220.0));
  TimeSeries nsi = mw_series(std::vector<double>(120, 220.0));
  std::vector<IeeRecord> recs = iee_hourly(nai, nsi);
  REQUIRE(recs.size() == 2);
  for (const IeeRecord& r : recs) {
    CHECK(r.iee_mwh == 0.0);
    CHECK(r.iee_optimal_mwh == 0.0);
  }
}

TEST_CASE("one hour of 60 MW deviation is exactly 60 MWh") {
  TimeSeries nai = mw_series(std::vector<double>(60, 300.0));
  TimeSeries nsi = mw_series(std::vector<double>(60, 240.0));
  std::vector<IeeRecord> recs = iee_hourly(nai, nsi);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].hour_index == 0);
  CHECK(recs[0].iee_mwh == 60.0);
  CHECK(recs[0].iee_optimal_mwh == 60.0);
}

TEST_CASE("iee_hourly averages a repeating pattern exactly") {
  std::vector<double> pattern{0.0, 4.0, 8.0, 16.0, 20.0, 24.0};  // mean 12
  std::vector<double> dev(60);
  for (int k = 0; k < 60; ++k)
    dev[std::size_t(k)] = pattern[std::size_t(k) % pattern.size()];
  TimeSeries nai = mw_series(dev);
  TimeSeries nsi = mw_series(std::vector<double>(60, 0.0));
  std::vector<IeeRecord> recs = iee_hourly(nai, nsi);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].iee_mwh == 12.0);
}

TEST_CASE("hourly IEE conserves the full integral") {
  std::vector<double> dev(48 * 60);
  for (std::size_t k = 0; k < dev.size(); ++k)
    dev[k] = 30.0 * std::sin(0.01 * double(k)) + 5.0 * std::cos(0.7 * double(k));
  TimeSeries nai = mw_series(dev);
  TimeSeries nsi = mw_series(std::vector<double>(dev.size(), 0.0));
  std::vector<IeeRecord> recs = iee_hourly(nai, nsi);
  REQUIRE(recs.size() == 48);
  double total_hours = 0.0;
  long double total_minutes = 0.0L;
  for (const IeeRecord& r : recs) total_hours += r.iee_mwh;
  for (double v : dev) total_minutes += v;
  CHECK(total_hours ==
        doctest::Approx(static_cast<double>(total_minutes / 60.0L))
            .epsilon(1e-9));
}

TEST_CASE("iee_hourly needs whole hours") {
  TimeSeries nai = mw_series(std::vector<double>(90, 10.0));
  TimeSeries nsi = mw_series(std::vector<double>(90, 0.0));
  CHECK(status_of([&] { iee_hourly(nai, nsi); }) == Status::partial_hour);
}

TEST_CASE("iee_compare collapses when estimated equals fixed") {
  SyntheticDataset ds = agc_day(21, 240);
  BiasValue fixed{4090.0, Unit::mw_per_hz};
  std::vector<BiasValue> est(240, fixed);
  std::vector<IeeRecord> recs =
      iee_compare(ds.nai, ds.nsi, ds.f, ds.f_ref, fixed, est);
  REQUIRE(recs.size() == 4);
  for (const IeeRecord& r : recs) CHECK(r.iee_optimal_mwh == r.iee_mwh);
}

TEST_CASE("iee_compare with a flat frequency is pure interchange") {
  std::vector<double> f(120, 60.0), nai(120), nsi(120, 0.0);
  for (int k = 0; k < 120; ++k) nai[std::size_t(k)] = 8.0 * std::sin(0.2 * k);
  TimeSeries sf = hz_series(f);
  std::vector<IeeRecord> recs =
      iee_compare(mw_series(nai), mw_series(nsi), sf, sf,
                  BiasValue{4090.0, Unit::mw_per_hz},
                  std::vector<BiasValue>(120, BiasValue{99.0, Unit::mw_per_hz}));
  std::vector<IeeRecord> plain = iee_hourly(mw_series(nai), mw_series(nsi));
  REQUIRE(recs.size() == plain.size());
  for (std::size_t h = 0; h < recs.size(); ++h) {
    CHECK(recs[h].iee_mwh == plain[h].iee_mwh);
    CHECK(recs[h].iee_optimal_mwh == plain[h].iee_mwh);
  }
}

TEST_CASE("estimated-bias accounting tracks the truth accounting") {
  SyntheticDataset ds = agc_day(33, 480);
  TimeSeries delta_f = subtract(ds.f, ds.f_ref);
  BiasValue fixed{3500.0, Unit::mw_per_hz};  // deliberately wrong

  EstimatorConfig cfg;
  std::vector<DroopEstimate> fits =
      rolling_estimate(ds.f, ds.f_ref, ds.p_g, cfg);
  std::vector<BiasValue> est = beta_series_from_estimates(fits, 480);
  std::vector<IeeRecord> recs =
      iee_compare(ds.nai, ds.nsi, ds.f, ds.f_ref, fixed, est);
  REQUIRE(recs.size() == 8);

  // Truth accounting: the same counterfactual with the generating bias.
  double err_est = 0.0, err_rec = 0.0;
  for (std::size_t h = 0; h < 8; ++h) {
    double acc = 0.0;
    for (std::size_t m = 0; m < 60; ++m) {
      std::size_t k = h * 60 + m;
      double dev = ds.nai[k] - ds.nsi[k];
      acc += dev + (ds.truth[k].beta_mw_per_hz - 3500.0) * delta_f[k];
    }
    double truth_hour = acc / 60.0;
    err_est += std::fabs(recs[h].iee_optimal_mwh - truth_hour);
    err_rec += std::fabs(recs[h].iee_mwh - truth_hour);
    CHECK(std::fabs(recs[h].iee_optimal_mwh - truth_hour) < 1e-6);
  }
  CHECK(err_est <= err_rec);
}

TEST_CASE("iee_compare polices the estimate count") {
  SyntheticDataset ds = agc_day(5, 120);
  std::vector<BiasValue> est(60, BiasValue{4090.0, Unit::mw_per_hz});
  CHECK(status_of([&] {
          iee_compare(ds.nai, ds.nsi, ds.f, ds.f_ref,
                      BiasValue{4090.0, Unit::mw_per_hz}, est);
        }) == Status::shape_mismatch);
}

TEST_CASE("beta_series_from_estimates backfills and holds") {
  DroopEstimate e1;
  e1.minute_index = 3;
  e1.beta = BiasValue{4000.0, Unit::mw_per_hz};
  DroopEstimate e2;
  e2.minute_index = 5;
  e2.beta = BiasValue{3000.0, Unit::mw_per_hz};
  std::vector<BiasValue> out = beta_series_from_estimates({e1, e2}, 8);
  REQUIRE(out.size() == 8);
  for (std::size_t k = 0; k < 5; ++k) CHECK(out[k].magnitude == 4000.0);
  for (std::size_t k = 5; k < 8; ++k) CHECK(out[k].magnitude == 3000.0);
  for (const BiasValue& b : out) CHECK(b.unit == Unit::mw_per_hz);

  std::vector<BiasValue> shorter = beta_series_from_estimates({e1, e2}, 4);
  REQUIRE(shorter.size() == 4);
  for (const BiasValue& b : shorter) CHECK(b.magnitude == 4000.0);
}

TEST_CASE("beta_series_from_estimates rejects useless inputs") {
  CHECK(status_of([] { beta_series_from_estimates({}, 10); }) ==
        Status::empty_series);
  DroopEstimate nan_est;
  nan_est.minute_index = 0;
  nan_est.beta = BiasValue{std::numeric_limits<double>::quiet_NaN(),
                           Unit::mw_per_hz};
  CHECK(status_of([&] { beta_series_from_estimates({nan_est}, 4); }) ==
        Status::non_finite_value);
}
