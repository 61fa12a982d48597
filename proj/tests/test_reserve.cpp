// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/reserve.hpp"
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

TimeSeries mw_series(std::vector<double> v, std::int64_t start = 0) {
  return make_series(start, 60.0, std::move(v), Unit::mw);
}

// The +/- ladder: one hour holding +20,-20,+40,-40,...,+600,-600.
std::vector<double> ladder_hour(double scale = 1.0) {
  std::vector<double> v(60);
  for (int k = 0; k < 30; ++k) {
    v[std::size_t(2 * k)] = scale * 20.0 * (k + 1);
    v[std::size_t(2 * k + 1)] = -scale * 20.0 * (k + 1);
  }
  return v;
}

// Reference quantile picker, written independently of the library.
double pick_quantile(std::vector<double> side, double q) {
  if (side.empty()) return 0.0;
  std::sort(side.begin(), side.end());
  double m = static_cast<double>(side.size());
  std::size_t idx = static_cast<std::size_t>(std::ceil(q * m)) - 1;
  if (idx >= side.size()) idx = side.size() - 1;
  return side[idx];
}

}  // namespace

TEST_CASE("a quiet hour needs no reserves") {
  TimeSeries s = mw_series(std::vector<double>(60, 0.0));
  std::vector<ReserveEnvelope> env = reserve_envelope(s, 0.9);
  REQUIRE(env.size() == 1);
  CHECK(env[0].reg_up_mw == 0.0);
  CHECK(env[0].reg_down_mw == 0.0);
  CHECK(env[0].hour_index == 0);
  CHECK(env[0].quantile == 0.9);
  CHECK(env[0].basis == EnvelopeBasis::ace);
}

TEST_CASE("a one-sided hour leaves the other bound at zero") {
  TimeSeries s = mw_series(std::vector<double>(60, 50.0));
  for (double q : {0.6, 0.9, 1.0}) {
    std::vector<ReserveEnvelope> env = reserve_envelope(s, q);
    REQUIRE(env.size() == 1);
    CHECK(env[0].reg_up_mw == 50.0);
    CHECK(env[0].reg_down_mw == 0.0);
  }
}

TEST_CASE("envelope quantiles match a hand-rolled picker") {
  TimeSeries s = mw_series(ladder_hour());
  std::vector<ReserveEnvelope> at1 = reserve_envelope(s, 1.0);
  REQUIRE(at1.size() == 1);
  CHECK(at1[0].reg_up_mw == 600.0);
  CHECK(at1[0].reg_down_mw == 600.0);

  std::vector<ReserveEnvelope> at09 = reserve_envelope(s, 0.9);
  // 30 one-sided samples, ceil(0.9*30)-1 = index 26 in sorted order: 540.
  CHECK(at09[0].reg_up_mw == 540.0);
  CHECK(at09[0].reg_down_mw == 540.0);

  std::vector<double> ups, downs;
  for (double v : ladder_hour()) {
    if (v > 0.0) ups.push_back(v);
    if (v < 0.0) downs.push_back(-v);
  }
  for (double q : {0.55, 0.7, 0.85, 0.97, 1.0}) {
    std::vector<ReserveEnvelope> env = reserve_envelope(s, q);
    CHECK(env[0].reg_up_mw == pick_quantile(ups, q));
    CHECK(env[0].reg_down_mw == pick_quantile(downs, q));
  }
}

TEST_CASE("zeros sit in neither envelope side") {
  std::vector<double> v(60, 0.0);
  v[0] = 30.0;
  v[1] = -10.0;
  std::vector<ReserveEnvelope> env = reserve_envelope(mw_series(v), 1.0);
  CHECK(env[0].reg_up_mw == 30.0);
  CHECK(env[0].reg_down_mw == 10.0);
  // At a mid quantile the single positive sample is still the bound
  // because ceil(q*1)-1 picks index 0.
  std::vector<ReserveEnvelope> mid = reserve_envelope(mw_series(v), 0.7);
  CHECK(mid[0].reg_up_mw == 30.0);
}

TEST_CASE("envelopes grow with the quantile and cover all samples at 1") {
  std::vector<double> v(180);
  for (int k = 0; k < 180; ++k)
    v[std::size_t(k)] = 80.0 * std::sin(0.37 * k) + 15.0 * std::cos(2.1 * k);
  TimeSeries s = mw_series(v);
  std::vector<ReserveEnvelope> e6 = reserve_envelope(s, 0.6);
  std::vector<ReserveEnvelope> e9 = reserve_envelope(s, 0.9);
  std::vector<ReserveEnvelope> e10 = reserve_envelope(s, 1.0);
  REQUIRE(e6.size() == 3);
  for (std::size_t h = 0; h < 3; ++h) {
    CHECK(e6[h].reg_up_mw <= e9[h].reg_up_mw);
    CHECK(e9[h].reg_up_mw <= e10[h].reg_up_mw);
    CHECK(e6[h].reg_down_mw <= e9[h].reg_down_mw);
    CHECK(e9[h].reg_down_mw <= e10[h].reg_down_mw);
    for (std::size_t m = 0; m < 60; ++m) {
      double x = v[h * 60 + m];
      if (x > 0.0) CHECK(x <= e10[h].reg_up_mw);
      if (x < 0.0) CHECK(-x <= e10[h].reg_down_mw);
    }
    CHECK(e10[h].hour_index == h);
  }
}

TEST_CASE("reserve_envelope tags the requested basis") {
  TimeSeries s = mw_series(std::vector<double>(60, 5.0));
  CHECK(reserve_envelope(s, 1.0, EnvelopeBasis::dp_l)[0].basis ==
        EnvelopeBasis::dp_l);
}

TEST_CASE("reserve_envelope polices its inputs") {
  TimeSeries ragged = mw_series(std::vector<double>(90, 1.0));
  CHECK(status_of([&] { reserve_envelope(ragged, 0.9); }) ==
        Status::partial_hour);
  TimeSeries hourly = make_series(0, 3600.0, std::vector<double>(60, 1.0),
                                  Unit::mw);
  CHECK(status_of([&] { reserve_envelope(hourly, 0.9); }) ==
        Status::period_mismatch);
  TimeSeries hz = make_series(0, 60.0, std::vector<double>(60, 1.0), Unit::hz);
  CHECK(status_of([&] { reserve_envelope(hz, 0.9); }) ==
        Status::unit_mismatch);
  TimeSeries ok = mw_series(std::vector<double>(60, 1.0));
  CHECK(status_of([&] { reserve_envelope(ok, 0.5); }) == Status::bad_quantile);
  CHECK(status_of([&] { reserve_envelope(ok, 0.2); }) == Status::bad_quantile);
  CHECK(status_of([&] { reserve_envelope(ok, 1.2); }) == Status::bad_quantile);
  CHECK(status_of([&] { reserve_envelope(ok, 1.0); }) == Status::ok);
}

TEST_CASE("envelope_tightening reports the freed capacity") {
  TimeSeries wide = mw_series(std::vector<double>(120, 300.0));
  TimeSeries narrow = mw_series(std::vector<double>(120, 100.0));
  TighteningResult r = envelope_tightening(wide, narrow, 1.0);
  REQUIRE(r.per_hour_mw.size() == 2);
  CHECK(r.per_hour_mw[0] == 200.0);
  CHECK(r.per_hour_mw[1] == 200.0);
  CHECK(r.average_mw == 200.0);

  TighteningResult same = envelope_tightening(wide, wide, 0.9);
  for (double v : same.per_hour_mw) CHECK(v == 0.0);
  CHECK(same.average_mw == 0.0);
}

TEST_CASE("tightening respects the quantile and can go negative") {
  TimeSeries a = mw_series(ladder_hour());
  TimeSeries b = mw_series(ladder_hour(0.5));
  TighteningResult r = envelope_tightening(a, b, 0.9);
  // 540+540 shrinking to 270+270 frees 540 MW.
  REQUIRE(r.per_hour_mw.size() == 1);
  CHECK(r.per_hour_mw[0] == 540.0);
  CHECK(r.average_mw == 540.0);

  TighteningResult widened = envelope_tightening(b, a, 0.9);
  CHECK(widened.per_hour_mw[0] == -540.0);
}

TEST_CASE("cost_savings is a plain bilinear tariff") {
  CostModel m;  // 10 + 10 $/MW/h over 720 h
  CHECK(cost_savings(0.0, m) == 0.0);
  CHECK(cost_savings(200.0, m) == 2880000.0);
  CostModel year{10.0, 10.0, 8760.0};
  CHECK(cost_savings(100.0, year) == 17520000.0);
  CHECK(cost_savings(400.0, m) == 2.0 * cost_savings(200.0, m));
  CostModel skew{15.0, 5.0, 720.0};
  CHECK(cost_savings(200.0, skew) == cost_savings(200.0, m));
  CHECK(status_of([&] { cost_savings(-1.0, m); }) == Status::negative_input);
  CostModel neg{-10.0, 10.0, 720.0};
  CHECK(status_of([&] { cost_savings(1.0, neg); }) == Status::negative_input);
}

TEST_CASE("band_compliance counts samples inside the band") {
  std::vector<double> ref(40, 60.0);
  TimeSeries f_ref = make_series(0, 60.0, ref, Unit::hz);
  TimeSeries same = make_series(0, 60.0, ref, Unit::hz);
  BandSpec band;  // +/- 0.036 Hz
  CHECK(band_compliance(same, f_ref, band) == 1.0);

  std::vector<double> off(40);
  for (std::size_t k = 0; k < 40; ++k) off[k] = 60.0 + 0.05;
  CHECK(band_compliance(make_series(0, 60.0, off, Unit::hz), f_ref, band) ==
        0.0);

  std::vector<double> half(40);
  for (std::size_t k = 0; k < 40; ++k)
    half[k] = 60.0 + ((k % 2 == 0) ? 0.02 : 0.05);
  CHECK(band_compliance(make_series(0, 60.0, half, Unit::hz), f_ref, band) ==
        0.5);
}

TEST_CASE("the band boundary itself is compliant") {
  // Exactly representable numbers keep the comparison exact.
  TimeSeries f_ref = make_series(0, 60.0, {60.0, 60.0}, Unit::hz);
  TimeSeries f = make_series(0, 60.0, {60.03125, 59.96875}, Unit::hz);
  BandSpec band{60.0, 0.03125};
  CHECK(band_compliance(f, f_ref, band) == 1.0);
  BandSpec tighter{60.0, 0.03124};
  CHECK(band_compliance(f, f_ref, tighter) == 0.0);
}

TEST_CASE("band_compliance matches a per-sample count oracle") {
  std::vector<double> ref(200), f(200);
  for (int k = 0; k < 200; ++k) {
    ref[std::size_t(k)] = 60.0 + 0.001 * std::sin(0.1 * k);
    f[std::size_t(k)] =
        ref[std::size_t(k)] + 0.06 * std::sin(0.73 * k + 0.2);
  }
  TimeSeries sref = make_series(0, 60.0, ref, Unit::hz);
  TimeSeries sf = make_series(0, 60.0, f, Unit::hz);
  BandSpec band;
  std::size_t inside = 0;
  for (std::size_t k = 0; k < 200; ++k)
    if (std::fabs(sf[k] - sref[k]) <= band.half_width_hz) ++inside;
  CHECK(band_compliance(sf, sref, band) ==
        static_cast<double>(inside) / 200.0);
  CHECK(band_compliance(sf, sref, band) > 0.0);
  CHECK(band_compliance(sf, sref, band) < 1.0);
}

TEST_CASE("band_compliance rejects bad bands and shapes") {
  TimeSeries a = make_series(0, 60.0, {60.0}, Unit::hz);
  TimeSeries b = make_series(60, 60.0, {60.0}, Unit::hz);
  CHECK(status_of([&] { band_compliance(a, b, BandSpec{}); }) ==
        Status::shape_mismatch);
  CHECK(status_of([&] {
          band_compliance(a, a, BandSpec{60.0, 0.0});
        }) == Status::invalid_spec);
}

TEST_CASE("monthly grouping splits on the calendar month") {
  std::vector<ReserveEnvelope> env(48);
  for (std::size_t h = 0; h < 48; ++h) {
    env[h].hour_index = h;
    env[h].reg_up_mw = static_cast<double>(h);
    env[h].reg_down_mw = 2.0 * static_cast<double>(h);
  }
  // 2016-12-31T00:00:00Z: one day before 2017-01-01 (1483228800).
  std::int64_t start = 1483228800 - 86400;
  std::vector<MonthlyEnvelope> months = group_envelopes_by_month(env, start);
  REQUIRE(months.size() == 2);
  CHECK(months[0].year == 2016);
  CHECK(months[0].month == 12);
  CHECK(months[0].hours == 24);
  CHECK(months[0].mean_reg_up_mw == doctest::Approx(11.5).epsilon(1e-15));
  CHECK(months[0].mean_reg_down_mw == doctest::Approx(23.0).epsilon(1e-15));
  CHECK(months[1].year == 2017);
  CHECK(months[1].month == 1);
  CHECK(months[1].hours == 24);
  CHECK(months[1].mean_reg_up_mw == doctest::Approx(35.5).epsilon(1e-15));
  CHECK(months[1].mean_reg_down_mw == doctest::Approx(71.0).epsilon(1e-15));

  CHECK(group_envelopes_by_month({}, start).empty());
}

TEST_CASE("round_to_cents uses banker's rounding") {
  CHECK(round_to_cents(0.125) == 0.12);   // 12.5 cents rounds to even
  CHECK(round_to_cents(0.375) == 0.38);   // 37.5 cents rounds to even
  CHECK(round_to_cents(-0.125) == -0.12);
  CHECK(round_to_cents(1.0) == 1.0);
  CHECK(round_to_cents(10.994) == 10.99);
  CHECK(round_to_cents(10.996) == 11.0);
}

TEST_CASE("format_usd renders cents") {
  CHECK(format_usd(2880000.0) == "$2880000.00");
  CHECK(format_usd(0.125) == "$0.12");
  CHECK(format_usd(1.5) == "$1.50");
  CHECK(format_usd(0.0) == "$0.00");
}
