// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/csvio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "core/timeutil.hpp"

namespace freqbias {

namespace {

[[noreturn]] void io_fail(const std::string& what) {
  fail(Status::io_error, what);
}

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  s.erase(0, i);
  return s;
}

std::string lower_trim(std::string s) {
  s = trim(std::move(s));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

double parse_field_double(const std::string& raw, std::size_t row,
                          const std::string& column) {
  std::string s = lower_trim(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    fail(Status::non_finite_value, "row " + std::to_string(row) + " column " +
                                       column + " is not a finite number");
  return v;
}

bool all_digits(const std::string& s, std::size_t pos, std::size_t n) {
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

int num(const std::string& s, std::size_t pos, std::size_t n) {
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

std::string format_timestamp(std::int64_t unix_s) {
  std::int64_t days = unix_s / 86400;
  std::int64_t rem = unix_s % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  CivilDate d = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year,
                d.month, d.day, static_cast<int>(rem / 3600),
                static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return std::string(buf);
}

std::int64_t parse_timestamp(const std::string& text) {
  // Fixed layout YYYY-MM-DDTHH:MM:SSZ.
  bool ok = text.size() == 20 && text[4] == '-' && text[7] == '-' &&
            text[10] == 'T' && text[13] == ':' && text[16] == ':' &&
            text[19] == 'Z' && all_digits(text, 0, 4) &&
            all_digits(text, 5, 2) && all_digits(text, 8, 2) &&
            all_digits(text, 11, 2) && all_digits(text, 14, 2) &&
            all_digits(text, 17, 2);
  if (!ok) fail(Status::bad_timestamp, "malformed timestamp '" + text + "'");
  int y = num(text, 0, 4), mo = num(text, 5, 2), d = num(text, 8, 2);
  int h = num(text, 11, 2), mi = num(text, 14, 2), se = num(text, 17, 2);
  if (mo < 1 || mo > 12 || d < 1 || h > 23 || mi > 59 || se > 59)
    fail(Status::bad_timestamp, "out-of-range timestamp '" + text + "'");
  std::int64_t days = days_from_civil(y, mo, d);
  CivilDate back = civil_from_days(days);
  if (back.year != y || back.month != mo || back.day != d)
    fail(Status::bad_timestamp, "invalid calendar date '" + text + "'");
  return days * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_double_shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) io_fail("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_double_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::string(buf);
}

TelemetryBundle ingest_csv(const std::string& path, GapPolicy policy) {
  std::ifstream in(path);
  if (!in) io_fail("cannot open '" + path + "' for reading");

  std::string line;
  if (!std::getline(in, line)) fail(Status::empty_series, "file has no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_csv(line);
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i)
    col.emplace(lower_trim(header[i]), i);

  const char* required[] = {"timestamp", "delta_t_mw", "ace_f_mw",
                            "f_ref_hz",  "f_hz",       "p_g_mw",
                            "nai_mw"};
  for (const char* name : required) {
    if (!col.count(name))
      fail(Status::missing_column, "missing column " + std::string(name));
  }
  bool has_nsi = col.count("nsi_mw") > 0;
  std::size_t max_col = 0;
  for (auto& [name, idx] : col) max_col = std::max(max_col, idx);

  struct Row {
    std::int64_t minute_offset;
    double delta_t, ace_f, f_ref, f, p_g, nai, nsi;
  };
  std::vector<Row> rows;
  std::int64_t t0 = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() <= max_col)
      io_fail("row " + std::to_string(lineno) + " has too few fields");
    std::int64_t t = parse_timestamp(trim(fields[col["timestamp"]]));
    Row r{};
    if (rows.empty()) {
      t0 = t;
      r.minute_offset = 0;
    } else {
      std::int64_t dt = t - (t0 + rows.back().minute_offset * 60);
      if (dt <= 0 || dt % 60 != 0)
        fail(Status::bad_timestamp,
             "row " + std::to_string(lineno) +
                 ": timestamps must advance in whole minutes");
      r.minute_offset = rows.back().minute_offset + dt / 60;
    }
    r.delta_t = parse_field_double(fields[col["delta_t_mw"]], lineno, "delta_t_mw");
    r.ace_f = parse_field_double(fields[col["ace_f_mw"]], lineno, "ace_f_mw");
    r.f_ref = parse_field_double(fields[col["f_ref_hz"]], lineno, "f_ref_hz");
    r.f = parse_field_double(fields[col["f_hz"]], lineno, "f_hz");
    r.p_g = parse_field_double(fields[col["p_g_mw"]], lineno, "p_g_mw");
    r.nai = parse_field_double(fields[col["nai_mw"]], lineno, "nai_mw");
    r.nsi = has_nsi ? parse_field_double(fields[col["nsi_mw"]], lineno, "nsi_mw")
                    : 0.0;
    rows.push_back(r);
  }
  if (rows.empty()) fail(Status::empty_series, "file has no data rows");

  std::vector<std::size_t> keep;  // indices into rows
  std::vector<std::size_t> kept_hours;
  if (policy == GapPolicy::reject) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].minute_offset != rows[i - 1].minute_offset + 1)
        fail(Status::gap_rejected,
             "missing minute(s) before data row " + std::to_string(i + 1) +
                 " (hour " +
                 std::to_string(rows[i].minute_offset / 60) + ")");
    }
    keep.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) keep[i] = i;
    for (std::size_t h = 0; h < rows.size() / 60; ++h) kept_hours.push_back(h);
  } else {
    // Hour blocks are 60-minute windows counted from the first row.
    std::unordered_map<std::int64_t, std::size_t> per_block;
    for (const Row& r : rows) ++per_block[r.minute_offset / 60];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (per_block[rows[i].minute_offset / 60] == 60) keep.push_back(i);
    }
    if (keep.empty())
      fail(Status::empty_series, "no complete hour survives drop_hour");
    std::int64_t last_block = -1;
    for (std::size_t i : keep) {
      std::int64_t block = rows[i].minute_offset / 60;
      if (block != last_block) {
        kept_hours.push_back(static_cast<std::size_t>(block));
        last_block = block;
      }
    }
  }

  auto gather = [&](double Row::*field, Unit unit) {
    std::vector<double> v(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) v[i] = rows[keep[i]].*field;
    std::int64_t start = t0 + rows[keep.front()].minute_offset * 60;
    return make_series(start, 60.0, std::move(v), unit);
  };

  TelemetryBundle b{gather(&Row::delta_t, Unit::mw),
                    gather(&Row::ace_f, Unit::mw),
                    gather(&Row::f_ref, Unit::hz),
                    gather(&Row::f, Unit::hz),
                    gather(&Row::p_g, Unit::mw),
                    gather(&Row::nai, Unit::mw),
                    std::nullopt,
                    std::move(kept_hours),
                    rows.size(),
                    t0};
  if (has_nsi) b.nsi = gather(&Row::nsi, Unit::mw);
  return b;
}

void write_dataset_csv(const TelemetryBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "timestamp,delta_t_mw,ace_f_mw,f_ref_hz,f_hz,p_g_mw,nai_mw";
  if (bundle.nsi) out << ",nsi_mw";
  out << "\n";
  const TimeSeries& t = bundle.f;
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::int64_t ts =
        bundle.f.start_time() + static_cast<std::int64_t>(k) * 60;
    out << format_timestamp(ts) << ',' << format_double_shortest(bundle.delta_t[k])
        << ',' << format_double_shortest(bundle.ace_f[k]) << ','
        << format_double_shortest(bundle.f_ref[k]) << ','
        << format_double_shortest(bundle.f[k]) << ','
        << format_double_shortest(bundle.p_g[k]) << ','
        << format_double_shortest(bundle.nai[k]);
    if (bundle.nsi) out << ',' << format_double_shortest((*bundle.nsi)[k]);
    out << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

void write_truth_csv(const std::vector<TruthPoint>& truth,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "minute,alpha,sigma,beta_mw_per_hz\n";
  for (std::size_t k = 0; k < truth.size(); ++k) {
    out << k << ',' << format_double_shortest(truth[k].alpha) << ','
        << format_double_shortest(truth[k].sigma_hz_per_mw) << ','
        << format_double_shortest(truth[k].beta_mw_per_hz) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

std::vector<TruthPoint> load_truth_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_fail("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) fail(Status::empty_series, "empty truth file");
  std::vector<TruthPoint> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv(line);
    if (f.size() < 4) io_fail("truth row " + std::to_string(lineno) + " short");
    TruthPoint t;
    t.alpha = parse_field_double(f[1], lineno, "alpha");
    t.sigma_hz_per_mw = parse_field_double(f[2], lineno, "sigma");
    t.beta_mw_per_hz = parse_field_double(f[3], lineno, "beta_mw_per_hz");
    out.push_back(t);
  }
  if (out.empty()) fail(Status::empty_series, "truth file has no rows");
  return out;
}

void write_estimates_csv(const std::vector<DroopEstimate>& estimates,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "minute,alpha,sigma_hz_per_mw,beta_mw_per_hz,beta_mw_per_0p1hz,"
         "r_squared,condition_number,ill_conditioned\n";
  for (const DroopEstimate& e : estimates) {
    out << e.minute_index << ',' << format_double_sig9(e.alpha) << ','
        << format_double_sig9(e.sigma_hz_per_mw) << ','
        << format_double_sig9(e.beta.magnitude) << ','
        << format_double_sig9(e.beta.magnitude / 10.0) << ','
        << format_double_sig9(e.r_squared) << ','
        << format_double_sig9(e.condition_number) << ','
        << (e.ill_conditioned ? 1 : 0) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

void write_ace_csv(const std::vector<AceRecord>& records,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "minute,ace_f_mw,delta_f_interchange_mw,ace_total_mw\n";
  for (const AceRecord& r : records) {
    out << r.minute_index << ',' << format_double_sig9(r.ace_f_mw) << ','
        << format_double_sig9(r.delta_f_interchange_mw) << ','
        << format_double_sig9(r.ace_total_mw) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

void write_iee_csv(const std::vector<IeeRecord>& records,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "hour,iee_mwh,iee_optimal_mwh\n";
  for (const IeeRecord& r : records) {
    out << r.hour_index << ',' << format_double_sig9(r.iee_mwh) << ','
        << format_double_sig9(r.iee_optimal_mwh) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

void write_envelopes_csv(const std::vector<ReserveEnvelope>& envelopes,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "hour,basis,reg_up_mw,reg_down_mw,quantile\n";
  for (const ReserveEnvelope& e : envelopes) {
    out << e.hour_index << ','
        << (e.basis == EnvelopeBasis::ace ? "ace" : "dp_l") << ','
        << format_double_sig9(e.reg_up_mw) << ','
        << format_double_sig9(e.reg_down_mw) << ','
        << format_double_sig9(e.quantile) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

void emit_plot_data(
    const std::vector<std::pair<std::string, TimeSeries>>& named,
    const std::string& path) {
  if (named.empty()) fail(Status::empty_series, "no series to plot");
  std::ofstream out(path);
  if (!out) io_fail("cannot open '" + path + "' for writing");
  out << "index,series,value\n";
  for (const auto& [name, series] : named) {
    for (std::size_t k = 0; k < series.size(); ++k)
      out << k << ',' << name << ',' << format_double_sig9(series[k]) << "\n";
  }
  if (!out) io_fail("write to '" + path + "' failed");
}

}  // namespace freqbias
