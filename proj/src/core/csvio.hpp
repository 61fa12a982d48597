// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_CSVIO_HPP
#define FREQBIAS_CORE_CSVIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/ace.hpp"
#include "core/estimator.hpp"
#include "core/gtg.hpp"
#include "core/reserve.hpp"
#include "core/timeseries.hpp"

namespace freqbias {

/// "1970-01-02T03:04:05Z" for a unix time, strictly UTC.
std::string format_timestamp(std::int64_t unix_s);

/// Strict inverse of format_timestamp; throws BadTimestamp otherwise.
std::int64_t parse_timestamp(const std::string& text);

/// Shortest digit string that parses back to exactly the same double.
std::string format_double_shortest(double v);

/// Fixed 9-significant-digit rendering for report tables.
std::string format_double_sig9(double v);

enum class GapPolicy { reject, drop_hour };

/// Ingested minute telemetry, hour-packed when gaps were dropped.
struct TelemetryBundle {
  TimeSeries delta_t;  // MW, interchange part of ACE as recorded
  TimeSeries ace_f;    // MW
  TimeSeries f_ref;    // Hz
  TimeSeries f;        // Hz
  TimeSeries p_g;      // MW
  TimeSeries nai;      // MW
  std::optional<TimeSeries> nsi;  // MW, when the file carries it
  std::vector<std::size_t> kept_hours;  // hour blocks relative to first row
  std::size_t rows_ingested = 0;
  std::int64_t original_start = 0;
};

/// Reads the telemetry schema (timestamp, delta_t_mw, ace_f_mw, f_ref_hz,
/// f_hz, p_g_mw, nai_mw[, nsi_mw]); header order- and case-insensitive,
/// unknown columns ignored. Timestamps must advance in whole minutes;
/// missing minutes are fatal under `reject` (a trailing partial hour is
/// allowed) and drop the surrounding hour block under `drop_hour`.
TelemetryBundle ingest_csv(const std::string& path, GapPolicy policy);

/// Writes a bundle back to the same schema with round-trip-exact floats.
void write_dataset_csv(const TelemetryBundle& bundle, const std::string& path);

void write_truth_csv(const std::vector<TruthPoint>& truth,
                     const std::string& path);
std::vector<TruthPoint> load_truth_csv(const std::string& path);

void write_estimates_csv(const std::vector<DroopEstimate>& estimates,
                         const std::string& path);
void write_ace_csv(const std::vector<AceRecord>& records,
                   const std::string& path);
void write_iee_csv(const std::vector<IeeRecord>& records,
                   const std::string& path);
void write_envelopes_csv(const std::vector<ReserveEnvelope>& envelopes,
                         const std::string& path);

/// Long-format plot table (index, series, value); series are emitted in
/// order, one block each.
void emit_plot_data(
    const std::vector<std::pair<std::string, TimeSeries>>& named,
    const std::string& path);

}  // namespace freqbias

#endif
