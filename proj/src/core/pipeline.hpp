// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_PIPELINE_HPP
#define FREQBIAS_CORE_PIPELINE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "core/csvio.hpp"
#include "core/estimator.hpp"
#include "core/gtg.hpp"
#include "core/reserve.hpp"

namespace freqbias {

inline constexpr unsigned kStageEstimates = 1u;
inline constexpr unsigned kStageAce = 2u;
inline constexpr unsigned kStageReserves = 4u;
inline constexpr unsigned kStageAll =
    kStageEstimates | kStageAce | kStageReserves;

struct RunConfig {
  EstimatorConfig estimator;
  BiasValue fixed_beta{409.0, Unit::mw_per_0p1hz};  // the SPP operating value
  BandSpec band;
  CostModel cost;
  double quantile = 1.0;
  GapPolicy gap_policy = GapPolicy::reject;
  bool flip_interchange_sign = false;
};

/// Recasts a simulated dataset as ingested telemetry. delta_t is the
/// interchange deviation (nai - nsi); the recorded ace_f column is the
/// frequency part under the generating truth bias.
TelemetryBundle to_bundle(const SyntheticDataset& ds);

/// Runs the requested stages over one telemetry bundle and writes
/// estimates.csv / ace.csv / iee.csv / envelopes.csv / plot files into
/// out_dir as selected, plus summary.json always. Returns the summary.
/// truth, when nonempty, must align with the bundle minutes and adds a
/// truth-comparison block to the summary.
nlohmann::ordered_json run_pipeline(const TelemetryBundle& bundle,
                                    const std::vector<TruthPoint>& truth,
                                    const RunConfig& cfg,
                                    const std::string& out_dir,
                                    unsigned stages = kStageAll);

}  // namespace freqbias

#endif
