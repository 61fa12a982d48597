// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

namespace freqbias {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::usage_error: return "usage_error";
    case Status::non_finite_value: return "non_finite_value";
    case Status::empty_series: return "empty_series";
    case Status::non_positive_period: return "non_positive_period";
    case Status::shape_mismatch: return "shape_mismatch";
    case Status::unit_mismatch: return "unit_mismatch";
    case Status::period_mismatch: return "period_mismatch";
    case Status::partial_hour: return "partial_hour";
    case Status::out_of_bounds: return "out_of_bounds";
    case Status::unsupported_unit: return "unsupported_unit";
    case Status::step_too_large: return "step_too_large";
    case Status::non_finite_state: return "non_finite_state";
    case Status::degenerate_params: return "degenerate_params";
    case Status::empty_area: return "empty_area";
    case Status::invalid_spec: return "invalid_spec";
    case Status::schedule_mismatch: return "schedule_mismatch";
    case Status::collinear_regressors: return "collinear_regressors";
    case Status::series_too_short: return "series_too_short";
    case Status::zero_sigma: return "zero_sigma";
    case Status::bad_quantile: return "bad_quantile";
    case Status::negative_input: return "negative_input";
    case Status::missing_column: return "missing_column";
    case Status::bad_timestamp: return "bad_timestamp";
    case Status::gap_rejected: return "gap_rejected";
    case Status::io_error: return "io_error";
    case Status::bad_config: return "bad_config";
  }
  return "unknown";
}

}  // namespace freqbias
