// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef FREQBIAS_CORE_ERROR_HPP
#define FREQBIAS_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace freqbias {

// One code per error class. The numeric values are part of the public
// contract: they are the C API status codes and the CLI exit codes.
enum class Status : int {
  ok = 0,
  usage_error = 1,
  non_finite_value = 2,
  empty_series = 3,
  non_positive_period = 4,
  shape_mismatch = 5,
  unit_mismatch = 6,
  period_mismatch = 7,
  partial_hour = 8,
  out_of_bounds = 9,
  unsupported_unit = 10,
  step_too_large = 11,
  non_finite_state = 12,
  degenerate_params = 13,
  empty_area = 14,
  invalid_spec = 15,
  schedule_mismatch = 16,
  collinear_regressors = 17,
  series_too_short = 18,
  zero_sigma = 19,
  bad_quantile = 20,
  negative_input = 21,
  missing_column = 22,
  bad_timestamp = 23,
  gap_rejected = 24,
  io_error = 25,
  bad_config = 26,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}

  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& message) {
  throw Error(status, message);
}

}  // namespace freqbias

#endif
