// Copyright (c) 2026 freqbias contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library strictly through the C
// API; exit codes are the library's status codes, so scripts can key off
// the documented table.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "freqbias/freqbias.h"

namespace {

int fail_usage(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return FREQBIAS_USAGE_ERROR;
}

int report_library_error(int status) {
  std::fprintf(stderr, "error: %s (%s)\n", freqbias_last_error(),
               freqbias_status_name(status));
  return status;
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") {
    out = true;
    return true;
  }
  if (v == "0" || v == "false" || v == "no" || v == "off") {
    out = false;
    return true;
  }
  return false;
}

bool parse_double(const std::string& v, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& v, long long& out) {
  try {
    size_t pos = 0;
    out = std::stoll(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool parse_beta_unit(const std::string& v, int& out) {
  if (v == "mw_per_hz") {
    out = FREQBIAS_UNIT_MW_PER_HZ;
    return true;
  }
  if (v == "mw_per_0p1hz") {
    out = FREQBIAS_UNIT_MW_PER_0P1HZ;
    return true;
  }
  return false;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

// Flat key=value configuration; '#' starts a comment line. Returns an
// error message or empty on success.
std::string apply_config_file(const std::string& path,
                              freqbias_run_config& run,
                              freqbias_sim_spec& sim) {
  std::ifstream in(path);
  if (!in) return "cannot open config file '" + path + "'";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      return "config line " + std::to_string(lineno) + ": expected key=value";
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    double d = 0.0;
    long long n = 0;
    bool b = false;
    auto bad = [&]() {
      return "config line " + std::to_string(lineno) + ": bad value for " + key;
    };
    if (key == "window_minutes") {
      if (!parse_int(val, n)) return bad();
      run.estimator.window_minutes = static_cast<int>(n);
    } else if (key == "stride_minutes") {
      if (!parse_int(val, n)) return bad();
      run.estimator.stride_minutes = static_cast<int>(n);
    } else if (key == "condition_threshold") {
      if (!parse_double(val, d)) return bad();
      run.estimator.condition_threshold = d;
    } else if (key == "min_regressor_variance") {
      if (!parse_double(val, d)) return bad();
      run.estimator.min_regressor_variance = d;
    } else if (key == "fixed_beta") {
      if (!parse_double(val, d)) return bad();
      run.fixed_beta = d;
    } else if (key == "beta_unit") {
      if (!parse_beta_unit(val, run.fixed_beta_unit)) return bad();
    } else if (key == "quantile") {
      if (!parse_double(val, d)) return bad();
      run.quantile = d;
    } else if (key == "gap_policy") {
      if (val == "reject")
        run.gap_policy = FREQBIAS_GAP_REJECT;
      else if (val == "drop_hour")
        run.gap_policy = FREQBIAS_GAP_DROP_HOUR;
      else
        return bad();
    } else if (key == "band_nominal_hz") {
      if (!parse_double(val, d)) return bad();
      run.band_nominal_hz = d;
    } else if (key == "band_half_width_hz") {
      if (!parse_double(val, d)) return bad();
      run.band_half_width_hz = d;
    } else if (key == "price_up") {
      if (!parse_double(val, d)) return bad();
      run.price_up = d;
    } else if (key == "price_down") {
      if (!parse_double(val, d)) return bad();
      run.price_down = d;
    } else if (key == "cost_hours") {
      if (!parse_double(val, d)) return bad();
      run.cost_hours = d;
    } else if (key == "flip_interchange_sign") {
      if (!parse_bool(val, b)) return bad();
      run.flip_interchange_sign = b ? 1 : 0;
    } else if (key == "sim_seed") {
      if (!parse_int(val, n) || n < 0) return bad();
      sim.seed = static_cast<uint64_t>(n);
    } else if (key == "sim_minutes") {
      if (!parse_int(val, n)) return bad();
      sim.minutes = static_cast<int>(n);
    } else if (key == "sim_agc") {
      if (!parse_bool(val, b)) return bad();
      sim.agc_enabled = b ? 1 : 0;
    } else if (key == "sim_load") {
      if (val == "constant")
        sim.load_kind = FREQBIAS_LOAD_CONSTANT;
      else if (val == "random_walk")
        sim.load_kind = FREQBIAS_LOAD_RANDOM_WALK;
      else if (val == "ar1")
        sim.load_kind = FREQBIAS_LOAD_AR1;
      else
        return bad();
    } else if (key == "sim_base_mw") {
      if (!parse_double(val, d)) return bad();
      sim.base_mw = d;
    } else if (key == "sim_step_mw") {
      if (!parse_double(val, d)) return bad();
      sim.step_mw = d;
    } else if (key == "sim_rho") {
      if (!parse_double(val, d)) return bad();
      sim.rho = d;
    } else if (key == "sim_noise_mw") {
      if (!parse_double(val, d)) return bad();
      sim.noise_mw = d;
    } else if (key == "sim_alpha") {
      if (!parse_double(val, d)) return bad();
      sim.alpha = d;
    } else if (key == "sim_beta_mw_per_hz") {
      if (!parse_double(val, d)) return bad();
      sim.beta_mw_per_hz = d;
    } else if (key == "sim_schedule") {
      if (val == "constant")
        sim.schedule_kind = FREQBIAS_SCHEDULE_CONSTANT;
      else if (val == "step")
        sim.schedule_kind = FREQBIAS_SCHEDULE_STEP;
      else if (val == "sinusoidal")
        sim.schedule_kind = FREQBIAS_SCHEDULE_SINUSOIDAL;
      else
        return bad();
    } else if (key == "sim_beta2_mw_per_hz") {
      if (!parse_double(val, d)) return bad();
      sim.beta2_mw_per_hz = d;
    } else if (key == "sim_step_minute") {
      if (!parse_int(val, n)) return bad();
      sim.step_minute = static_cast<int>(n);
    } else if (key == "sim_sin_amplitude_mw_per_hz") {
      if (!parse_double(val, d)) return bad();
      sim.sin_amplitude_mw_per_hz = d;
    } else if (key == "sim_sin_period_minutes") {
      if (!parse_double(val, d)) return bad();
      sim.sin_period_minutes = d;
    } else if (key == "sim_sin_phase_rad") {
      if (!parse_double(val, d)) return bad();
      sim.sin_phase_rad = d;
    } else if (key == "sim_start_unix_s") {
      if (!parse_int(val, n)) return bad();
      sim.start_unix_s = n;
    } else {
      return "config line " + std::to_string(lineno) + ": unknown key " + key;
    }
  }
  return "";
}

struct CommonFlags {
  std::string input;
  std::string config;
  std::string truth;
  std::string out = ".";
  std::optional<int> window_minutes;
  std::optional<double> fixed_beta;
  std::string beta_unit;
  std::optional<double> quantile;
  std::optional<std::string> gap_policy;
  bool flip_interchange_sign = false;
};

void add_run_flags(CLI::App* cmd, CommonFlags& flags, bool needs_input) {
  auto* in = cmd->add_option("--input", flags.input,
                             "input telemetry CSV (schema in README)");
  if (needs_input) in->required();
  cmd->add_option("--config", flags.config, "flat key=value config file");
  cmd->add_option("--truth", flags.truth,
                  "ground-truth sidecar CSV for accuracy reporting");
  cmd->add_option("--out", flags.out, "output directory (default .)");
  cmd->add_option("--window-minutes", flags.window_minutes,
                  "rolling estimation window length");
  cmd->add_option("--fixed-beta", flags.fixed_beta,
                  "operating frequency bias magnitude");
  cmd->add_option("--beta-unit", flags.beta_unit,
                  "unit of --fixed-beta: mw_per_hz|mw_per_0p1hz");
  cmd->add_option("--quantile", flags.quantile,
                  "reserve envelope quantile in (0.5, 1]");
  cmd->add_option("--gap-policy", flags.gap_policy,
                  "missing-minute handling: reject|drop_hour");
  cmd->add_flag("--flip-interchange-sign", flags.flip_interchange_sign,
                "negate the delta_t_mw column on ingest");
}

int run_stages(const CommonFlags& flags, unsigned mask) {
  freqbias_run_config cfg;
  freqbias_run_config_init(&cfg);
  freqbias_sim_spec sim_unused;
  freqbias_sim_spec_init(&sim_unused);
  if (!flags.config.empty()) {
    std::string err = apply_config_file(flags.config, cfg, sim_unused);
    if (!err.empty()) return fail_usage(err);
  }
  if (flags.window_minutes) cfg.estimator.window_minutes = *flags.window_minutes;
  if (flags.fixed_beta) cfg.fixed_beta = *flags.fixed_beta;
  if (!flags.beta_unit.empty() &&
      !parse_beta_unit(flags.beta_unit, cfg.fixed_beta_unit))
    return fail_usage("--beta-unit must be mw_per_hz or mw_per_0p1hz");
  if (flags.quantile) cfg.quantile = *flags.quantile;
  if (flags.gap_policy) {
    if (*flags.gap_policy == "reject")
      cfg.gap_policy = FREQBIAS_GAP_REJECT;
    else if (*flags.gap_policy == "drop_hour")
      cfg.gap_policy = FREQBIAS_GAP_DROP_HOUR;
    else
      return fail_usage("--gap-policy must be reject or drop_hour");
  }
  if (flags.flip_interchange_sign) cfg.flip_interchange_sign = 1;

  int rc = freqbias_run_file(flags.input.c_str(),
                             flags.truth.empty() ? nullptr : flags.truth.c_str(),
                             &cfg, flags.out.c_str(), mask);
  if (rc != FREQBIAS_OK) return report_library_error(rc);
  return FREQBIAS_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "freqbias: rolling frequency-bias calibration, ACE/IEE accounting and "
      "regulation reserve analysis for balancing-authority telemetry"};
  app.require_subcommand(1);

  CommonFlags est_flags, dec_flags, res_flags, rep_flags;

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "synthesize a telemetry day with known ground truth");
  std::string sim_config, sim_out = ".";
  std::optional<std::uint64_t> sim_seed;
  std::optional<int> sim_minutes;
  bool sim_agc = false;
  sim_cmd->add_option("--config", sim_config, "flat key=value config file");
  sim_cmd->add_option("--out", sim_out,
                      "output directory for dataset.csv and truth.csv");
  sim_cmd->add_option("--seed", sim_seed, "random seed");
  sim_cmd->add_option("--minutes", sim_minutes, "length of the run");
  sim_cmd->add_flag("--agc", sim_agc, "re-adjust set points each minute");

  auto* est_cmd = app.add_subcommand(
      "estimate", "rolling droop calibration; writes estimates.csv");
  add_run_flags(est_cmd, est_flags, true);
  auto* dec_cmd = app.add_subcommand(
      "decompose", "ACE decomposition and hourly IEE; writes ace.csv, iee.csv");
  add_run_flags(dec_cmd, dec_flags, true);
  auto* res_cmd = app.add_subcommand(
      "reserves", "hourly regulation envelopes; writes envelopes.csv");
  add_run_flags(res_cmd, res_flags, true);
  auto* rep_cmd = app.add_subcommand(
      "report", "all stages plus plot data and summary.json");
  add_run_flags(rep_cmd, rep_flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return FREQBIAS_USAGE_ERROR;
  }

  if (sim_cmd->parsed()) {
    freqbias_sim_spec spec;
    freqbias_sim_spec_init(&spec);
    freqbias_run_config run_unused;
    freqbias_run_config_init(&run_unused);
    if (!sim_config.empty()) {
      std::string err = apply_config_file(sim_config, run_unused, spec);
      if (!err.empty()) return fail_usage(err);
    }
    if (sim_seed) spec.seed = *sim_seed;
    if (sim_minutes) spec.minutes = *sim_minutes;
    if (sim_agc) spec.agc_enabled = 1;
    std::error_code ec;
    std::filesystem::create_directories(sim_out, ec);
    if (ec) return fail_usage("cannot create output directory " + sim_out);
    std::string dataset = sim_out + "/dataset.csv";
    std::string truth = sim_out + "/truth.csv";
    int rc = freqbias_simulate_files(&spec, dataset.c_str(), truth.c_str());
    if (rc != FREQBIAS_OK) return report_library_error(rc);
    return FREQBIAS_OK;
  }
  if (est_cmd->parsed()) return run_stages(est_flags, FREQBIAS_STAGE_ESTIMATES);
  if (dec_cmd->parsed()) return run_stages(dec_flags, FREQBIAS_STAGE_ACE);
  if (res_cmd->parsed()) return run_stages(res_flags, FREQBIAS_STAGE_RESERVES);
  if (rep_cmd->parsed()) return run_stages(rep_flags, FREQBIAS_STAGE_ALL);
  return fail_usage("no command given");
}
