#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "predprey/config.hpp"

namespace predprey {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Runs the `predprey` command line. Summaries go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sweepable scalar: a NondimParams or Disturbance field, or noise_intensity.
bool set_sweep_parameter(RunConfig& config, std::string_view name, double value);

enum class SweepMetric { mean_r, mean_c, var_r, var_c, period, lag };

SweepMetric sweep_metric_from_string(std::string_view name);

struct SweepPoint {
    double value = 0.0;
    double metric = 0.0;
};

/// One simulation per value of the parameter, linearly spaced from..to.
/// Run i uses noise seed base_seed + i; results are ordered by value.
std::vector<SweepPoint> run_sweep(const RunConfig& config, std::string_view param, double from, double to,
                                  int steps, SweepMetric metric, unsigned jobs);

/// Initial field built from the [grid] settings and the initial state.
Field make_initial_field(const RunConfig& config);

} // namespace predprey
