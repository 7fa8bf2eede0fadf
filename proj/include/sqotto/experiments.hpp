// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Command implementations behind the `sqotto` tool. Every command writes CSV
// tables plus one JSON summary into an output directory; each file starts
// with a header block (tool version, command, config hash, seed). Output
// bytes depend only on the scenario and seed.

#include <string>
#include <vector>

#include "sqotto/scenario.hpp"

namespace sqotto {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_infeasible = 3,
    exit_numerical_failure = 4,
};

struct CommandResult {
    int exit_code = exit_ok;
    std::vector<std::string> files;  ///< paths written, in order
    std::string message;             ///< one-line outcome for the console
};

/// Efficiency-at-max-power curves over r in [0, r_max] for each beta ratio.
CommandResult cmd_analytic_fig1(const Scenario& scenario, const std::string& out_dir);

/// Closed forms next to the numeric power maximisation on the table_r grid.
CommandResult cmd_analytic_table(const Scenario& scenario, const std::string& out_dir);

/// Thermal (r = 0) and squeezed (r = cycle_r) cycles with time series,
/// corner statistics and the per-stroke ledger.
CommandResult cmd_simulate_cycle(const Scenario& scenario, const std::string& out_dir);

/// Squeeze calibration followed by the efficiency sweep over r_targets.
CommandResult cmd_simulate_sweep(const Scenario& scenario, const std::string& out_dir);

/// Squeeze calibration table.
CommandResult cmd_calibrate(const Scenario& scenario, const std::string& out_dir);

}  // namespace sqotto
