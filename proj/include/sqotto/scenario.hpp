// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Run configuration: a flat sectioned INI file with units in the key names,
// plus command-line overrides.
//
//   [trap]         omega_ax_2pi_khz, omega_rad0_2pi_mhz, taper_angle_deg, r0_mm,
//                  ion_mass_kg, a_max_mm
//   [baths]        t_cold_mk, beta_ratio, gamma_per_s, gamma_t
//   [analytic]     beta_ratios, r_max, r_points, table_r
//   [simulation]   ensemble, repetitions, steps_per_period, trace_decimation,
//                  r_targets, cycle_r, frequency_ratio
//   [calibration]  ensemble, delta_omega_fractions, z_anchor_mm
//   [run]          seed
//
// Lists are comma separated. Unknown sections or keys are rejected.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqotto/trap.hpp"

namespace sqotto {

struct Scenario {
    TrapGeometry geom{};

    double t_cold = 1.0e-3;   ///< K
    double beta_ratio = 0.88;  ///< beta2 / beta1
    double gamma = 2.0e6;     ///< 1/s
    double gamma_t = 10.0;

    std::vector<double> beta_ratios{0.9, 0.6, 0.3};
    double r_max = 3.0;
    int r_points = 301;
    std::vector<double> table_r{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};

    std::size_t ensemble = 1000;
    int repetitions = 20;
    int steps_per_period = 200;
    long long trace_decimation = 20;
    std::vector<double> r_targets{0.0, 0.1, 0.2, 0.3, 0.4};
    double cycle_r = 0.3;  ///< squeezing of the second `simulate cycle` run
    std::optional<double> frequency_ratio;  ///< unset: max-power ratio

    std::size_t calibration_ensemble = 2000;
    std::vector<double> delta_omega_fractions{0.0,   0.025, 0.05,  0.075, 0.1,  0.125, 0.15,
                                              0.175, 0.2,   0.225, 0.25,  0.275, 0.3};
    double z_anchor = 0.0;  ///< m

    std::optional<std::uint64_t> seed;

    double t_hot() const noexcept { return t_cold / beta_ratio; }

    /// Range and non-emptiness checks; throws ConfigError.
    void validate() const;

    /// Seed or ConfigError ("seed is mandatory").
    std::uint64_t require_seed() const;

    /// Canonical `section.key = value` listing of every resolved setting.
    std::string canonical() const;

    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;
};

/// Parses an INI file on top of the defaults. Throws ConfigError.
Scenario load_scenario(const std::string& path);

/// Parses INI text on top of the defaults. Throws ConfigError.
Scenario parse_scenario(const std::string& text);

/// Output directory: explicit value, else $SQOTTO_OUTPUT_DIR, else "sqotto_out".
std::string resolve_output_dir(const std::optional<std::string>& explicit_dir);

std::uint64_t fnv1a64(const std::string& bytes) noexcept;

}  // namespace sqotto
