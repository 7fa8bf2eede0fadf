// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "sqotto/thermo.hpp"

namespace sqotto {

struct PowerSearchOptions {
    int grid_points = 200;        ///< log-spaced ratios in (1, max_ratio]
    double max_ratio = 20.0;
    double ratio_tolerance = 1e-6;
};

struct PowerOptimum {
    Regime regime = Regime::not_engine;
    double omega2 = 0.0;
    double ratio = 0.0;  ///< omega2 / omega1
    double power = 0.0;
    std::optional<double> efficiency;
    int local_maxima = 0;  ///< grid local maxima seen; > 1 signals a multimodal power curve
};

/// Brute-force maximum of power over omega2 at fixed omega1, temperatures,
/// squeezing and cycle time, for an adiabatic (Q* = 1) cycle.
///
/// Coarse log grid followed by golden-section refinement of the bracket
/// around the best grid point. Independent of the closed-form optimality
/// condition, so it serves as its oracle.
PowerOptimum maximize_power_numeric(double beta1, double beta2, double r, double omega1,
                                    double tau, const PowerSearchOptions& options = {});

}  // namespace sqotto
