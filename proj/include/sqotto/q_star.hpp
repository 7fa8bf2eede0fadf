// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace sqotto {

/// Frequency schedule omega(t) on [0, duration].
struct FrequencyRamp {
    std::function<double(double)> omega;
    double duration = 0.0;

    /// Linear interpolation between two frequencies.
    static FrequencyRamp linear(double omega_initial, double omega_final, double duration);

    /// Smooth (cosine) interpolation, zero slope at both ends.
    static FrequencyRamp smooth(double omega_initial, double omega_final, double duration);

    /// Piecewise-linear through (time, omega) knots; the first knot must be at t = 0.
    static FrequencyRamp piecewise_linear(std::vector<std::pair<double, double>> knots);
};

/// Adiabaticity factor Q* of a frequency ramp.
///
/// Integrates X'' + omega(t)^2 X = 0 for the two fundamental solutions with
/// (X, X') = (1, 0) and (0, omega_i) and evaluates
///
///   Q* = [omega_f^2 (X1^2 + X2^2) + X1'^2 + X2'^2] / (2 omega_i omega_f),
///
/// which is the phase-averaged ratio of the final classical action to the
/// initial one. Q* = 1 for a quasi-static ramp and
/// (omega_i^2 + omega_f^2) / (2 omega_i omega_f) for a sudden quench.
///
/// A fourth-order symplectic (triple-jump) integrator is used with at least
/// `steps_per_period` steps per shortest period along the ramp.
///
/// Throws std::domain_error for a non-positive frequency or duration.
double compute_q_star(const FrequencyRamp& ramp, int steps_per_period = 400);

/// Closed form for an instantaneous jump omega_i -> omega_f.
double sudden_quench_q_star(double omega_initial, double omega_final);

}  // namespace sqotto
