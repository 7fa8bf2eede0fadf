// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace sqotto {

/// Reduced Planck constant, J s.
inline constexpr double hbar = 1.054571817e-34;
/// Boltzmann constant, J/K (exact SI value).
inline constexpr double k_boltzmann = 1.380649e-23;
/// Default ion mass: 40Ca+, kg.
inline constexpr double calcium40_mass = 6.642e-26;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// beta = 1/(k_B T) for a temperature given in kelvin.
double inverse_temperature(double kelvin);

}  // namespace sqotto
