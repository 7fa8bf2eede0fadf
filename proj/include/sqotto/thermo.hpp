// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Closed-form thermodynamics of the harmonic Otto cycle whose hot reservoir
// is a squeezed thermal bath.
//
// Cycle corners: A (thermal, omega1, cold bath) -> B (after compression to
// omega2) -> C (after contact with the hot squeezed bath) -> D (after
// expansion back to omega1) -> A (cold bath contact).
//
// Energies are in joules, frequencies are angular (rad/s), inverse
// temperatures are in 1/J. Work extracted by the engine and heat absorbed by
// the oscillator are positive.

#include <optional>

namespace sqotto {

/// Full parameter set of one analytic cycle.
struct CycleParams {
    double omega1 = 0.0;    ///< low (cold-side) trap frequency
    double omega2 = 0.0;    ///< high (hot-side) trap frequency
    double beta1 = 0.0;     ///< cold-bath inverse temperature
    double beta2 = 0.0;     ///< hot-bath inverse temperature
    double r = 0.0;         ///< squeezing parameter of the hot bath
    double q_star_1 = 1.0;  ///< adiabaticity factor of the compression
    double q_star_2 = 1.0;  ///< adiabaticity factor of the expansion
    double tau = 1.0;       ///< cycle time, s

    /// Throws std::domain_error unless omega2 > omega1 > 0, beta1 > beta2 > 0,
    /// Q* >= 1, r >= 0 and tau > 0.
    void validate() const;

    /// Positivity-only check used by the energy formulas, which stay defined
    /// for degenerate (omega1 == omega2, beta1 == beta2) or reversed cycles.
    void validate_physical() const;

    /// Adiabatic cycle with temperatures given in kelvin.
    static CycleParams from_temperatures(double omega1, double omega2, double t_cold,
                                         double t_hot, double r, double tau = 1.0);
};

/// Mean oscillator energy at the four corners.
struct StrokeEnergies {
    double e_a = 0.0;
    double e_b = 0.0;
    double e_c = 0.0;
    double e_d = 0.0;
};

enum class Regime {
    engine,     ///< heat_in > 0 and work_net > 0
    not_engine  ///< refrigerator, heater, or degenerate cycle
};

struct CycleOutputs {
    double work_net = 0.0;
    double heat_in = 0.0;   ///< absorbed from the hot squeezed bath
    double heat_out = 0.0;  ///< released to the cold bath
    double power = 0.0;
    /// work_net / heat_in, present whenever heat_in > 0.
    std::optional<double> efficiency;
    Regime regime = Regime::not_engine;

    bool is_engine() const noexcept { return regime == Regime::engine; }
};

/// coth(x) for x > 0; uses 1/x + x/3 below x = 1e-4.
double coth(double x);

/// (hbar omega / 2) coth(beta hbar omega / 2).
double thermal_mean_energy(double omega, double beta);

/// Bose occupation 1 / (exp(beta hbar omega) - 1).
double thermal_occupation(double omega, double beta);

/// 1 + 2 sinh^2 r, i.e. cosh 2r.
double squeeze_factor(double r);

/// <n> + (2<n> + 1) sinh^2 r.
double squeezed_occupation(double n_thermal, double r);

/// Delta H(r) = 1 + (2 + 1/<n>) sinh^2 r.
///
/// Satisfies <n> * DeltaH = squeezed_occupation(<n>, r) exactly. Undefined
/// (std::domain_error) for <n> = 0.
double squeeze_enhancement(double n_thermal, double r);

StrokeEnergies stroke_energies(const CycleParams& params);

/// Per-stroke energy ledger of a closed cycle.
CycleOutputs work_and_heat(const StrokeEnergies& energies, double tau);

/// Efficiency from the closed-form ratio expression. Returns std::nullopt
/// outside the engine regime.
std::optional<double> efficiency(const CycleParams& params);

/// omega2/omega1 maximising power in the high-temperature limit.
double optimal_frequency_ratio(double beta1, double beta2, double r);

/// 1 - sqrt(beta2 / (beta1 cosh 2r)).
double efficiency_at_max_power(double beta1, double beta2, double r);

/// Large-r form 1 - sqrt(2 (beta2/beta1) exp(-2r)).
double efficiency_asymptotic(double beta1, double beta2, double r);

/// 1 - beta2 / (beta1 cosh 2r).
double generalized_carnot(double beta1, double beta2, double r);

/// 1 - beta2/beta1.
double carnot(double beta1, double beta2);

/// 1 - sqrt(beta2/beta1).
double curzon_ahlborn(double beta1, double beta2);

/// Squeezing at which efficiency_at_max_power equals the standard Carnot
/// value: sinh^2 r = (beta1/beta2 - 1) / 2.
double carnot_crossing_squeezing(double beta1, double beta2);

/// Inverse of efficiency_at_max_power in r. Requires
/// curzon_ahlborn(beta1, beta2) <= eta < 1.
double squeezing_for_efficiency_at_max_power(double beta1, double beta2, double eta);

}  // namespace sqotto
