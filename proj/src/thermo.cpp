// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/thermo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqotto/constants.hpp"

namespace sqotto {

namespace {

void require(bool condition, const char* what)
{
    if (!condition)
        throw std::domain_error(what);
}

void check_temperatures(double beta1, double beta2)
{
    require(std::isfinite(beta1) && std::isfinite(beta2), "inverse temperatures must be finite");
    require(beta2 > 0.0, "beta2 must be positive");
    require(beta1 >= beta2, "cold bath must not be hotter than the hot bath (beta1 >= beta2)");
}

void check_squeezing(double r)
{
    require(std::isfinite(r) && r >= 0.0, "squeezing parameter must be finite and >= 0");
}

}  // namespace

double inverse_temperature(double kelvin)
{
    require(kelvin > 0.0, "temperature must be positive");
    return 1.0 / (k_boltzmann * kelvin);
}

void CycleParams::validate_physical() const
{
    require(omega1 > 0.0 && omega2 > 0.0, "frequencies must be positive");
    require(beta1 > 0.0 && beta2 > 0.0, "inverse temperatures must be positive");
    require(q_star_1 >= 1.0 && q_star_2 >= 1.0, "adiabaticity factors must be >= 1");
    check_squeezing(r);
    require(tau > 0.0, "cycle time must be positive");
}

void CycleParams::validate() const
{
    validate_physical();
    require(omega2 > omega1, "omega2 must exceed omega1");
    require(beta1 > beta2, "beta1 must exceed beta2");
}

CycleParams CycleParams::from_temperatures(double omega1, double omega2, double t_cold,
                                           double t_hot, double r, double tau)
{
    CycleParams p;
    p.omega1 = omega1;
    p.omega2 = omega2;
    p.beta1 = inverse_temperature(t_cold);
    p.beta2 = inverse_temperature(t_hot);
    p.r = r;
    p.tau = tau;
    return p;
}

double coth(double x)
{
    require(x > 0.0, "coth argument must be positive");
    if (x < 1e-4)
        return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
}

double thermal_mean_energy(double omega, double beta)
{
    require(omega > 0.0 && beta > 0.0, "thermal_mean_energy: omega and beta must be positive");
    const double quantum = hbar * omega;
    if (std::isinf(beta))
        return 0.5 * quantum;
    return 0.5 * quantum * coth(0.5 * beta * quantum);
}

double thermal_occupation(double omega, double beta)
{
    require(omega > 0.0 && beta > 0.0, "thermal_occupation: omega and beta must be positive");
    return 1.0 / std::expm1(beta * hbar * omega);
}

double squeeze_factor(double r)
{
    const double s = std::sinh(r);
    return 1.0 + 2.0 * s * s;
}

double squeezed_occupation(double n_thermal, double r)
{
    require(n_thermal >= 0.0, "thermal occupation must be >= 0");
    check_squeezing(r);
    const double s = std::sinh(r);
    return n_thermal + (2.0 * n_thermal + 1.0) * s * s;
}

double squeeze_enhancement(double n_thermal, double r)
{
    require(n_thermal > 0.0, "squeeze_enhancement is singular at zero occupation");
    check_squeezing(r);
    const double s = std::sinh(r);
    return 1.0 + (2.0 + 1.0 / n_thermal) * s * s;
}

StrokeEnergies stroke_energies(const CycleParams& params)
{
    params.validate_physical();
    const double half1 = 0.5 * hbar * params.omega1;
    const double half2 = 0.5 * hbar * params.omega2;
    const double coth_cold = coth(params.beta1 * half1);
    const double coth_hot = coth(params.beta2 * half2);
    const double enhancement =
        squeeze_enhancement(thermal_occupation(params.omega2, params.beta2), params.r);

    StrokeEnergies e;
    e.e_a = half1 * coth_cold;
    e.e_b = half2 * params.q_star_1 * coth_cold;
    e.e_c = half2 * coth_hot * enhancement;
    e.e_d = half1 * params.q_star_2 * coth_hot * enhancement;
    return e;
}

CycleOutputs work_and_heat(const StrokeEnergies& energies, double tau)
{
    require(tau > 0.0, "cycle time must be positive");
    CycleOutputs out;
    out.heat_in = energies.e_c - energies.e_b;
    out.heat_out = energies.e_d - energies.e_a;
    out.work_net = out.heat_in - out.heat_out;
    out.power = out.work_net / tau;
    if (out.heat_in > 0.0) {
        out.efficiency = out.work_net / out.heat_in;
        if (out.work_net > 0.0)
            out.regime = Regime::engine;
    }
    return out;
}

std::optional<double> efficiency(const CycleParams& params)
{
    params.validate_physical();
    const double coth_cold = coth(0.5 * params.beta1 * hbar * params.omega1);
    const double hot = coth(0.5 * params.beta2 * hbar * params.omega2) *
                       squeeze_enhancement(thermal_occupation(params.omega2, params.beta2),
                                           params.r);
    const double numerator = coth_cold - params.q_star_2 * hot;
    const double denominator = params.q_star_1 * coth_cold - hot;
    // heat_in is proportional to -denominator
    if (!(denominator < 0.0))
        return std::nullopt;
    const double eta = 1.0 - (params.omega1 / params.omega2) * numerator / denominator;
    if (!(eta > 0.0))
        return std::nullopt;
    return eta;
}

double optimal_frequency_ratio(double beta1, double beta2, double r)
{
    check_temperatures(beta1, beta2);
    check_squeezing(r);
    return std::sqrt(beta1 * squeeze_factor(r) / beta2);
}

double efficiency_at_max_power(double beta1, double beta2, double r)
{
    check_temperatures(beta1, beta2);
    check_squeezing(r);
    return 1.0 - std::sqrt(beta2 / (beta1 * squeeze_factor(r)));
}

double efficiency_asymptotic(double beta1, double beta2, double r)
{
    check_temperatures(beta1, beta2);
    check_squeezing(r);
    return 1.0 - std::sqrt(2.0 * (beta2 / beta1) * std::exp(-2.0 * r));
}

double generalized_carnot(double beta1, double beta2, double r)
{
    check_temperatures(beta1, beta2);
    check_squeezing(r);
    return 1.0 - beta2 / (beta1 * squeeze_factor(r));
}

double carnot(double beta1, double beta2)
{
    check_temperatures(beta1, beta2);
    return 1.0 - beta2 / beta1;
}

double curzon_ahlborn(double beta1, double beta2)
{
    check_temperatures(beta1, beta2);
    return 1.0 - std::sqrt(beta2 / beta1);
}

double carnot_crossing_squeezing(double beta1, double beta2)
{
    check_temperatures(beta1, beta2);
    return std::asinh(std::sqrt(0.5 * (beta1 / beta2 - 1.0)));
}

double squeezing_for_efficiency_at_max_power(double beta1, double beta2, double eta)
{
    check_temperatures(beta1, beta2);
    require(eta < 1.0, "efficiency must be below one");
    const double cosh_2r = (beta2 / beta1) / ((1.0 - eta) * (1.0 - eta));
    require(cosh_2r >= 1.0, "efficiency below the thermal-bath value");
    return 0.5 * std::acosh(cosh_2r);
}

}  // namespace sqotto
