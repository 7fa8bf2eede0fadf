// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/reservoirs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqotto/errors.hpp"

namespace sqotto {

namespace {

constexpr std::uint64_t kCalibrationDomain = 0xca11b4a7e;

long long step_count(double duration, double max_dt)
{
    return std::max<long long>(1, static_cast<long long>(std::ceil(duration / max_dt - 1e-9)));
}

}  // namespace

void BathConfig::validate() const
{
    if (kind == BathKind::squeeze) {
        if (!std::isfinite(delta_omega))
            throw ConfigError("squeeze delta_omega must be finite");
        return;
    }
    if (!(temperature > 0.0))
        throw ConfigError("bath temperature must be positive");
    if (!(gamma > 0.0))
        throw ConfigError("bath friction rate must be positive");
    if (!(duration > 0.0))
        throw ConfigError("bath contact duration must be positive");
}

BathConfig BathConfig::cold(double kelvin, double gamma, double duration)
{
    return {BathKind::cold_thermal, kelvin, gamma, duration, 0.0};
}

BathConfig BathConfig::hot(double kelvin, double gamma, double duration)
{
    return {BathKind::hot_thermal, kelvin, gamma, duration, 0.0};
}

BathConfig BathConfig::squeeze(double delta_omega)
{
    return {BathKind::squeeze, 0.0, 0.0, 0.0, delta_omega};
}

ThermalContact::ThermalContact(const BathConfig& bath, double mass, double dt, double omega)
    : mass_(mass), dt_(dt)
{
    bath.validate();
    if (!bath.is_thermal())
        throw ConfigError("thermal contact needs a thermal bath");
    if (!(dt > 0.0))
        throw ConfigError("time step must be positive");
    if (dt > 0.01 / bath.gamma * (1.0 + 1e-12))
        throw ConfigError("time step exceeds 0.01/gamma");
    if (dt > two_pi / omega / 100.0 * (1.0 + 1e-12))
        throw ConfigError("time step does not resolve the radial period (dt > T_rad/100)");
    ou_ = detail::OrnsteinUhlenbeck(bath.gamma, bath.temperature, mass, dt);
}

PhasePoint thermal_contact_step(PhasePoint p, const BathConfig& bath, double mass, double dt,
                                double omega, RngStream& rng)
{
    ThermalContact(bath, mass, dt, omega).kick(p, rng);
    return p;
}

void thermalize(Ensemble& ensemble, const TrapGeometry& geom, const BathConfig& bath, double dt)
{
    bath.validate();
    const auto steps = step_count(bath.duration, dt);
    const double h = bath.duration / static_cast<double>(steps);
    const double omega_probe = radial_frequency(geom, mean_axial_position(ensemble));
    const ThermalContact contact(bath, geom.ion_mass, h, omega_probe);

    const auto n = static_cast<std::ptrdiff_t>(ensemble.size());
    SQOTTO_PARALLEL_FOR
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (ensemble.flags[i] != trajectory_ok)
            continue;
        PhasePoint& p = ensemble.points[i];
        RngStream& rng = ensemble.streams[i];
        const double omega = radial_frequency(geom, p.z);
        for (long long s = 0; s < steps; ++s)
            contact.step(p, omega, rng);
    }
}

double ideal_squeezing(double fraction)
{
    if (!(std::abs(fraction) < 1.0))
        throw std::domain_error("|delta_omega| must stay below omega");
    return std::log((1.0 + fraction) / (1.0 - fraction));
}

double ideal_delta_omega_fraction(double r)
{
    return std::tanh(0.5 * r);
}

void squeeze_protocol(Ensemble& ensemble, const TrapGeometry& geom, double z_anchor,
                      double delta_omega, int steps_per_quarter)
{
    if (steps_per_quarter < 25)
        throw ConfigError("squeeze segments need >= 25 steps per quarter period");
    const double omega = radial_frequency(geom, z_anchor);
    const double raised = omega + delta_omega;
    const double lowered = omega - delta_omega;
    if (!(raised > 0.0 && lowered > 0.0))
        throw std::domain_error("squeeze drives the radial frequency non-positive");

    const double h_raised = 0.25 * two_pi / raised / steps_per_quarter;
    const double h_lowered = 0.25 * two_pi / lowered / steps_per_quarter;
    const double mass = geom.ion_mass;

    const auto n = static_cast<std::ptrdiff_t>(ensemble.size());
    SQOTTO_PARALLEL_FOR
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (ensemble.flags[i] != trajectory_ok)
            continue;
        PhasePoint& p = ensemble.points[i];
        const double local = radial_frequency(geom, p.z);
        for (int s = 0; s < steps_per_quarter; ++s)
            detail::radial_leapfrog(p, local + delta_omega, mass, h_raised);
        for (int s = 0; s < steps_per_quarter; ++s)
            detail::radial_leapfrog(p, local - delta_omega, mass, h_lowered);
    }
}

SqueezeEstimate estimate_squeezing(std::span<const PhasePoint> points, double omega_ref,
                                   double mass)
{
    SqueezeEstimate out;
    if (points.size() < 100) {
        out.status = EstimateStatus::too_few_samples;
        return out;
    }
    const double scale = std::sqrt(mass * omega_ref);
    const double n = static_cast<double>(points.size());
    double mu = 0.0;
    double mv = 0.0;
    for (const auto& p : points) {
        mu += p.x * scale;
        mv += p.px / scale;
    }
    mu /= n;
    mv /= n;
    double suu = 0.0;
    double svv = 0.0;
    double suv = 0.0;
    for (const auto& p : points) {
        const double du = p.x * scale - mu;
        const double dv = p.px / scale - mv;
        suu += du * du;
        svv += dv * dv;
        suv += du * dv;
    }
    suu /= n - 1.0;
    svv /= n - 1.0;
    suv /= n - 1.0;

    const double mean = 0.5 * (suu + svv);
    const double spread = std::hypot(0.5 * (suu - svv), suv);
    out.variance_major = mean + spread;
    out.variance_minor = mean - spread;
    out.major_axis_angle = 0.5 * std::atan2(2.0 * suv, suu - svv);
    if (!(out.variance_minor > 0.0) || !std::isfinite(out.variance_major)) {
        out.status = EstimateStatus::degenerate;
        return out;
    }
    out.r = 0.25 * std::log(out.variance_major / out.variance_minor);
    return out;
}

SqueezeEstimate estimate_squeezing(const Ensemble& ensemble, double omega_ref, double mass)
{
    std::vector<PhasePoint> kept;
    kept.reserve(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        if (ensemble.flags[i] == trajectory_ok)
            kept.push_back(ensemble.points[i]);
    return estimate_squeezing(kept, omega_ref, mass);
}

bool CalibrationTable::monotone() const noexcept
{
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].r > rows[i - 1].r))
            return false;
    return true;
}

double CalibrationTable::fraction_for(double r) const
{
    if (rows.empty())
        throw InfeasibleError("empty squeeze calibration table");
    if (r <= 0.0)
        return 0.0;
    if (!monotone())
        throw NumericalError("squeeze calibration is not monotone");
    if (r < rows.front().r) {
        // below the first measured point: interpolate from the origin
        return rows.front().fraction * r / rows.front().r;
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (r <= rows[i].r) {
            const auto& lo = rows[i - 1];
            const auto& hi = rows[i];
            const double s = (r - lo.r) / (hi.r - lo.r);
            return lo.fraction + s * (hi.fraction - lo.fraction);
        }
    }
    throw InfeasibleError("target squeezing beyond the calibrated range");
}

CalibrationTable calibrate_squeeze(const TrapGeometry& geom, const CalibrationSettings& settings)
{
    geom.validate();
    if (settings.delta_omega_fractions.empty())
        throw ConfigError("calibration grid is empty");
    if (settings.ensemble_size < 100)
        throw ConfigError("calibration needs at least 100 trajectories");
    if (settings.steps_per_period < 100)
        throw ConfigError("need at least 100 steps per radial period");

    std::vector<double> grid = settings.delta_omega_fractions;
    std::sort(grid.begin(), grid.end());

    const double omega = radial_frequency(geom, settings.z_anchor);
    const double dt = two_pi / omega / settings.steps_per_period;
    const BathConfig bath =
        BathConfig::hot(settings.temperature, settings.gamma, settings.gamma_t / settings.gamma);

    Ensemble base = Ensemble::thermal(geom, settings.ensemble_size, settings.temperature,
                                      settings.seed, kCalibrationDomain, settings.z_anchor);
    thermalize(base, geom, bath, dt);

    const auto potential_mean = [&](const Ensemble& e) {
        double sum = 0.0;
        for (const auto& p : e.points)
            sum += 0.5 * geom.ion_mass * omega * omega * p.x * p.x;
        return sum / static_cast<double>(e.size());
    };

    CalibrationTable table;
    table.ensemble_size = settings.ensemble_size;
    const int steps_per_quarter = std::max(25, settings.steps_per_period / 4);
    const double before_energy = mean_radial_energy(base, geom).mean;
    const double before_potential = potential_mean(base);
    for (double fraction : grid) {
        Ensemble squeezed = base;
        squeeze_protocol(squeezed, geom, settings.z_anchor, fraction * omega, steps_per_quarter);
        const SqueezeEstimate est = estimate_squeezing(squeezed, omega, geom.ion_mass);
        if (!est.ok())
            throw NumericalError("squeeze calibration produced a degenerate covariance");

        CalibrationRow row;
        row.fraction = fraction;
        row.delta_omega = fraction * omega;
        row.omega_ref = omega;
        row.r = est.r;
        // asymptotic sampling spread of r for a near-isotropic Gaussian
        row.r_error = 0.5 / std::sqrt(static_cast<double>(squeezed.size()));
        row.r_ideal = ideal_squeezing(fraction);
        row.energy_before = before_energy;
        row.energy_after = mean_radial_energy(squeezed, geom).mean;
        row.potential_before = before_potential;
        row.potential_after = potential_mean(squeezed);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace sqotto
