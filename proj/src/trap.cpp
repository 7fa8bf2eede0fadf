// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/trap.hpp"

#include <cmath>
#include <stdexcept>

namespace sqotto {

namespace {

double taper_scale(const TrapGeometry& geom, double z)
{
    const double electrode = geom.r0 + z * std::tan(geom.theta);
    if (!(electrode > 0.0))
        throw std::domain_error("axial position beyond the funnel apex");
    return geom.r0 / electrode;
}

}  // namespace

void TrapGeometry::validate() const
{
    if (!(omega_ax > 0.0 && omega_rad0 > omega_ax))
        throw std::domain_error("trap requires omega_rad0 > omega_ax > 0");
    if (!(theta > 0.0 && theta < 0.5 * pi))
        throw std::domain_error("taper angle must lie in (0, pi/2)");
    if (!(r0 > 0.0))
        throw std::domain_error("r0 must be positive");
    if (!(ion_mass > 0.0))
        throw std::domain_error("ion mass must be positive");
    if (!(a_max > 0.0 && a_max < 1e-3))
        throw std::domain_error("a_max must lie in (0, 1 mm)");
    if (!(a_max * std::tan(theta) < r0))
        throw std::domain_error("a_max reaches the funnel apex");
}

double radial_frequency(const TrapGeometry& geom, double z, double modulation)
{
    const double s = taper_scale(geom, z);
    return geom.omega_rad0 * s * s + modulation;
}

TrapForce force(const TrapGeometry& geom, const PhasePoint& p, double modulation)
{
    const double s = taper_scale(geom, p.z);
    const double omega = geom.omega_rad0 * s * s + modulation;
    // d omega / dz = -2 omega_rad0 s^3 tan(theta) / r0
    const double domega_dz = -2.0 * geom.omega_rad0 * s * s * s * std::tan(geom.theta) / geom.r0;
    const double m = geom.ion_mass;
    TrapForce f;
    f.fx = -m * omega * omega * p.x;
    f.fz = -m * geom.omega_ax * geom.omega_ax * p.z - m * omega * domega_dz * p.x * p.x;
    return f;
}

double potential_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation)
{
    const double omega = radial_frequency(geom, p.z, modulation);
    const double m = geom.ion_mass;
    return 0.5 * m * (geom.omega_ax * geom.omega_ax * p.z * p.z + omega * omega * p.x * p.x);
}

double total_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation)
{
    return potential_energy(geom, p, modulation) + (p.pz * p.pz + p.px * p.px) / (2.0 * geom.ion_mass);
}

double radial_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation)
{
    const double omega = radial_frequency(geom, p.z, modulation);
    const double m = geom.ion_mass;
    return p.px * p.px / (2.0 * m) + 0.5 * m * omega * omega * p.x * p.x;
}

double axial_energy(const TrapGeometry& geom, const PhasePoint& p)
{
    const double m = geom.ion_mass;
    return p.pz * p.pz / (2.0 * m) + 0.5 * m * geom.omega_ax * geom.omega_ax * p.z * p.z;
}

double axial_amplitude_for_ratio(const TrapGeometry& geom, double ratio)
{
    if (!(ratio >= 1.0))
        throw std::domain_error("frequency ratio must be >= 1");
    // ((r0 + A t) / (r0 - A t))^2 = ratio
    const double root = std::sqrt(ratio);
    return geom.r0 * (root - 1.0) / ((root + 1.0) * std::tan(geom.theta));
}

double max_frequency_ratio(const TrapGeometry& geom)
{
    return radial_frequency(geom, -geom.a_max) / radial_frequency(geom, geom.a_max);
}

}  // namespace sqotto
