// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Tapered linear Paul trap in the pseudopotential approximation.
//
// The radial electrodes open linearly along the axis, r_el(z) = r0 + z tan(theta),
// and the radial secular frequency scales as 1/r_el^2:
//
//   omega_rad(z) = omega_rad0 * (r0 / (r0 + z tan(theta)))^2 + modulation.
//
// One radial direction (x) and the axis (z) are modelled.

#include "sqotto/constants.hpp"

namespace sqotto {

struct TrapGeometry {
    double omega_ax = two_pi * 36.0e3;    ///< axial frequency, rad/s
    double omega_rad0 = two_pi * 3.0e6;   ///< radial frequency at z = 0, rad/s
    double theta = 20.0 * pi / 180.0;     ///< taper angle, rad
    double r0 = 1.5e-3;                   ///< electrode distance at z = 0, m
    double ion_mass = calcium40_mass;     ///< kg
    double a_max = 0.35e-3;               ///< largest allowed axial excursion, m

    /// Throws std::domain_error if the invariants are violated.
    void validate() const;
};

/// Axial and radial phase-space coordinates of one ion (SI units).
struct PhasePoint {
    double z = 0.0;
    double pz = 0.0;
    double x = 0.0;
    double px = 0.0;
};

struct TrapForce {
    double fz = 0.0;
    double fx = 0.0;
};

/// Radial frequency at axial position z plus an additive modulation offset.
/// Throws std::domain_error past the funnel apex (r0 + z tan(theta) <= 0).
double radial_frequency(const TrapGeometry& geom, double z, double modulation = 0.0);

/// Conservative force, the exact negative gradient of potential_energy.
TrapForce force(const TrapGeometry& geom, const PhasePoint& p, double modulation = 0.0);

double potential_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation = 0.0);
double total_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation = 0.0);

/// Working-fluid energy: px^2/2m + m omega_rad(z)^2 x^2 / 2.
double radial_energy(const TrapGeometry& geom, const PhasePoint& p, double modulation = 0.0);

/// Energy of the axial oscillation, where the engine stores its work.
double axial_energy(const TrapGeometry& geom, const PhasePoint& p);

/// Axial amplitude A for which omega_rad(-A) / omega_rad(A) equals `ratio`.
double axial_amplitude_for_ratio(const TrapGeometry& geom, double ratio);

/// Largest omega_rad(-A)/omega_rad(A) reachable within a_max.
double max_frequency_ratio(const TrapGeometry& geom);

}  // namespace sqotto
