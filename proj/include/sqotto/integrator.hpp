// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Step kernels shared by the bath, squeeze and transport strokes.
//
// All schemes are second-order partitioned Runge-Kutta (kick-drift-kick
// leapfrog) splittings; the stochastic one inserts an exact
// Ornstein-Uhlenbeck momentum update in the middle (BAOAB).

#include <cmath>
#include <cstddef>

#include "sqotto/rng.hpp"
#include "sqotto/trap.hpp"

#if defined(_OPENMP)
#define SQOTTO_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define SQOTTO_PARALLEL_FOR
#endif

namespace sqotto::detail {

/// Exact OU update of a momentum component: p <- c p + sigma xi.
struct OrnsteinUhlenbeck {
    double decay = 1.0;
    double sigma = 0.0;

    OrnsteinUhlenbeck() = default;
    OrnsteinUhlenbeck(double gamma, double kelvin, double mass, double dt)
        : decay(std::exp(-gamma * dt)),
          sigma(std::sqrt((1.0 - std::exp(-2.0 * gamma * dt)) * mass * k_boltzmann * kelvin))
    {
    }

    void apply(double& p, RngStream& rng) const noexcept { p = decay * p + sigma * rng.normal(); }
};

/// Leapfrog step of the radial oscillator at fixed frequency.
inline void radial_leapfrog(PhasePoint& p, double omega, double mass, double dt) noexcept
{
    const double k = mass * omega * omega;
    p.px -= 0.5 * dt * k * p.x;
    p.x += dt * p.px / mass;
    p.px -= 0.5 * dt * k * p.x;
}

/// BAOAB step of the radial oscillator in contact with a Langevin bath.
inline void radial_baoab(PhasePoint& p, double omega, double mass, double dt,
                         const OrnsteinUhlenbeck& bath, RngStream& rng) noexcept
{
    const double k = mass * omega * omega;
    p.px -= 0.5 * dt * k * p.x;
    p.x += 0.5 * dt * p.px / mass;
    bath.apply(p.px, rng);
    p.x += 0.5 * dt * p.px / mass;
    p.px -= 0.5 * dt * k * p.x;
}

/// Trap force with the taper constants precomputed; same expressions as
/// sqotto::force().
class TaperKernel {
public:
    explicit TaperKernel(const TrapGeometry& geom)
        : omega_rad0_(geom.omega_rad0),
          slope_(std::tan(geom.theta) / geom.r0),
          axial_k_(geom.ion_mass * geom.omega_ax * geom.omega_ax),
          mass_(geom.ion_mass)
    {
    }

    /// r_el(z) / r0; non-positive past the funnel apex.
    double scale_inverse(double z) const noexcept { return 1.0 + z * slope_; }

    double omega(double z, double modulation = 0.0) const noexcept
    {
        const double s = 1.0 / scale_inverse(z);
        return omega_rad0_ * s * s + modulation;
    }

    /// Returns false past the funnel apex.
    bool force(double z, double x, double& fz, double& fx) const noexcept
    {
        const double inv = scale_inverse(z);
        if (!(inv > 0.0))
            return false;
        const double s = 1.0 / inv;
        const double omega = omega_rad0_ * s * s;
        const double domega_dz = -2.0 * omega_rad0_ * s * s * s * slope_;
        fx = -mass_ * omega * omega * x;
        fz = -axial_k_ * z - mass_ * omega * domega_dz * x * x;
        return true;
    }

    double mass() const noexcept { return mass_; }

private:
    double omega_rad0_;
    double slope_;
    double axial_k_;
    double mass_;
};

}  // namespace sqotto::detail
