// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Heat reservoirs acting on the radial mode.
//
// Thermal baths are underdamped Langevin thermostats (linear friction plus
// white-noise recoil obeying fluctuation-dissipation). The nonthermal part of
// the hot reservoir is a parametric squeeze: the radial frequency is raised
// by delta_omega for a quarter period, lowered by delta_omega for a quarter
// period, then restored.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sqotto/ensemble.hpp"
#include "sqotto/integrator.hpp"
#include "sqotto/trap.hpp"

namespace sqotto {

enum class BathKind { cold_thermal, hot_thermal, squeeze };

struct BathConfig {
    BathKind kind = BathKind::cold_thermal;
    double temperature = 0.0;  ///< K, thermal kinds
    double gamma = 0.0;        ///< friction rate 1/s, thermal kinds
    double duration = 0.0;     ///< contact time s, thermal kinds
    double delta_omega = 0.0;  ///< rad/s, squeeze kind

    bool is_thermal() const noexcept { return kind != BathKind::squeeze; }

    /// Throws ConfigError on non-positive temperature, rate or duration.
    void validate() const;

    /// True when gamma * duration >= 5; shorter contacts leave memory of the
    /// previous state.
    bool relaxes() const noexcept { return gamma * duration >= 5.0; }

    static BathConfig cold(double kelvin, double gamma, double duration);
    static BathConfig hot(double kelvin, double gamma, double duration);
    static BathConfig squeeze(double delta_omega);
};

/// Bath coupling discretised for a given step and trap frequency.
///
/// Construction checks dt <= 0.01/gamma and dt <= T_rad/100 (ConfigError).
class ThermalContact {
public:
    ThermalContact(const BathConfig& bath, double mass, double dt, double omega);

    /// Stochastic momentum update px <- e^{-gamma dt} px + sqrt((1 - e^{-2 gamma dt}) m k_B T) xi.
    void kick(PhasePoint& p, RngStream& rng) const noexcept { ou_.apply(p.px, rng); }

    /// Full BAOAB step of the radial mode at frequency `omega`.
    void step(PhasePoint& p, double omega, RngStream& rng) const noexcept
    {
        detail::radial_baoab(p, omega, mass_, dt_, ou_, rng);
    }

    double dt() const noexcept { return dt_; }

private:
    double mass_;
    double dt_;
    detail::OrnsteinUhlenbeck ou_;
};

/// Applies one stochastic momentum update to a single point.
PhasePoint thermal_contact_step(PhasePoint p, const BathConfig& bath, double mass, double dt,
                                double omega, RngStream& rng);

/// Runs the full bath contact (bath.duration) with the axial motion frozen.
/// `dt` is the largest allowed step; the step is shrunk to divide the
/// duration evenly.
void thermalize(Ensemble& ensemble, const TrapGeometry& geom, const BathConfig& bath, double dt);

/// Squeeze map r = ln((omega + d) / (omega - d)) of the ideal protocol.
double ideal_squeezing(double delta_omega_fraction);

/// Inverse of ideal_squeezing: d/omega = tanh(r/2).
double ideal_delta_omega_fraction(double r);

/// Three-segment squeeze with the axial motion frozen. The segment
/// durations are quarter periods of omega(z_anchor) +/- delta_omega; each
/// trajectory feels radial_frequency(z_i) +/- delta_omega.
///
/// Throws std::domain_error if omega(z_anchor) - |delta_omega| <= 0.
void squeeze_protocol(Ensemble& ensemble, const TrapGeometry& geom, double z_anchor,
                      double delta_omega, int steps_per_quarter = 50);

enum class EstimateStatus { ok, too_few_samples, degenerate };

struct SqueezeEstimate {
    double r = 0.0;
    double variance_major = 0.0;  ///< dimensionless quadrature variances
    double variance_minor = 0.0;
    double major_axis_angle = 0.0;  ///< rad, in the (u, v) plane
    EstimateStatus status = EstimateStatus::ok;

    bool ok() const noexcept { return status == EstimateStatus::ok; }
};

/// Squeezing parameter from the radial quadrature covariance,
/// r = ln(lambda_max / lambda_min) / 4 with u = x sqrt(m omega), v = px / sqrt(m omega).
SqueezeEstimate estimate_squeezing(std::span<const PhasePoint> points, double omega_ref,
                                   double mass);

/// As above over the unflagged trajectories of an ensemble.
SqueezeEstimate estimate_squeezing(const Ensemble& ensemble, double omega_ref, double mass);

struct CalibrationSettings {
    double temperature = 1.0e-3 / 0.88;  ///< K, hot-bath temperature
    double gamma = 2.0e6;                ///< 1/s
    double gamma_t = 10.0;               ///< thermalisation length in units of 1/gamma
    std::size_t ensemble_size = 2000;
    std::uint64_t seed = 1;
    double z_anchor = 0.0;
    int steps_per_period = 200;
    std::vector<double> delta_omega_fractions;  ///< delta_omega / omega(z_anchor)
};

struct CalibrationRow {
    double fraction = 0.0;  ///< delta_omega / omega_ref
    double delta_omega = 0.0;
    double omega_ref = 0.0;
    double r = 0.0;  ///< estimated from the ensemble covariance
    double r_error = 0.0;
    double r_ideal = 0.0;
    double energy_before = 0.0;
    double energy_after = 0.0;
    double potential_before = 0.0;
    double potential_after = 0.0;

    double delta_energy() const noexcept { return energy_after - energy_before; }
    double delta_potential() const noexcept { return potential_after - potential_before; }
};

struct CalibrationTable {
    std::vector<CalibrationRow> rows;
    std::size_t ensemble_size = 0;

    bool monotone() const noexcept;

    /// delta_omega/omega giving squeezing `r`, by linear interpolation of the
    /// measured table (rows sorted by fraction). Throws InfeasibleError
    /// outside the calibrated range.
    double fraction_for(double r) const;
};

/// Thermalise once at the hot temperature, then for every grid entry apply the
/// squeeze to a copy of that ensemble (common random numbers) and record r and
/// the energy changes.
CalibrationTable calibrate_squeeze(const TrapGeometry& geom, const CalibrationSettings& settings);

}  // namespace sqotto
