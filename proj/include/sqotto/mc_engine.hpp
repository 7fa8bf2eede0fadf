// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Ensemble Monte-Carlo Otto cycle of a single ion in the tapered trap.
//
// Compression and expansion are realised by letting the ion travel half an
// axial period through the taper; the radial frequency follows omega_rad(z(t)).
// Bath contacts and the squeeze act at the axial turning points with the
// axial motion frozen. Work is the radial-energy change during transport
// strokes (sign flipped: extracted work is positive); heat is the
// radial-energy change during bath and squeeze strokes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqotto/ensemble.hpp"
#include "sqotto/reservoirs.hpp"
#include "sqotto/stats.hpp"
#include "sqotto/trap.hpp"

namespace sqotto {

enum class StrokeKind {
    compression,     ///< axial transport towards stronger confinement
    expansion,       ///< axial transport towards weaker confinement
    bath_contact,    ///< thermal bath, axial motion frozen
    squeeze,         ///< three-segment squeeze, axial motion frozen
    frequency_ramp,  ///< direct radial-frequency ramp at fixed z (testing)
};

std::string_view to_string(StrokeKind kind);

struct Stroke {
    StrokeKind kind = StrokeKind::compression;
    double duration = 0.0;  ///< s; ignored for squeeze strokes
    BathConfig bath{};      ///< bath_contact and squeeze (delta_omega)
    /// frequency_ramp only: offset added to omega_rad(z) at stroke time t.
    std::function<double(double)> modulation;
    std::string end_corner;

    static Stroke transport(StrokeKind kind, double duration, std::string end_corner);
    static Stroke contact(const BathConfig& bath, std::string end_corner);
    static Stroke squeezing(double delta_omega, std::string end_corner);
    static Stroke ramp(std::function<double(double)> modulation, double duration,
                       std::string end_corner);

    /// Heat-in strokes: hot bath contact and the squeeze.
    bool absorbs_heat() const noexcept;
    bool is_work_stroke() const noexcept;
};

struct CycleSchedule {
    std::string start_corner = "A";
    std::vector<Stroke> strokes;

    /// Closure and ordering checks (ConfigError):
    /// - total transport time is a whole number of axial periods and
    ///   compression/expansion time balance, so the axial state returns;
    /// - every squeeze directly follows a hot bath contact;
    /// - the last stroke ends at start_corner.
    void validate(const TrapGeometry& geom) const;

    /// Sum of stroke durations; squeeze strokes count zero (their length
    /// follows from the trap frequency at run time).
    double duration() const;
};

/// Parameters of the standard five-stroke squeezed Otto cycle
/// A -compression-> B -hot bath-> B' -squeeze-> C -expansion-> D -cold bath-> A.
struct OttoSettings {
    double frequency_ratio = 1.0;  ///< omega2 / omega1
    double t_cold = 1.0e-3;        ///< K
    double t_hot = 1.0e-3 / 0.88;  ///< K
    double gamma = 2.0e6;          ///< 1/s, both baths
    double gamma_t = 10.0;         ///< contact length in units of 1/gamma
    double delta_omega_fraction = 0.0;  ///< squeeze depth relative to omega2
};

struct OttoCycle {
    CycleSchedule schedule;
    double amplitude = 0.0;  ///< axial turning point, m
    double omega1 = 0.0;
    double omega2 = 0.0;
    double delta_omega = 0.0;
};

/// Builds the standard schedule. Throws InfeasibleError when the frequency
/// ratio needs an axial excursion beyond a_max.
OttoCycle make_otto_cycle(const TrapGeometry& geom, const OttoSettings& settings);

/// dt = T_rad / steps_per_period at the fastest radial frequency in reach (z = -a_max).
double default_time_step(const TrapGeometry& geom, int steps_per_period = 200);

/// Decimated ensemble-mean time series.
class TraceRecorder {
public:
    struct Row {
        double t = 0.0;
        double mean_z = 0.0;
        double omega_rad = 0.0;  ///< radial frequency at the mean axial position
        double radial_energy = 0.0;
        double axial_energy = 0.0;
        std::string stroke;
    };

    explicit TraceRecorder(long long decimation);

    long long decimation() const noexcept { return decimation_; }
    long long total_steps() const noexcept { return total_steps_; }
    double elapsed() const noexcept { return elapsed_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    void add_row(Row row) { rows_.push_back(std::move(row)); }
    void advance(long long steps, double time) noexcept
    {
        total_steps_ += steps;
        elapsed_ += time;
    }

private:
    long long decimation_;
    long long total_steps_ = 0;
    double elapsed_ = 0.0;
    std::vector<Row> rows_;
};

/// Advances every trajectory through one stroke.
///
/// `dt` is the largest allowed step; it is shrunk so the stroke duration is a
/// whole number of steps. Throws ConfigError when dt exceeds T/100 of the
/// fastest radial frequency the stroke visits. Trajectories that leave
/// |z| <= a_max are flagged, not clamped.
void integrate_stroke(Ensemble& ensemble, const TrapGeometry& geom, const Stroke& stroke,
                      double dt, TraceRecorder* trace = nullptr);

/// Equipartition temperature <E_rad>/k_B of the unflagged trajectories, K.
MeanEstimate estimate_temperature(const Ensemble& ensemble, const TrapGeometry& geom);

struct CornerStats {
    std::string label;
    MeanEstimate radial_energy;
    double mean_z = 0.0;
    double omega_rad = 0.0;
    MeanEstimate temperature;
    SqueezeEstimate squeezing;
};

struct StrokeLedger {
    StrokeKind kind = StrokeKind::compression;
    std::string from;
    std::string to;
    MeanEstimate delta_energy;  ///< mean radial-energy change, J
};

struct CycleRecord {
    std::vector<CornerStats> corners;  ///< start corner, then one per stroke
    std::vector<StrokeLedger> strokes;
    double work_net = 0.0;
    double heat_in = 0.0;
    double heat_out = 0.0;
    double cycle_time = 0.0;
    double power = 0.0;
    std::optional<double> efficiency;
    double efficiency_error = 0.0;
    MeanEstimate closure;  ///< per-trajectory sum of all stroke changes
    RatioAccumulator work_over_heat;  ///< per-trajectory (work, heat_in) pairs
    double flagged_fraction = 0.0;
    bool feasible = true;

    const CornerStats* corner(std::string_view label) const;

    /// Shoelace area of the corner polygon in the (omega_rad, <E_rad>) plane.
    double enclosed_area() const;
};

/// Runs the schedule once, snapshotting every corner and filling the ledger.
/// More than 5% flagged trajectories marks the record infeasible.
CycleRecord run_cycle(Ensemble& ensemble, const TrapGeometry& geom, const CycleSchedule& schedule,
                      double dt, TraceRecorder* trace = nullptr);

struct SweepSettings {
    TrapGeometry geom{};
    double t_cold = 1.0e-3;           ///< K
    double temperature_ratio = 0.88;  ///< beta2 / beta1
    double gamma = 2.0e6;
    double gamma_t = 10.0;
    std::vector<double> r_targets;
    std::size_t ensemble_size = 1000;
    int repetitions = 20;
    std::uint64_t seed = 1;
    int steps_per_period = 200;
    /// Fixed omega2/omega1 for every point; unset selects the max-power ratio.
    std::optional<double> frequency_ratio;

    double t_hot() const noexcept { return t_cold / temperature_ratio; }
};

struct SweepRow {
    double r_target = 0.0;
    bool feasible = true;
    std::string note;
    double fraction = 0.0;  ///< delta_omega / omega2 from the calibration
    double delta_omega = 0.0;
    double ratio_target = 0.0;
    double ratio_realized = 0.0;
    double amplitude = 0.0;
    double eta_sim = 0.0;
    double eta_sim_error = 0.0;
    double r_measured = 0.0;    ///< covariance estimate at corner C, mean over cycles
    double r_calibrated = 0.0;  ///< calibration-table r at the chosen delta_omega
    double work_per_cycle = 0.0;
    double heat_in_per_cycle = 0.0;
    double closure_sigma = 0.0;  ///< worst |closure|/stderr over cycles
    double enclosed_area = 0.0;
    int cycles = 0;
    // closed-form references, evaluated at emit time
    double eta_analytic = 0.0;
    double eta_carnot = 0.0;
    double eta_generalized_carnot = 0.0;
    double eta_curzon_ahlborn = 0.0;
};

/// Figure-style sweep over target squeezing values. Each point starts from a
/// fresh ensemble (stream domain = point index), equilibrates with a cold
/// contact, then runs `repetitions` consecutive cycles.
std::vector<SweepRow> run_sweep(const SweepSettings& settings, const CalibrationTable& calibration);

}  // namespace sqotto
