// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "sqotto/errors.hpp"
#include "sqotto/integrator.hpp"
#include "sqotto/thermo.hpp"

namespace sqotto {

namespace {

constexpr std::uint64_t kSweepDomain = 0x5eed0000;
constexpr double kMaxFlaggedFraction = 0.05;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long long steps_for(double duration, double max_dt)
{
    return std::max<long long>(1, static_cast<long long>(std::ceil(duration / max_dt - 1e-9)));
}

void check_resolution(double h, double omega_fastest, const char* what)
{
    if (h > two_pi / omega_fastest / 100.0 * (1.0 + 1e-12))
        throw ConfigError(std::string("time step does not resolve the radial period in ") + what);
}

// Sample slots of a stroke covering global steps (offset, offset + steps].
struct SamplePlan {
    long long decimation = 0;
    long long offset = 0;
    long long count = 0;

    SamplePlan(const TraceRecorder* trace, long long steps)
    {
        if (!trace)
            return;
        decimation = trace->decimation();
        offset = trace->total_steps();
        count = (offset + steps) / decimation - offset / decimation;
    }

    // slot index of local step s (1-based), or -1
    long long slot(long long s) const noexcept
    {
        if (count == 0 || (offset + s) % decimation != 0)
            return -1;
        return (offset + s) / decimation - offset / decimation - 1;
    }

    // local step of slot k
    long long step_of(long long k) const noexcept
    {
        return (offset / decimation + k + 1) * decimation - offset;
    }
};

struct SampleBuffer {
    std::size_t trajectories = 0;
    std::vector<double> z;
    std::vector<double> radial;
    std::vector<double> axial;

    SampleBuffer(long long slots, std::size_t n)
        : trajectories(n),
          z(static_cast<std::size_t>(slots) * n, kNaN),
          radial(static_cast<std::size_t>(slots) * n, kNaN),
          axial(static_cast<std::size_t>(slots) * n, kNaN)
    {
    }

    void put(long long slot, std::size_t i, const TrapGeometry& geom, const PhasePoint& p,
             double omega) noexcept
    {
        const std::size_t k = static_cast<std::size_t>(slot) * trajectories + i;
        z[k] = p.z;
        const double m = geom.ion_mass;
        radial[k] = p.px * p.px / (2.0 * m) + 0.5 * m * omega * omega * p.x * p.x;
        axial[k] = axial_energy(geom, p);
    }
};

}  // namespace

std::string_view to_string(StrokeKind kind)
{
    switch (kind) {
    case StrokeKind::compression:
        return "compression";
    case StrokeKind::expansion:
        return "expansion";
    case StrokeKind::bath_contact:
        return "bath_contact";
    case StrokeKind::squeeze:
        return "squeeze";
    case StrokeKind::frequency_ramp:
        return "frequency_ramp";
    }
    return "unknown";
}

Stroke Stroke::transport(StrokeKind kind, double duration, std::string end_corner)
{
    if (kind != StrokeKind::compression && kind != StrokeKind::expansion)
        throw ConfigError("transport strokes are compression or expansion");
    Stroke s;
    s.kind = kind;
    s.duration = duration;
    s.end_corner = std::move(end_corner);
    return s;
}

Stroke Stroke::contact(const BathConfig& bath, std::string end_corner)
{
    Stroke s;
    s.kind = StrokeKind::bath_contact;
    s.bath = bath;
    s.duration = bath.duration;
    s.end_corner = std::move(end_corner);
    return s;
}

Stroke Stroke::squeezing(double delta_omega, std::string end_corner)
{
    Stroke s;
    s.kind = StrokeKind::squeeze;
    s.bath = BathConfig::squeeze(delta_omega);
    s.end_corner = std::move(end_corner);
    return s;
}

Stroke Stroke::ramp(std::function<double(double)> modulation, double duration,
                    std::string end_corner)
{
    Stroke s;
    s.kind = StrokeKind::frequency_ramp;
    s.modulation = std::move(modulation);
    s.duration = duration;
    s.end_corner = std::move(end_corner);
    return s;
}

bool Stroke::absorbs_heat() const noexcept
{
    return kind == StrokeKind::squeeze ||
           (kind == StrokeKind::bath_contact && bath.kind == BathKind::hot_thermal);
}

bool Stroke::is_work_stroke() const noexcept
{
    return kind == StrokeKind::compression || kind == StrokeKind::expansion ||
           kind == StrokeKind::frequency_ramp;
}

void CycleSchedule::validate(const TrapGeometry& geom) const
{
    if (strokes.empty())
        throw ConfigError("empty cycle schedule");
    if (strokes.back().end_corner != start_corner)
        throw ConfigError("schedule does not return to its start corner");

    double compression = 0.0;
    double expansion = 0.0;
    double ramp_offset = 0.0;
    for (std::size_t k = 0; k < strokes.size(); ++k) {
        const Stroke& s = strokes[k];
        switch (s.kind) {
        case StrokeKind::compression:
        case StrokeKind::expansion:
            if (!(s.duration > 0.0))
                throw ConfigError("transport stroke needs a positive duration");
            (s.kind == StrokeKind::compression ? compression : expansion) += s.duration;
            break;
        case StrokeKind::bath_contact:
            if (!s.bath.is_thermal())
                throw ConfigError("bath contact stroke needs a thermal bath");
            s.bath.validate();
            break;
        case StrokeKind::squeeze:
            s.bath.validate();
            if (k == 0 || strokes[k - 1].kind != StrokeKind::bath_contact ||
                strokes[k - 1].bath.kind != BathKind::hot_thermal)
                throw ConfigError("squeeze must directly follow the hot bath contact");
            break;
        case StrokeKind::frequency_ramp:
            if (!s.modulation || !(s.duration > 0.0))
                throw ConfigError("frequency ramp needs a modulation and a positive duration");
            ramp_offset += s.modulation(s.duration) - s.modulation(0.0);
            break;
        }
    }
    const double axial_period = two_pi / geom.omega_ax;
    if (std::abs(compression - expansion) > 1e-9 * axial_period)
        throw ConfigError("compression and expansion times do not balance");
    const double periods = (compression + expansion) / axial_period;
    if (std::abs(periods - std::round(periods)) > 1e-6)
        throw ConfigError("transport strokes do not close the axial oscillation");
    if (std::abs(ramp_offset) > 1e-9 * geom.omega_rad0)
        throw ConfigError("frequency ramps do not restore the trap frequency");
}

double CycleSchedule::duration() const
{
    double total = 0.0;
    for (const auto& s : strokes)
        total += s.duration;
    return total;
}

OttoCycle make_otto_cycle(const TrapGeometry& geom, const OttoSettings& settings)
{
    geom.validate();
    if (!(settings.frequency_ratio >= 1.0))
        throw ConfigError("frequency ratio must be >= 1");
    if (!(settings.delta_omega_fraction >= 0.0 && settings.delta_omega_fraction < 1.0))
        throw ConfigError("squeeze fraction must lie in [0, 1)");

    OttoCycle cycle;
    cycle.amplitude = axial_amplitude_for_ratio(geom, settings.frequency_ratio);
    if (cycle.amplitude > geom.a_max)
        throw InfeasibleError("frequency ratio needs an axial excursion beyond a_max");
    cycle.omega1 = radial_frequency(geom, cycle.amplitude);
    cycle.omega2 = radial_frequency(geom, -cycle.amplitude);
    cycle.delta_omega = settings.delta_omega_fraction * cycle.omega2;

    const double half_axial = pi / geom.omega_ax;
    const double contact = settings.gamma_t / settings.gamma;
    auto& strokes = cycle.schedule.strokes;
    strokes.push_back(Stroke::transport(StrokeKind::compression, half_axial, "B"));
    strokes.push_back(Stroke::contact(BathConfig::hot(settings.t_hot, settings.gamma, contact), "B'"));
    strokes.push_back(Stroke::squeezing(cycle.delta_omega, "C"));
    strokes.push_back(Stroke::transport(StrokeKind::expansion, half_axial, "D"));
    strokes.push_back(Stroke::contact(BathConfig::cold(settings.t_cold, settings.gamma, contact), "A"));
    cycle.schedule.validate(geom);
    return cycle;
}

double default_time_step(const TrapGeometry& geom, int steps_per_period)
{
    if (steps_per_period < 100)
        throw ConfigError("need at least 100 steps per radial period");
    return two_pi / radial_frequency(geom, -geom.a_max) / steps_per_period;
}

TraceRecorder::TraceRecorder(long long decimation) : decimation_(decimation)
{
    if (decimation < 1)
        throw ConfigError("trace decimation must be >= 1");
}

namespace {

double integrate_stroke_impl(Ensemble& ensemble, const TrapGeometry& geom, const Stroke& stroke,
                             double dt, TraceRecorder* trace)
{
    if (!(dt > 0.0))
        throw ConfigError("time step must be positive");
    const detail::TaperKernel kernel(geom);
    const double mass = geom.ion_mass;
    const auto n = static_cast<std::ptrdiff_t>(ensemble.size());
    auto& points = ensemble.points;
    auto& flags = ensemble.flags;

    long long steps = 0;
    double elapsed = 0.0;
    // time and modulation offset at local step s, for the trace
    std::function<double(long long)> time_at;
    std::function<double(long long)> offset_at = [](long long) { return 0.0; };
    std::unique_ptr<SampleBuffer> buffer;
    SamplePlan plan(nullptr, 0);

    const auto prepare_trace = [&] {
        plan = SamplePlan(trace, steps);
        if (plan.count > 0)
            buffer = std::make_unique<SampleBuffer>(plan.count, ensemble.size());
    };

    switch (stroke.kind) {
    case StrokeKind::compression:
    case StrokeKind::expansion: {
        if (!(stroke.duration > 0.0))
            throw ConfigError("transport stroke needs a positive duration");
        steps = steps_for(stroke.duration, dt);
        const double h = stroke.duration / static_cast<double>(steps);
        check_resolution(h, radial_frequency(geom, -geom.a_max), "transport stroke");
        elapsed = stroke.duration;
        time_at = [h](long long s) { return h * static_cast<double>(s); };
        prepare_trace();
        const double a_max = geom.a_max;

        SQOTTO_PARALLEL_FOR
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (flags[i] & trajectory_past_apex)
                continue;
            PhasePoint p = points[i];
            double fz = 0.0;
            double fx = 0.0;
            if (!kernel.force(p.z, p.x, fz, fx)) {
                flags[i] |= trajectory_past_apex;
                continue;
            }
            for (long long s = 1; s <= steps; ++s) {
                p.pz += 0.5 * h * fz;
                p.px += 0.5 * h * fx;
                p.z += h * p.pz / mass;
                p.x += h * p.px / mass;
                if (!kernel.force(p.z, p.x, fz, fx)) {
                    flags[i] |= trajectory_past_apex;
                    break;
                }
                p.pz += 0.5 * h * fz;
                p.px += 0.5 * h * fx;
                if (std::abs(p.z) > a_max)
                    flags[i] |= trajectory_left_trap;
                if (buffer) {
                    const long long slot = plan.slot(s);
                    if (slot >= 0)
                        buffer->put(slot, static_cast<std::size_t>(i), geom, p, kernel.omega(p.z));
                }
            }
            points[i] = p;
        }
        break;
    }
    case StrokeKind::bath_contact: {
        stroke.bath.validate();
        if (!stroke.bath.is_thermal())
            throw ConfigError("bath contact stroke needs a thermal bath");
        steps = steps_for(stroke.bath.duration, dt);
        const double h = stroke.bath.duration / static_cast<double>(steps);
        const ThermalContact contact(stroke.bath, mass, h,
                                     radial_frequency(geom, mean_axial_position(ensemble)));
        elapsed = stroke.bath.duration;
        time_at = [h](long long s) { return h * static_cast<double>(s); };
        prepare_trace();

        SQOTTO_PARALLEL_FOR
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (flags[i] & trajectory_past_apex)
                continue;
            PhasePoint p = points[i];
            RngStream& rng = ensemble.streams[i];
            const double omega = kernel.omega(p.z);
            for (long long s = 1; s <= steps; ++s) {
                contact.step(p, omega, rng);
                if (buffer) {
                    const long long slot = plan.slot(s);
                    if (slot >= 0)
                        buffer->put(slot, static_cast<std::size_t>(i), geom, p, omega);
                }
            }
            points[i] = p;
        }
        break;
    }
    case StrokeKind::squeeze: {
        stroke.bath.validate();
        const double delta = stroke.bath.delta_omega;
        const double omega = radial_frequency(geom, mean_axial_position(ensemble));
        if (!(omega - std::abs(delta) > 0.0))
            throw std::domain_error("squeeze drives the radial frequency non-positive");
        const double quarter_up = 0.25 * two_pi / (omega + delta);
        const double quarter_down = 0.25 * two_pi / (omega - delta);
        const long long n_up = std::max<long long>(25, steps_for(quarter_up, dt));
        const long long n_down = std::max<long long>(25, steps_for(quarter_down, dt));
        const double h_up = quarter_up / static_cast<double>(n_up);
        const double h_down = quarter_down / static_cast<double>(n_down);
        steps = n_up + n_down;
        elapsed = quarter_up + quarter_down;
        time_at = [=](long long s) {
            return s <= n_up ? h_up * static_cast<double>(s)
                             : quarter_up + h_down * static_cast<double>(s - n_up);
        };
        offset_at = [=](long long s) { return s <= n_up ? delta : -delta; };
        prepare_trace();

        SQOTTO_PARALLEL_FOR
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (flags[i] & trajectory_past_apex)
                continue;
            PhasePoint p = points[i];
            const double local = kernel.omega(p.z);
            for (long long s = 1; s <= steps; ++s) {
                const bool up = s <= n_up;
                const double w = up ? local + delta : local - delta;
                detail::radial_leapfrog(p, w, mass, up ? h_up : h_down);
                if (buffer) {
                    const long long slot = plan.slot(s);
                    if (slot >= 0)
                        buffer->put(slot, static_cast<std::size_t>(i), geom, p,
                                    s == steps ? local : w);
                }
            }
            points[i] = p;
        }
        break;
    }
    case StrokeKind::frequency_ramp: {
        if (!stroke.modulation || !(stroke.duration > 0.0))
            throw ConfigError("frequency ramp needs a modulation and a positive duration");
        steps = steps_for(stroke.duration, dt);
        const double h = stroke.duration / static_cast<double>(steps);
        std::vector<double> offsets(static_cast<std::size_t>(steps) + 1);
        double fastest = 0.0;
        const double base = radial_frequency(geom, mean_axial_position(ensemble));
        for (long long s = 0; s <= steps; ++s) {
            offsets[s] = stroke.modulation(h * static_cast<double>(s));
            if (!(base + offsets[s] > 0.0))
                throw std::domain_error("frequency ramp drives the radial frequency non-positive");
            fastest = std::max(fastest, base + offsets[s]);
        }
        check_resolution(h, fastest, "frequency ramp");
        elapsed = stroke.duration;
        time_at = [h](long long s) { return h * static_cast<double>(s); };
        offset_at = [&offsets](long long s) { return offsets[s]; };
        prepare_trace();

        SQOTTO_PARALLEL_FOR
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (flags[i] & trajectory_past_apex)
                continue;
            PhasePoint p = points[i];
            const double local = kernel.omega(p.z);
            for (long long s = 1; s <= steps; ++s) {
                const double w0 = local + offsets[s - 1];
                const double w1 = local + offsets[s];
                p.px -= 0.5 * h * mass * w0 * w0 * p.x;
                p.x += h * p.px / mass;
                p.px -= 0.5 * h * mass * w1 * w1 * p.x;
                if (buffer) {
                    const long long slot = plan.slot(s);
                    if (slot >= 0)
                        buffer->put(slot, static_cast<std::size_t>(i), geom, p, w1);
                }
            }
            points[i] = p;
        }
        break;
    }
    }

    if (trace) {
        const double t0 = trace->elapsed();
        for (long long k = 0; k < plan.count; ++k) {
            const long long s = plan.step_of(k);
            double sum_z = 0.0;
            double sum_radial = 0.0;
            double sum_axial = 0.0;
            std::size_t used = 0;
            for (std::size_t i = 0; i < ensemble.size(); ++i) {
                const std::size_t idx = static_cast<std::size_t>(k) * ensemble.size() + i;
                if (ensemble.flags[i] != trajectory_ok || std::isnan(buffer->z[idx]))
                    continue;
                sum_z += buffer->z[idx];
                sum_radial += buffer->radial[idx];
                sum_axial += buffer->axial[idx];
                ++used;
            }
            TraceRecorder::Row row;
            row.t = t0 + time_at(s);
            row.stroke = std::string(to_string(stroke.kind));
            if (used > 0) {
                const double inv = 1.0 / static_cast<double>(used);
                row.mean_z = sum_z * inv;
                const bool restored = stroke.kind == StrokeKind::squeeze && s == steps;
                row.omega_rad = kernel.omega(row.mean_z, restored ? 0.0 : offset_at(s));
                row.radial_energy = sum_radial * inv;
                row.axial_energy = sum_axial * inv;
            } else {
                row.mean_z = row.omega_rad = row.radial_energy = row.axial_energy = kNaN;
            }
            trace->add_row(std::move(row));
        }
        trace->advance(steps, elapsed);
    }
    return elapsed;
}

CornerStats snapshot(const Ensemble& ensemble, const TrapGeometry& geom, const std::string& label)
{
    CornerStats c;
    c.label = label;
    c.radial_energy = mean_radial_energy(ensemble, geom);
    c.mean_z = mean_axial_position(ensemble);
    c.omega_rad = radial_frequency(geom, c.mean_z);
    c.temperature = estimate_temperature(ensemble, geom);
    c.squeezing = estimate_squeezing(ensemble, c.omega_rad, geom.ion_mass);
    return c;
}

std::vector<double> per_trajectory_radial(const Ensemble& ensemble, const TrapGeometry& geom)
{
    std::vector<double> out(ensemble.size(), kNaN);
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        if (!(ensemble.flags[i] & trajectory_past_apex))
            out[i] = radial_energy(geom, ensemble.points[i]);
    return out;
}

}  // namespace

void integrate_stroke(Ensemble& ensemble, const TrapGeometry& geom, const Stroke& stroke,
                      double dt, TraceRecorder* trace)
{
    integrate_stroke_impl(ensemble, geom, stroke, dt, trace);
}

MeanEstimate estimate_temperature(const Ensemble& ensemble, const TrapGeometry& geom)
{
    MeanEstimate e = mean_radial_energy(ensemble, geom);
    e.mean /= k_boltzmann;
    e.error /= k_boltzmann;
    return e;
}

const CornerStats* CycleRecord::corner(std::string_view label) const
{
    for (const auto& c : corners)
        if (c.label == label)
            return &c;
    return nullptr;
}

double CycleRecord::enclosed_area() const
{
    if (corners.size() < 3)
        return 0.0;
    double twice = 0.0;
    // the last corner repeats the first in a closed cycle
    const std::size_t n = corners.back().label == corners.front().label ? corners.size() - 1
                                                                        : corners.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = corners[k];
        const auto& b = corners[(k + 1) % n];
        twice += a.omega_rad * b.radial_energy.mean - b.omega_rad * a.radial_energy.mean;
    }
    return 0.5 * std::abs(twice);
}

CycleRecord run_cycle(Ensemble& ensemble, const TrapGeometry& geom, const CycleSchedule& schedule,
                      double dt, TraceRecorder* trace)
{
    schedule.validate(geom);
    const std::size_t n = ensemble.size();
    CycleRecord rec;
    rec.corners.push_back(snapshot(ensemble, geom, schedule.start_corner));

    std::vector<std::vector<double>> deltas;
    deltas.reserve(schedule.strokes.size());
    std::vector<double> before = per_trajectory_radial(ensemble, geom);
    std::string from = schedule.start_corner;
    for (const Stroke& stroke : schedule.strokes) {
        rec.cycle_time += integrate_stroke_impl(ensemble, geom, stroke, dt, trace);
        std::vector<double> after = per_trajectory_radial(ensemble, geom);
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
            d[i] = after[i] - before[i];
        deltas.push_back(std::move(d));
        before = std::move(after);
        rec.corners.push_back(snapshot(ensemble, geom, stroke.end_corner));
        StrokeLedger entry;
        entry.kind = stroke.kind;
        entry.from = from;
        entry.to = stroke.end_corner;
        rec.strokes.push_back(std::move(entry));
        from = stroke.end_corner;
    }

    // ledger over the trajectories that stayed valid for the whole cycle
    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < n; ++i)
        if (ensemble.flags[i] == trajectory_ok)
            valid.push_back(i);
    rec.flagged_fraction = ensemble.flagged_fraction();
    rec.feasible = rec.flagged_fraction <= kMaxFlaggedFraction && !valid.empty();

    std::vector<double> work(valid.size(), 0.0);
    std::vector<double> heat_in(valid.size(), 0.0);
    std::vector<double> heat_out(valid.size(), 0.0);
    std::vector<double> closure(valid.size(), 0.0);
    std::vector<double> column(valid.size());
    for (std::size_t k = 0; k < schedule.strokes.size(); ++k) {
        const Stroke& stroke = schedule.strokes[k];
        for (std::size_t j = 0; j < valid.size(); ++j) {
            const double d = deltas[k][valid[j]];
            column[j] = d;
            closure[j] += d;
            if (stroke.is_work_stroke())
                work[j] -= d;
            else if (stroke.absorbs_heat())
                heat_in[j] += d;
            else
                heat_out[j] -= d;
        }
        rec.strokes[k].delta_energy = mean_estimate(column);
    }
    rec.work_net = mean_estimate(work).mean;
    rec.heat_in = mean_estimate(heat_in).mean;
    rec.heat_out = mean_estimate(heat_out).mean;
    rec.closure = mean_estimate(closure);
    rec.power = rec.cycle_time > 0.0 ? rec.work_net / rec.cycle_time : 0.0;
    for (std::size_t j = 0; j < valid.size(); ++j)
        rec.work_over_heat.add(work[j], heat_in[j]);
    if (rec.heat_in > 0.0) {
        rec.efficiency = rec.work_over_heat.ratio();
        rec.efficiency_error = rec.work_over_heat.standard_error();
    }
    return rec;
}

std::vector<SweepRow> run_sweep(const SweepSettings& settings, const CalibrationTable& calibration)
{
    settings.geom.validate();
    if (settings.r_targets.empty())
        throw ConfigError("sweep needs at least one squeezing target");
    if (settings.repetitions < 1 || settings.ensemble_size < 100)
        throw ConfigError("sweep needs >= 1 repetition and >= 100 trajectories");
    if (!(settings.temperature_ratio > 0.0 && settings.temperature_ratio < 1.0))
        throw ConfigError("temperature ratio beta2/beta1 must lie in (0, 1)");

    const TrapGeometry& geom = settings.geom;
    const double beta1 = inverse_temperature(settings.t_cold);
    const double beta2 = inverse_temperature(settings.t_hot());
    const double dt = default_time_step(geom, settings.steps_per_period);

    std::vector<SweepRow> rows;
    for (std::size_t idx = 0; idx < settings.r_targets.size(); ++idx) {
        SweepRow row;
        row.r_target = settings.r_targets[idx];
        if (!(row.r_target >= 0.0))
            throw ConfigError("squeezing targets must be >= 0");
        row.eta_analytic = efficiency_at_max_power(beta1, beta2, row.r_target);
        row.eta_carnot = carnot(beta1, beta2);
        row.eta_generalized_carnot = generalized_carnot(beta1, beta2, row.r_target);
        row.eta_curzon_ahlborn = curzon_ahlborn(beta1, beta2);
        row.ratio_target = settings.frequency_ratio.value_or(
            optimal_frequency_ratio(beta1, beta2, row.r_target));
        row.amplitude = axial_amplitude_for_ratio(geom, row.ratio_target);

        if (row.amplitude > geom.a_max) {
            row.feasible = false;
            row.note = "frequency ratio needs an axial excursion beyond a_max";
            rows.push_back(std::move(row));
            continue;
        }
        try {
            row.fraction = calibration.fraction_for(row.r_target);
        } catch (const InfeasibleError& e) {
            row.feasible = false;
            row.note = e.what();
            rows.push_back(std::move(row));
            continue;
        }
        row.r_calibrated = row.r_target;
        if (!calibration.rows.empty() && row.r_target < calibration.rows.front().r)
            row.r_calibrated = calibration.rows.front().r;

        OttoSettings otto;
        otto.frequency_ratio = row.ratio_target;
        otto.t_cold = settings.t_cold;
        otto.t_hot = settings.t_hot();
        otto.gamma = settings.gamma;
        otto.gamma_t = settings.gamma_t;
        otto.delta_omega_fraction = row.fraction;
        const OttoCycle cycle = make_otto_cycle(geom, otto);
        row.delta_omega = cycle.delta_omega;

        Ensemble ensemble = Ensemble::thermal(geom, settings.ensemble_size, settings.t_cold,
                                              settings.seed, kSweepDomain + idx, cycle.amplitude);
        thermalize(ensemble, geom,
                   BathConfig::cold(settings.t_cold, settings.gamma, settings.gamma_t / settings.gamma),
                   dt);

        RatioAccumulator acc;
        double r_sum = 0.0;
        double ratio_sum = 0.0;
        double work_sum = 0.0;
        double heat_sum = 0.0;
        double area_sum = 0.0;
        for (int rep = 0; rep < settings.repetitions; ++rep) {
            const CycleRecord rec = run_cycle(ensemble, geom, cycle.schedule, dt);
            if (!rec.feasible) {
                row.feasible = false;
                row.note = "more than 5% of trajectories left the trap";
                break;
            }
            acc.merge(rec.work_over_heat);
            r_sum += rec.corner("C")->squeezing.r;
            ratio_sum += rec.corner("B")->omega_rad / rec.corners.front().omega_rad;
            work_sum += rec.work_net;
            heat_sum += rec.heat_in;
            area_sum += rec.enclosed_area();
            if (rec.closure.error > 0.0)
                row.closure_sigma =
                    std::max(row.closure_sigma, std::abs(rec.closure.mean) / rec.closure.error);
            ++row.cycles;
        }
        if (row.cycles > 0) {
            const double c = static_cast<double>(row.cycles);
            row.eta_sim = acc.ratio();
            row.eta_sim_error = acc.standard_error();
            row.r_measured = r_sum / c;
            row.ratio_realized = ratio_sum / c;
            row.work_per_cycle = work_sum / c;
            row.heat_in_per_cycle = heat_sum / c;
            row.enclosed_area = area_sum / c;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sqotto
