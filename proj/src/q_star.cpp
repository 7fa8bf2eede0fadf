// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/q_star.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqotto/constants.hpp"

namespace sqotto {

namespace {

constexpr int kFrequencyProbes = 4096;

double checked(const FrequencyRamp& ramp, double t)
{
    const double w = ramp.omega(t);
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::domain_error("frequency schedule must stay positive");
    return w;
}

struct Oscillator {
    double x;
    double v;
};

}  // namespace

FrequencyRamp FrequencyRamp::linear(double omega_initial, double omega_final, double duration)
{
    return {[=](double t) { return omega_initial + (omega_final - omega_initial) * (t / duration); },
            duration};
}

FrequencyRamp FrequencyRamp::smooth(double omega_initial, double omega_final, double duration)
{
    return {[=](double t) {
                const double s = 0.5 * (1.0 - std::cos(pi * t / duration));
                return omega_initial + (omega_final - omega_initial) * s;
            },
            duration};
}

FrequencyRamp FrequencyRamp::piecewise_linear(std::vector<std::pair<double, double>> knots)
{
    if (knots.size() < 2 || knots.front().first != 0.0)
        throw std::domain_error("piecewise ramp needs >= 2 knots starting at t = 0");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw std::domain_error("ramp knots must have increasing times");
    const double duration = knots.back().first;
    return {[k = std::move(knots)](double t) {
                if (t <= k.front().first)
                    return k.front().second;
                if (t >= k.back().first)
                    return k.back().second;
                auto hi = std::upper_bound(k.begin(), k.end(), t,
                                           [](double v, const auto& knot) { return v < knot.first; });
                auto lo = hi - 1;
                const double s = (t - lo->first) / (hi->first - lo->first);
                return lo->second + s * (hi->second - lo->second);
            },
            duration};
}

double sudden_quench_q_star(double omega_initial, double omega_final)
{
    if (!(omega_initial > 0.0 && omega_final > 0.0))
        throw std::domain_error("frequencies must be positive");
    return (omega_initial * omega_initial + omega_final * omega_final) /
           (2.0 * omega_initial * omega_final);
}

double compute_q_star(const FrequencyRamp& ramp, int steps_per_period)
{
    if (!ramp.omega)
        throw std::domain_error("empty frequency schedule");
    if (!(ramp.duration > 0.0))
        throw std::domain_error("ramp duration must be positive");
    if (steps_per_period < 200)
        throw std::domain_error("need at least 200 steps per period");

    double omega_max = 0.0;
    for (int i = 0; i <= kFrequencyProbes; ++i)
        omega_max = std::max(omega_max, checked(ramp, ramp.duration * i / kFrequencyProbes));

    const double period = two_pi / omega_max;
    const auto steps = std::max<long long>(
        16, static_cast<long long>(std::ceil(ramp.duration / period * steps_per_period)));
    const double h = ramp.duration / static_cast<double>(steps);

    const double omega_i = checked(ramp, 0.0);
    const double omega_f = checked(ramp, ramp.duration);

    Oscillator a{1.0, 0.0};
    Oscillator b{0.0, omega_i};

    // Yoshida triple-jump composition of the velocity-Verlet step, with time
    // advanced alongside the position drift.
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);
    const double weights[3] = {w1, w0, w1};

    double t = 0.0;
    for (long long n = 0; n < steps; ++n) {
        for (double w : weights) {
            const double sub = w * h;
            double w2 = checked(ramp, std::clamp(t, 0.0, ramp.duration));
            w2 *= w2;
            a.v -= 0.5 * sub * w2 * a.x;
            b.v -= 0.5 * sub * w2 * b.x;
            a.x += sub * a.v;
            b.x += sub * b.v;
            t += sub;
            w2 = checked(ramp, std::clamp(t, 0.0, ramp.duration));
            w2 *= w2;
            a.v -= 0.5 * sub * w2 * a.x;
            b.v -= 0.5 * sub * w2 * b.x;
        }
    }

    const double wf2 = omega_f * omega_f;
    return (wf2 * (a.x * a.x + b.x * b.x) + a.v * a.v + b.v * b.v) / (2.0 * omega_i * omega_f);
}

}  // namespace sqotto
