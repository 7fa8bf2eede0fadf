// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/power.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqotto {

namespace {

double cycle_power(const CycleParams& base, double ratio)
{
    CycleParams p = base;
    p.omega2 = base.omega1 * ratio;
    return work_and_heat(stroke_energies(p), p.tau).power;
}

}  // namespace

PowerOptimum maximize_power_numeric(double beta1, double beta2, double r, double omega1,
                                    double tau, const PowerSearchOptions& options)
{
    if (options.grid_points < 3 || !(options.max_ratio > 1.0) || !(options.ratio_tolerance > 0.0))
        throw std::domain_error("invalid power search options");

    CycleParams base;
    base.omega1 = omega1;
    base.omega2 = omega1;
    base.beta1 = beta1;
    base.beta2 = beta2;
    base.r = r;
    base.tau = tau;
    base.validate_physical();

    const int n = options.grid_points;
    const double log_max = std::log(options.max_ratio);
    std::vector<double> ratios(n + 1);
    std::vector<double> powers(n + 1);
    ratios[0] = 1.0;
    powers[0] = cycle_power(base, 1.0);
    int best = 0;
    for (int k = 1; k <= n; ++k) {
        ratios[k] = std::exp(log_max * k / n);
        powers[k] = cycle_power(base, ratios[k]);
        if (powers[k] > powers[best])
            best = k;
    }

    PowerOptimum out;
    for (int k = 1; k < n; ++k)
        if (powers[k] > 0.0 && powers[k] >= powers[k - 1] && powers[k] >= powers[k + 1])
            ++out.local_maxima;
    if (powers[n] > 0.0 && powers[n] > powers[n - 1])
        ++out.local_maxima;

    if (!(powers[best] > 0.0))
        return out;

    // golden-section search on [lo, hi]
    double lo = ratios[best > 0 ? best - 1 : 0];
    double hi = ratios[best < n ? best + 1 : n];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = cycle_power(base, c);
    double fd = cycle_power(base, d);
    while (hi - lo > options.ratio_tolerance) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = cycle_power(base, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = cycle_power(base, d);
        }
    }

    out.ratio = 0.5 * (lo + hi);
    out.omega2 = omega1 * out.ratio;
    CycleParams at = base;
    at.omega2 = out.omega2;
    const CycleOutputs outputs = work_and_heat(stroke_energies(at), tau);
    out.power = outputs.power;
    out.efficiency = outputs.efficiency;
    out.regime = outputs.regime;
    return out;
}

}  // namespace sqotto
