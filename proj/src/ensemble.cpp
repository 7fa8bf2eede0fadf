// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/ensemble.hpp"

#include <cmath>

namespace sqotto {

std::size_t Ensemble::flagged_count() const noexcept
{
    std::size_t n = 0;
    for (auto f : flags)
        n += f != trajectory_ok;
    return n;
}

double Ensemble::flagged_fraction() const noexcept
{
    return points.empty() ? 0.0 : static_cast<double>(flagged_count()) / points.size();
}

Ensemble Ensemble::at_rest(std::size_t size, std::uint64_t master_seed, std::uint64_t domain,
                           double z0)
{
    Ensemble e;
    e.points.assign(size, PhasePoint{z0, 0.0, 0.0, 0.0});
    e.flags.assign(size, trajectory_ok);
    e.seeds.resize(size);
    e.streams.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        e.seeds[i] = derive_stream_seed(master_seed, domain, i);
        e.streams.emplace_back(e.seeds[i]);
    }
    return e;
}

Ensemble Ensemble::thermal(const TrapGeometry& geom, std::size_t size, double kelvin,
                           std::uint64_t master_seed, std::uint64_t domain, double z0)
{
    Ensemble e = at_rest(size, master_seed, domain, z0);
    const double m = geom.ion_mass;
    const double omega = radial_frequency(geom, z0);
    const double kt = k_boltzmann * kelvin;
    const double sigma_x = std::sqrt(kt / (m * omega * omega));
    const double sigma_p = std::sqrt(m * kt);
    for (std::size_t i = 0; i < size; ++i) {
        e.points[i].x = sigma_x * e.streams[i].normal();
        e.points[i].px = sigma_p * e.streams[i].normal();
    }
    return e;
}

std::vector<double> radial_energies(const Ensemble& ensemble, const TrapGeometry& geom,
                                    double modulation)
{
    std::vector<double> out;
    out.reserve(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        if (ensemble.flags[i] == trajectory_ok)
            out.push_back(radial_energy(geom, ensemble.points[i], modulation));
    return out;
}

MeanEstimate mean_radial_energy(const Ensemble& ensemble, const TrapGeometry& geom,
                                double modulation)
{
    const auto energies = radial_energies(ensemble, geom, modulation);
    return mean_estimate(energies);
}

double mean_axial_position(const Ensemble& ensemble)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        if (ensemble.flags[i] != trajectory_ok)
            continue;
        sum += ensemble.points[i].z;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace sqotto
