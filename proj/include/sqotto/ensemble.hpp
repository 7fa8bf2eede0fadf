// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sqotto/rng.hpp"
#include "sqotto/stats.hpp"
#include "sqotto/trap.hpp"

namespace sqotto {

/// Per-trajectory validity markers.
enum TrajectoryFlag : std::uint8_t {
    trajectory_ok = 0,
    trajectory_left_trap = 1,  ///< |z| exceeded a_max at some point
    trajectory_past_apex = 2,  ///< left the region where the taper law is defined
};

/// Classical trajectories with one private random stream each.
///
/// Stream i is seeded with derive_stream_seed(master_seed, domain, i), so the
/// state of trajectory i never depends on how trajectories are scheduled.
struct Ensemble {
    std::vector<PhasePoint> points;
    std::vector<std::uint64_t> seeds;
    std::vector<RngStream> streams;
    std::vector<std::uint8_t> flags;

    std::size_t size() const noexcept { return points.size(); }
    std::size_t flagged_count() const noexcept;
    double flagged_fraction() const noexcept;

    /// All trajectories at (z0, pz = 0, x = 0, px = 0).
    static Ensemble at_rest(std::size_t size, std::uint64_t master_seed, std::uint64_t domain,
                            double z0 = 0.0);

    /// Radial Gibbs state at temperature `kelvin` for the trap frequency at z0;
    /// the axial coordinate is z0 at rest.
    static Ensemble thermal(const TrapGeometry& geom, std::size_t size, double kelvin,
                            std::uint64_t master_seed, std::uint64_t domain, double z0 = 0.0);
};

/// Radial energies of the unflagged trajectories (flagged ones are skipped).
std::vector<double> radial_energies(const Ensemble& ensemble, const TrapGeometry& geom,
                                    double modulation = 0.0);

/// Mean radial energy of the unflagged trajectories.
MeanEstimate mean_radial_energy(const Ensemble& ensemble, const TrapGeometry& geom,
                                double modulation = 0.0);

/// Mean axial position of the unflagged trajectories.
double mean_axial_position(const Ensemble& ensemble);

}  // namespace sqotto
