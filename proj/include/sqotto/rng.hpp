// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sqotto/constants.hpp"

namespace sqotto {

/// splitmix64 finaliser; bijective mixing of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `index` inside `domain` for a given master seed.
///
/// The rule is seed = splitmix64(splitmix64(splitmix64(master) ^ domain) ^ index),
/// which only uses 64-bit integer arithmetic and is therefore identical on
/// every platform. Domains separate independent uses of the same master seed
/// (sweep points, calibration, ...).
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t domain,
                                           std::uint64_t index) noexcept
{
    return splitmix64(splitmix64(splitmix64(master) ^ domain) ^ index);
}

/// Private random stream of one trajectory.
///
/// std::mt19937_64 output is fully specified by the standard. The standard
/// distributions are not, so uniforms and normals are generated here.
class RngStream {
public:
    RngStream() = default;
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller, second value cached).
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(two_pi * u2);
        has_spare_ = true;
        return radius * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 engine_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sqotto
