// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "sqotto/constants.hpp"
#include "sqotto/power.hpp"
#include "sqotto/thermo.hpp"

using namespace sqotto;

TEST_SUITE("power") {

TEST_CASE("numeric argmax reproduces the closed forms at high temperature")
{
    const double w1 = 1.0e6;
    const double b1 = 1e-4 / (hbar * w1);

    const PowerOptimum a = maximize_power_numeric(b1, 0.25 * b1, 0.0, w1, 1.0);
    REQUIRE(a.regime == Regime::engine);
    CHECK(std::abs(a.ratio / 2.0 - 1.0) < 5e-3);

    const PowerOptimum b = maximize_power_numeric(b1, 0.88 * b1, 0.4, w1, 1.0);
    REQUIRE(b.efficiency);
    CHECK(std::abs(*b.efficiency / 0.18885 - 1.0) < 5e-3);
    CHECK(std::abs(b.ratio / optimal_frequency_ratio(b1, 0.88 * b1, 0.4) - 1.0) < 5e-3);
    CHECK(b.local_maxima == 1);
}

// Squeezed zero-point energy grows with omega2, so at low temperature the
// power can rise up to the search bound.
TEST_CASE("low temperature: argmax departs from the high-T formula")
{
    const double w1 = 1.0e6;
    const double b1 = 2.0 / (hbar * w1);
    const PowerOptimum opt = maximize_power_numeric(b1, 0.5 * b1, 0.3, w1, 1.0);
    const double closed = optimal_frequency_ratio(b1, 0.5 * b1, 0.3);
    MESSAGE("beta hbar omega = 2: numeric ratio " << opt.ratio << ", high-T formula " << closed
                                                  << ", relative deviation " << opt.ratio / closed - 1.0);
    CHECK(opt.regime == Regime::engine);
}

TEST_CASE("no positive-work window")
{
    const double w1 = 1.0e6;
    const double b1 = 1e-4 / (hbar * w1);
    const PowerOptimum opt = maximize_power_numeric(b1, b1, 0.0, w1, 1.0);
    CHECK(opt.regime == Regime::not_engine);
    CHECK_FALSE(opt.efficiency.has_value());
}

}  // TEST_SUITE
