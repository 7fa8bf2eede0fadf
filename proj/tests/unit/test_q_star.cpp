// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sqotto/constants.hpp"
#include "sqotto/q_star.hpp"

using namespace sqotto;

TEST_SUITE("q_star") {

TEST_CASE("quasi-static ramps give Q* = 1")
{
    const double w1 = 1.0;
    const double w2 = 2.0;
    const double period = two_pi / w1;
    CHECK(std::abs(compute_q_star(FrequencyRamp::linear(w1, w2, 2000.0 * period)) - 1.0) < 1e-3);
    CHECK(std::abs(compute_q_star(FrequencyRamp::smooth(w1, w2, 200.0 * period)) - 1.0) < 1e-3);
    CHECK(std::abs(compute_q_star(FrequencyRamp::smooth(w2, w1, 200.0 * period)) - 1.0) < 1e-3);
}

TEST_CASE("sudden quench matches the frozen-state closed form")
{
    for (auto [wi, wf] : {std::pair{1.0, 2.0}, std::pair{2.0, 1.0}, std::pair{1.0, 1.3}}) {
        const double expected = (wi * wi + wf * wf) / (2.0 * wi * wf);
        CHECK(sudden_quench_q_star(wi, wf) == doctest::Approx(expected).epsilon(1e-15));
        CHECK(std::abs(compute_q_star(FrequencyRamp::linear(wi, wf, 1e-5)) - expected) < 1e-3);
    }
    CHECK(sudden_quench_q_star(1.0, 1.0) == 1.0);
}

TEST_CASE("Q* >= 1 on random ramps and grows with speed")
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        std::vector<std::pair<double, double>> knots{{0.0, 0.5 + 2.0 * u(gen)}};
        const int n = 1 + static_cast<int>(4 * u(gen));
        for (int j = 0; j < n; ++j)
            knots.emplace_back(knots.back().first + 0.05 + 10.0 * u(gen), 0.5 + 2.0 * u(gen));
        CHECK(compute_q_star(FrequencyRamp::piecewise_linear(knots)) >= 1.0 - 1e-6);
    }
    const double slow = compute_q_star(FrequencyRamp::linear(1.0, 2.0, 5.0));
    const double fast = compute_q_star(FrequencyRamp::linear(1.0, 2.0, 0.5));
    CHECK(fast > slow);
}

TEST_CASE("Q* input validation")
{
    CHECK_THROWS_AS(compute_q_star(FrequencyRamp::linear(1.0, -1.0, 1.0)), std::domain_error);
    CHECK_THROWS_AS(compute_q_star(FrequencyRamp::linear(1.0, 2.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(compute_q_star(FrequencyRamp::linear(1.0, 2.0, 1.0), 100), std::domain_error);
    CHECK_THROWS_AS(sudden_quench_q_star(0.0, 1.0), std::domain_error);
}

}  // TEST_SUITE
