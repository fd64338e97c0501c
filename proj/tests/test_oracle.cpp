// SPDX-License-Identifier: Apache-2.0
//
// d2dee: energy-efficient power allocation for D2D underlay cellular networks
// Copyright (C) 2026 The d2dee authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

#include <d2dee/oracle.hpp>

using namespace d2dee;
using Catch::Approx;

namespace
{
SystemParams two_channel()
{
    SystemParams p;
    p.n_cell = 2;
    return p;
}
} // namespace

TEST_CASE("Grid geometry", "[oracle]")
{
    const auto g = oracle::GridSpec::over_budget(0.2);
    CHECK(g.points() == 201);
    CHECK(g.at(200) == Approx(0.2));
    CHECK(oracle::GridSpec{0.0, 0.0, 0.0, 0.0}.points() == 1);
    CHECK_THROWS_AS(oracle::brute_force_best_response(make_environment(LinkKind::Cellular, {1e-7}, {1e-5}),
                                                      SystemParams{}, LinkKind::Cellular,
                                                      oracle::GridSpec{0.0, 0.2, 0.0, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("Single-channel brute force lands within one step of the golden section", "[oracle]")
{
    SystemParams p;
    p.cell_se_floor = 0.0;
    for (double gain : {1e-6, 1e-5, 1e-4})
    {
        const auto env = make_environment(LinkKind::Cellular, {1e-7}, {gain});
        const auto grid = oracle::GridSpec::over_budget(p.cell_power_budget);
        const auto best = oracle::brute_force_best_response(env, p, LinkKind::Cellular, grid);
        const auto ev = oracle::make_evaluator(env, p, LinkKind::Cellular);
        const double x = oracle::golden_section_max([&](double v) { return ev.ee({v}); }, 0.0, p.cell_power_budget);
        CHECK(std::abs(best.power[0] - x) <= grid.step);
    }
}

TEST_CASE("Zero floor and zero budget yield the zero allocation", "[oracle]")
{
    SystemParams p;
    p.d2d_se_floor = 0.0;
    p.d2d_power_budget = 0.0;
    const auto env = make_environment(LinkKind::D2D, {1e-7, 1e-7}, {1e-4, 1e-5});
    const auto best = oracle::brute_force_best_response(env, p, LinkKind::D2D, oracle::GridSpec{0.0, 0.0, 0.0, 0.0});
    CHECK(best.power == std::vector<double>{0.0, 0.0});
    CHECK(best.ee == 0.0);
}

TEST_CASE("No feasible grid point is an error", "[oracle]")
{
    SystemParams p = two_channel();
    p.d2d_se_floor = 40.0;
    const auto env = make_environment(LinkKind::D2D, {1e-7, 1e-7}, {1e-4, 1e-5});
    CHECK_THROWS_AS(
        oracle::brute_force_best_response(env, p, LinkKind::D2D, oracle::GridSpec::over_budget(0.2, 21)),
        std::domain_error);
}

TEST_CASE("Refining the grid never loses EE", "[oracle]")
{
    const auto p = two_channel();
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const auto env = test::random_environment(p, LinkId::d2d(0), seed);
        if (!check_feasibility(LinkKind::D2D, env, p))
            continue;
        double prev = -1.0;
        for (std::size_t pts : {11, 21, 41, 81})
        {
            try
            {
                const auto best =
                    oracle::brute_force_best_response(env, p, LinkKind::D2D, oracle::GridSpec::over_budget(0.2, pts));
                CHECK(best.ee >= prev - 1e-6);
                prev = best.ee;
            }
            catch (const std::domain_error &)
            {
                // Coarse grid missed the feasible sliver.
            }
        }
    }
}

TEST_CASE("Transformed objective falls with q and crosses zero once", "[oracle]")
{
    const auto p = two_channel();
    const auto env = make_environment(LinkKind::D2D, {1e-7, 2e-7}, {1e-4, 5e-5});
    const auto grid = oracle::GridSpec::over_budget(0.2, 101);
    std::vector<double> f;
    for (double q = 0.0; q <= 40.0; q += 1.0)
        f.push_back(oracle::transformed_max(env, p, LinkKind::D2D, q, grid));
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < f.size(); ++i)
    {
        CHECK(f[i] <= f[i - 1]);
        if ((f[i - 1] > 0.0) != (f[i] > 0.0))
            ++crossings;
    }
    CHECK(f.front() > 0.0);
    CHECK(crossings == 1);

    // The root sits at the grid-optimal EE.
    const auto best = oracle::brute_force_best_response(env, p, LinkKind::D2D, grid);
    CHECK(oracle::transformed_max(env, p, LinkKind::D2D, best.ee, grid) == Approx(0.0).margin(1e-9));
}

TEST_CASE("Single-peakedness probe", "[oracle]")
{
    CHECK(oracle::single_peaked({0.0, 1.0, 2.0, 1.5, 0.0}));
    CHECK(oracle::single_peaked({3.0, 2.0, 1.0}));
    CHECK(oracle::single_peaked({1.0, 1.0, 1.0}));
    CHECK_FALSE(oracle::single_peaked({0.0, 2.0, 1.0, 2.0}));
    CHECK(oracle::single_peaked({0.0, 2.0, 1.0, 1.0 + 1e-3}, 1e-2));

    SystemParams p;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto env = test::random_environment(p, LinkId::d2d(1), seed);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(oracle::quasiconcavity_probe(env, p, LinkKind::D2D, k, 101));
    }
    const auto env = test::random_environment(p, LinkId::d2d(1), 0);
    CHECK_THROWS_AS(oracle::quasiconcavity_probe(env, p, LinkKind::D2D, 3, 101), std::invalid_argument);
    CHECK_THROWS_AS(oracle::quasiconcavity_probe(env, p, LinkKind::D2D, 0, 2), std::invalid_argument);
}

TEST_CASE("Dinkelbach is at least as good as the two-channel grid optimum", "[oracle]")
{
    const auto p = two_channel();
    std::size_t compared = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed)
    {
        const auto env = test::random_environment(p, LinkId::d2d(2), seed);
        const auto rep = dinkelbach_solve(LinkKind::D2D, env, p);
        if (!rep.feasible)
            continue;
        const auto best = oracle::brute_force_best_response(env, p, LinkKind::D2D, oracle::GridSpec::over_budget(0.2));
        CHECK(rep.ee >= best.ee - p.tolerance);
        ++compared;
    }
    CHECK(compared > 0);
}
