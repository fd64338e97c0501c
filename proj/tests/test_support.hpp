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


#ifndef D2DEE_TEST_SUPPORT_HPP
#define D2DEE_TEST_SUPPORT_HPP

// Random instance generators shared by the test binaries.

#include <d2dee/d2dee.hpp>

#include <random>

namespace d2dee::test
{

inline SystemParams default_params()
{
    return SystemParams{};
}

// Profile with every D2D row uniform on its budget simplex (scaled by U[0,1])
// and cellular powers uniform on [0, budget].
inline PowerProfile random_profile(const SystemParams &p, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PowerProfile pp(p);
    for (std::size_t i = 0; i < p.n_d2d; ++i)
    {
        std::vector<double> w(p.n_cell);
        double s = 0.0;
        for (auto &x : w)
            s += (x = -std::log(1.0 - u(rng)));
        const double spend = u(rng) * p.d2d_power_budget;
        for (std::size_t k = 0; k < p.n_cell; ++k)
            pp.d2d_power(i, k) = spend * w[k] / s;
    }
    for (auto &c : pp.cell_power)
        c = u(rng) * p.cell_power_budget;
    return pp;
}

struct Instance
{
    Topology topology;
    GainTensor gains;
    PowerProfile profile;
};

// A default-size network (500 m cell, 25 m pairs, Rayleigh fading) with a
// random joint strategy.
inline Instance random_instance(const SystemParams &p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 7919 + 17);
    Instance in;
    in.topology = generate_topology(p, 500.0, 25.0, seed);
    in.gains = compute_gains(in.topology, seed + 1000003);
    in.profile = random_profile(p, rng);
    return in;
}

// The environment one link sees in a random instance.
inline Environment random_environment(const SystemParams &p, LinkId link, std::uint64_t seed)
{
    const auto in = random_instance(p, seed);
    return aggregate_interference(in.profile, in.gains, p, link);
}

} // namespace d2dee::test

#endif
