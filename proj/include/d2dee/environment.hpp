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

#ifndef D2DEE_ENVIRONMENT_HPP
#define D2DEE_ENVIRONMENT_HPP

#include "model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace d2dee
{

// What a single link observes about everyone else: per-channel
// interference-plus-noise at its receiver and its own direct gains.
// D2D links see K channels, a cellular UE sees only its own channel.
struct Environment
{
    LinkKind kind = LinkKind::D2D;
    std::vector<double> interference; // W, >= N0
    std::vector<double> gain;

    std::size_t size() const { return gain.size(); }
};

inline Environment make_environment(LinkKind kind, std::vector<double> interference, std::vector<double> gain)
{
    if (interference.size() != gain.size() || gain.empty())
        throw std::invalid_argument("Environment: interference and gain must be nonempty and equal in length");
    if (kind == LinkKind::Cellular && gain.size() != 1)
        throw std::invalid_argument("Environment: a cellular link has exactly one channel");
    for (std::size_t k = 0; k < gain.size(); ++k)
        if (!(interference[k] > 0.0) || !(gain[k] >= 0.0))
            throw std::invalid_argument("Environment: need interference > 0 and gain >= 0");
    return {kind, std::move(interference), std::move(gain)};
}

inline double env_se(const Environment &env, const std::vector<double> &power)
{
    double se = 0.0;
    for (std::size_t k = 0; k < env.size(); ++k)
        se += std::log2(1.0 + power[k] * env.gain[k] / env.interference[k]);
    return se;
}

inline double env_power(const Environment &env, const std::vector<double> &power, double eta, double circuit)
{
    double tx = 0.0;
    for (std::size_t k = 0; k < env.size(); ++k)
        tx += power[k];
    return tx / eta + circuit;
}

} // namespace d2dee

#endif
