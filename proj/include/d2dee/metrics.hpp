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

#ifndef D2DEE_METRICS_HPP
#define D2DEE_METRICS_HPP

#include "model.hpp"

#include <cmath>

namespace d2dee
{

struct LinkMetrics
{
    double se = 0.0;          // bits/s/Hz
    double total_power = 0.0; // W, including circuit power
    double ee = 0.0;          // bits/Hz/J
};

// Interference-plus-noise seen by `link` on channel k, excluding its own power.
inline double interference_plus_noise(const PowerProfile &pp, const GainTensor &g, const SystemParams &p,
                                      LinkId link, std::size_t k)
{
    double acc = p.noise_power;
    if (link.kind == LinkKind::D2D)
    {
        const std::size_t i = link.index;
        acc += pp.cell_power[k] * g.cell_to_d2d(k, i);
        for (std::size_t j = 0; j < p.n_d2d; ++j)
            if (j != i)
                acc += pp.d2d_power(j, k) * g.cross(j, i, k);
    }
    else
    {
        for (std::size_t i = 0; i < p.n_d2d; ++i)
            acc += pp.d2d_power(i, k) * g.d2d_to_bs(i, k);
    }
    return acc;
}

inline double link_se(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, LinkId link)
{
    if (link.kind == LinkKind::D2D)
    {
        double se = 0.0;
        for (std::size_t k = 0; k < p.n_cell; ++k)
        {
            const double sig = pp.d2d_power(link.index, k) * g.d2d_direct(link.index, k);
            se += std::log2(1.0 + sig / interference_plus_noise(pp, g, p, link, k));
        }
        return se;
    }
    const std::size_t k = link.index;
    const double sig = pp.cell_power[k] * g.cell_direct[k];
    return std::log2(1.0 + sig / interference_plus_noise(pp, g, p, link, k));
}

inline double link_power(const PowerProfile &pp, const SystemParams &p, LinkId link)
{
    if (link.kind == LinkKind::D2D)
    {
        double tx = 0.0;
        for (std::size_t k = 0; k < p.n_cell; ++k)
            tx += pp.d2d_power(link.index, k);
        return tx / p.pa_efficiency + 2.0 * p.circuit_power;
    }
    return pp.cell_power[link.index] / p.pa_efficiency + p.circuit_power;
}

inline double link_ee(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, LinkId link)
{
    const double power = link_power(pp, p, link);
    return power > 0.0 ? link_se(pp, g, p, link) / power : 0.0;
}

inline LinkMetrics link_metrics(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, LinkId link)
{
    LinkMetrics m;
    m.se = link_se(pp, g, p, link);
    m.total_power = link_power(pp, p, link);
    m.ee = m.total_power > 0.0 ? m.se / m.total_power : 0.0;
    return m;
}

} // namespace d2dee

#endif
