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

#ifndef D2DEE_ORACLE_HPP
#define D2DEE_ORACLE_HPP

// Brute-force reference searches used to certify the solver. Nothing in
// here calls into solver.hpp; rates and powers are re-evaluated from the
// raw environment.

#include "environment.hpp"
#include "model.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace d2dee::oracle
{

struct GridSpec
{
    double min = 0.0;
    double max = 0.2;
    double step = 0.001;
    double budget = 0.2; // sum constraint across channels

    // 201 points over [0, budget].
    static GridSpec over_budget(double budget, std::size_t points = 201)
    {
        return {0.0, budget, budget / static_cast<double>(points - 1), budget};
    }

    std::size_t points() const
    {
        return step > 0.0 && max > min ? static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1 : 1;
    }
    double at(std::size_t i) const { return min + step * static_cast<double>(i); }
};

struct Candidate
{
    std::vector<double> power;
    double ee = -std::numeric_limits<double>::infinity();
};

struct Evaluator
{
    const Environment &env;
    double eta;
    double circuit;
    double floor;
    double budget;

    double se(const std::vector<double> &p) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
        {
            const double sinr = p[k] * env.gain[k] / env.interference[k];
            s += std::log(1.0 + sinr) / std::log(2.0);
        }
        return s;
    }
    double total_power(const std::vector<double> &p) const
    {
        double t = circuit;
        for (double x : p)
            t += x / eta;
        return t;
    }
    double ee(const std::vector<double> &p) const
    {
        const double t = total_power(p);
        return t > 0.0 ? se(p) / t : 0.0;
    }
    bool feasible(const std::vector<double> &p) const
    {
        double sum = 0.0;
        for (double x : p)
            sum += x;
        return sum <= budget + 1e-12 && se(p) >= floor;
    }
};

inline Evaluator make_evaluator(const Environment &env, const SystemParams &params, LinkKind kind)
{
    const bool d2d = kind == LinkKind::D2D;
    return {env, params.pa_efficiency, (d2d ? 2.0 : 1.0) * params.circuit_power,
            d2d ? params.d2d_se_floor : params.cell_se_floor,
            d2d ? params.d2d_power_budget : params.cell_power_budget};
}

namespace detail
{
inline void enumerate(const Evaluator &ev, const GridSpec &grid, std::vector<double> &p, std::size_t k,
                      double spent, Candidate &best)
{
    if (k == p.size())
    {
        if (!ev.feasible(p))
            return;
        const double e = ev.ee(p);
        if (e > best.ee)
            best = {p, e};
        return;
    }
    const std::size_t n = grid.points();
    for (std::size_t i = 0; i < n; ++i)
    {
        const double x = grid.at(i);
        if (spent + x > grid.budget + 1e-12)
            break;
        p[k] = x;
        enumerate(ev, grid, p, k + 1, spent + x, best);
    }
    p[k] = 0.0;
}

// Coordinate-wise polishing on the grid lattice, keeping feasibility.
inline void coordinate_refine(const Evaluator &ev, const GridSpec &grid, Candidate &best)
{
    bool improved = true;
    const std::size_t n = grid.points();
    while (improved)
    {
        improved = false;
        for (std::size_t k = 0; k < best.power.size(); ++k)
        {
            auto p = best.power;
            for (std::size_t i = 0; i < n; ++i)
            {
                p[k] = grid.at(i);
                if (!ev.feasible(p))
                    continue;
                const double e = ev.ee(p);
                if (e > best.ee + 1e-15)
                {
                    best = {p, e};
                    improved = true;
                }
            }
        }
    }
}
} // namespace detail

// Exhaustive EE maximization over the per-channel grid. K <= 2 enumerates
// the full product; K = 3 enumerates a 4x coarser product and polishes
// coordinate-wise on the fine grid.
inline Candidate brute_force_best_response(const Environment &env, const SystemParams &params, LinkKind kind,
                                           const GridSpec &grid)
{
    const bool single_point = grid.max == grid.min;
    if (grid.min < 0.0 || grid.max < grid.min || (!single_point && !(grid.step > 0.0)))
        throw std::invalid_argument("GridSpec: need step > 0 and max >= min >= 0");
    if (env.size() > 3)
        throw std::invalid_argument("brute_force_best_response: at most 3 channels");

    const auto ev = make_evaluator(env, params, kind);
    Candidate best;
    std::vector<double> p(env.size(), 0.0);
    if (env.size() <= 2 || grid.points() <= 1)
        detail::enumerate(ev, grid, p, 0, 0.0, best);
    else
    {
        GridSpec coarse = grid;
        coarse.step = grid.step * 4.0;
        detail::enumerate(ev, coarse, p, 0, 0.0, best);
        if (std::isfinite(best.ee))
            detail::coordinate_refine(ev, grid, best);
    }
    if (!std::isfinite(best.ee))
        throw std::domain_error("brute_force_best_response: no feasible grid point");
    return best;
}

// Maximizer of a unimodal f on [a, b].
inline double golden_section_max(const std::function<double(double)> &f, double a, double b, double tol = 1e-10)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// True iff the successive differences of `values` follow (+)*(-)*, with
// steps of magnitude <= resolution treated as flat.
inline bool single_peaked(const std::vector<double> &values, double resolution = 1e-12)
{
    bool descending = false;
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        const double d = values[i] - values[i - 1];
        if (std::abs(d) <= resolution)
            continue;
        if (d < 0.0)
            descending = true;
        else if (descending)
            return false;
    }
    return true;
}

// Samples EE along one own-power coordinate over [0, budget], every other
// coordinate held at `base` (zeros when empty), and checks single-peakedness.
inline bool quasiconcavity_probe(const Environment &env, const SystemParams &params, LinkKind kind,
                                 std::size_t channel, std::size_t n_samples, std::vector<double> base = {})
{
    if (n_samples < 3)
        throw std::invalid_argument("quasiconcavity_probe: need at least 3 samples");
    if (channel >= env.size())
        throw std::invalid_argument("quasiconcavity_probe: channel out of range");
    const auto ev = make_evaluator(env, params, kind);
    if (base.empty())
        base.assign(env.size(), 0.0);
    std::vector<double> ees;
    ees.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s)
    {
        base[channel] = ev.budget * static_cast<double>(s) / static_cast<double>(n_samples - 1);
        ees.push_back(ev.ee(base));
    }
    return single_peaked(ees);
}

// Grid estimate of max_p SE(p) - q * P_total(p) over the feasible set.
inline double transformed_max(const Environment &env, const SystemParams &params, LinkKind kind, double q,
                              const GridSpec &grid)
{
    const auto ev = make_evaluator(env, params, kind);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> p(env.size(), 0.0);
    std::function<void(std::size_t, double)> walk = [&](std::size_t k, double spent)
    {
        if (k == p.size())
        {
            if (ev.feasible(p))
                best = std::max(best, ev.se(p) - q * ev.total_power(p));
            return;
        }
        for (std::size_t i = 0; i < grid.points(); ++i)
        {
            const double x = grid.at(i);
            if (spent + x > grid.budget + 1e-12)
                break;
            p[k] = x;
            walk(k + 1, spent + x);
        }
        p[k] = 0.0;
    };
    walk(0, 0.0);
    return best;
}

} // namespace d2dee::oracle

#endif
