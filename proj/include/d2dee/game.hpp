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

#ifndef D2DEE_GAME_HPP
#define D2DEE_GAME_HPP

// Sequential best-response dynamics over the N D2D pairs and K cellular
// UEs. Each player only needs the interference it measures on its own
// channels, which is exactly what aggregate_interference() hands it.

#include "environment.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace d2dee
{

enum class Policy
{
    EnergyEfficient,
    SpectralEfficient,
    Random
};

inline std::string_view policy_name(Policy p)
{
    switch (p)
    {
    case Policy::EnergyEfficient:
        return "energy_efficient";
    case Policy::SpectralEfficient:
        return "spectral_efficient";
    case Policy::Random:
        return "random";
    }
    return "unknown";
}

enum class UpdateOrder
{
    RoundRobin,       // D2D 0..N-1, then cellular 0..K-1
    RandomPermutation // fresh shuffle every round
};

struct GameConfig
{
    Policy policy = Policy::EnergyEfficient;
    std::size_t max_rounds = 10;
    double nash_epsilon = 1e-3;
    UpdateOrder update_order = UpdateOrder::RoundRobin;
    std::uint64_t seed = 0;
    double power_change_tol = 1e-6; // W, early-stop threshold
    DualConfig dual{};
};

struct RoundStats
{
    std::vector<bool> d2d_infeasible;
    std::vector<bool> cell_infeasible;
    double max_power_change = 0.0;
};

struct RoundRecord
{
    std::vector<LinkMetrics> d2d;
    std::vector<LinkMetrics> cell;
    PowerProfile snapshot;
    RoundStats stats;
};

struct GameTrace
{
    std::vector<RoundRecord> rounds;
    std::optional<std::size_t> converged_round; // 1-based

    const PowerProfile &final_profile() const { return rounds.back().snapshot; }
};

inline Environment aggregate_interference(const PowerProfile &pp, const GainTensor &g, const SystemParams &p,
                                          LinkId link)
{
    Environment env;
    env.kind = link.kind;
    if (link.kind == LinkKind::D2D)
    {
        env.interference.resize(p.n_cell);
        env.gain = g.d2d_direct.row(link.index);
        for (std::size_t k = 0; k < p.n_cell; ++k)
            env.interference[k] = interference_plus_noise(pp, g, p, link, k);
    }
    else
    {
        env.interference = {interference_plus_noise(pp, g, p, link, link.index)};
        env.gain = {g.cell_direct[link.index]};
    }
    return env;
}

inline std::vector<double> own_power(const PowerProfile &pp, LinkId link)
{
    if (link.kind == LinkKind::D2D)
        return pp.d2d_power.row(link.index);
    return {pp.cell_power[link.index]};
}

inline void set_own_power(PowerProfile &pp, LinkId link, const std::vector<double> &power)
{
    if (link.kind == LinkKind::D2D)
        pp.d2d_power.set_row(link.index, power);
    else
        pp.cell_power[link.index] = power.front();
}

inline std::vector<LinkId> update_sequence(const SystemParams &p, UpdateOrder order, std::mt19937_64 &rng)
{
    std::vector<LinkId> seq;
    seq.reserve(p.n_d2d + p.n_cell);
    for (std::size_t i = 0; i < p.n_d2d; ++i)
        seq.push_back(LinkId::d2d(i));
    for (std::size_t k = 0; k < p.n_cell; ++k)
        seq.push_back(LinkId::cellular(k));
    if (order == UpdateOrder::RandomPermutation)
        std::shuffle(seq.begin(), seq.end(), rng);
    return seq;
}

namespace detail
{
// D2D row uniform on the budget simplex scaled by U[0,1]; cellular U[0, budget].
inline std::vector<double> random_strategy(LinkKind kind, std::size_t channels, const SystemParams &p,
                                           std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (kind == LinkKind::Cellular)
        return {u(rng) * p.cell_power_budget};
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(channels);
    double total = 0.0;
    for (auto &x : w)
        total += (x = e(rng));
    const double spend = u(rng) * p.d2d_power_budget;
    for (auto &x : w)
        x = total > 0.0 ? spend * x / total : 0.0;
    return w;
}
} // namespace detail

// One sequential pass over all players. Each player reacts to the current,
// partially updated profile. Infeasible players keep their previous row.
inline std::pair<PowerProfile, RoundStats> best_response_round(PowerProfile profile, const GainTensor &g,
                                                               const SystemParams &p, const GameConfig &cfg,
                                                               std::mt19937_64 &rng)
{
    RoundStats stats;
    stats.d2d_infeasible.assign(p.n_d2d, false);
    stats.cell_infeasible.assign(p.n_cell, false);

    for (LinkId link : update_sequence(p, cfg.update_order, rng))
    {
        const auto env = aggregate_interference(profile, g, p, link);
        const auto before = own_power(profile, link);
        std::vector<double> next;
        switch (cfg.policy)
        {
        case Policy::EnergyEfficient:
        {
            auto rep = dinkelbach_solve(link.kind, env, p, cfg.dual);
            if (!rep.feasible)
            {
                (link.kind == LinkKind::D2D ? stats.d2d_infeasible : stats.cell_infeasible)[link.index] = true;
                next = before;
            }
            else
                next = std::move(rep.best_power);
            break;
        }
        case Policy::SpectralEfficient:
            next = max_se_allocation(env, constraints_for(p, link.kind).power_budget);
            break;
        case Policy::Random:
            next = detail::random_strategy(link.kind, env.size(), p, rng);
            break;
        }
        for (std::size_t k = 0; k < next.size(); ++k)
            stats.max_power_change = std::max(stats.max_power_change, std::abs(next[k] - before[k]));
        set_own_power(profile, link, next);
    }
    return {std::move(profile), std::move(stats)};
}

inline RoundRecord record_round(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, RoundStats stats)
{
    RoundRecord rec;
    for (std::size_t i = 0; i < p.n_d2d; ++i)
        rec.d2d.push_back(link_metrics(pp, g, p, LinkId::d2d(i)));
    for (std::size_t k = 0; k < p.n_cell; ++k)
        rec.cell.push_back(link_metrics(pp, g, p, LinkId::cellular(k)));
    rec.snapshot = pp;
    rec.stats = std::move(stats);
    return rec;
}

// Runs up to max_rounds rounds from `initial` (all-zero when omitted) and
// stops once no entry of the profile moves by more than power_change_tol.
inline GameTrace run_game(const GainTensor &g, const SystemParams &p, const GameConfig &cfg,
                          std::optional<PowerProfile> initial = std::nullopt)
{
    std::mt19937_64 rng(cfg.seed);
    PowerProfile profile = initial ? *initial : PowerProfile(p);
    GameTrace trace;
    for (std::size_t r = 1; r <= cfg.max_rounds; ++r)
    {
        auto [next, stats] = best_response_round(std::move(profile), g, p, cfg, rng);
        profile = std::move(next);
        const bool settled = stats.max_power_change <= cfg.power_change_tol;
        trace.rounds.push_back(record_round(profile, g, p, std::move(stats)));
        if (settled)
        {
            trace.converged_round = r;
            break;
        }
    }
    return trace;
}

// Largest EE gain any single feasible player could obtain by deviating
// unilaterally to its best response.
inline double nash_gap(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, const DualConfig &dual = {})
{
    double gap = 0.0;
    auto audit = [&](LinkId link)
    {
        const auto env = aggregate_interference(pp, g, p, link);
        const auto rep = dinkelbach_solve(link.kind, env, p, dual);
        if (!rep.feasible)
            return;
        gap = std::max(gap, rep.ee - link_ee(pp, g, p, link));
    };
    for (std::size_t i = 0; i < p.n_d2d; ++i)
        audit(LinkId::d2d(i));
    for (std::size_t k = 0; k < p.n_cell; ++k)
        audit(LinkId::cellular(k));
    return gap;
}

inline bool check_nash(const PowerProfile &pp, const GainTensor &g, const SystemParams &p, double epsilon,
                       const DualConfig &dual = {})
{
    return nash_gap(pp, g, p, dual) <= epsilon;
}

} // namespace d2dee

#endif
