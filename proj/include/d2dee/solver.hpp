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

#ifndef D2DEE_SOLVER_HPP
#define D2DEE_SOLVER_HPP

// Single-link energy-efficiency maximization.
//
// The outer loop is Dinkelbach's method: for a fixed ratio q the link solves
//
//     max  SE(p) - q * P_total(p)   s.t.  SE(p) >= floor,  sum_k p_k <= budget
//
// and q is replaced by SE/P_total of the maximizer until the subtractive
// objective drops below the tolerance. The inner problem is concave; its
// KKT point is a water-filling allocation
//
//     p_k = [ eta (1 + alpha) log2(e) / (q + eta beta) - I_k / g_k ]^+
//
// where alpha prices the SE floor and beta the power budget. At most one
// of the two multipliers is positive at a strictly feasible optimum, so
// the dual reduces to a one-dimensional root find on the water level.

#include "environment.hpp"
#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace d2dee
{

inline constexpr double kLog2e = std::numbers::log2e;

// Strict-interior margin applied to the SE floor when testing feasibility.
inline constexpr double kFeasibilityMargin = 1e-9;

class InnerNoConverge : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Lagrange multipliers of the transformed problem: (alpha, beta) for D2D
// links, (delta, theta) for cellular UEs.
struct DualState
{
    double alpha = 0.0; // SE floor
    double beta = 0.0;  // power budget
    double step_alpha = 0.1;
    double step_beta = 0.1;
    std::size_t iter = 0;
};

enum class InnerMethod
{
    Exact,      // closed-form water-level root find
    Subgradient // projected gradient on alpha, diminishing steps
};

struct DualConfig
{
    InnerMethod method = InnerMethod::Exact;
    double step0 = 0.1; // mu_0 in mu(tau) = mu_0 / sqrt(tau)
    std::size_t max_inner_iters = 5000;
    double budget_tol = 1e-6; // W
    double se_tol = 1e-4;     // bits/s/Hz
};

struct InnerSolution
{
    std::vector<double> power;
    DualState dual;
    std::size_t inner_iters = 0;
};

struct SolveReport
{
    std::vector<double> best_power;
    std::vector<double> q_trace; // ratio used at each outer iteration, starting at 0
    double se = 0.0;
    double total_power = 0.0;
    double ee = 0.0;
    double objective = 0.0; // SE - q * P_total at the last iteration
    DualState dual;
    std::size_t outer_iters = 0;
    std::size_t inner_iters_total = 0;
    bool converged = false;
    bool feasible = false;
};

// ---- water levels ----

namespace detail
{
// Inverse channel qualities I_k / g_k of the channels with g_k > 0, ascending.
inline std::vector<double> sorted_floors(const Environment &env)
{
    std::vector<double> r;
    r.reserve(env.gain.size());
    for (std::size_t k = 0; k < env.gain.size(); ++k)
        if (env.gain[k] > 0.0)
            r.push_back(env.interference[k] / env.gain[k]);
    std::sort(r.begin(), r.end());
    return r;
}
} // namespace detail

inline std::vector<double> fill_to_level(const Environment &env, double level)
{
    std::vector<double> p(env.size(), 0.0);
    for (std::size_t k = 0; k < env.size(); ++k)
        if (env.gain[k] > 0.0)
            p[k] = std::max(0.0, level - env.interference[k] / env.gain[k]);
    return p;
}

// Water level whose allocation spends exactly `power` W. Returns 0 when no
// channel has positive gain.
inline double level_for_power(const Environment &env, double power)
{
    const auto r = detail::sorted_floors(env);
    if (r.empty())
        return 0.0;
    double acc = 0.0;
    for (std::size_t m = 1; m <= r.size(); ++m)
    {
        acc += r[m - 1];
        const double level = (power + acc) / static_cast<double>(m);
        if (m == r.size() || level <= r[m])
            return level;
    }
    return r.back();
}

// Water level whose allocation reaches SE `target` exactly. Infinite when
// no channel has positive gain and target > 0.
inline double level_for_se(const Environment &env, double target)
{
    const auto r = detail::sorted_floors(env);
    if (r.empty())
        return target > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (target <= 0.0)
        return r.front();
    double acc = 0.0; // sum of log2 r over the active set
    for (std::size_t m = 1; m <= r.size(); ++m)
    {
        acc += std::log2(r[m - 1]);
        const double level = std::exp2((target + acc) / static_cast<double>(m));
        if (m == r.size() || level <= r[m])
            return level;
    }
    return std::numeric_limits<double>::infinity();
}

inline double water_level(double q, const DualState &dual, double eta)
{
    const double denom = q + eta * dual.beta;
    if (!(denom > 0.0))
        throw std::domain_error("water level is unbounded: need q > 0 or beta > 0");
    return eta * (1.0 + dual.alpha) * kLog2e / denom;
}

// Per-channel water-filling for a D2D pair at ratio q and multipliers (alpha, beta).
inline std::vector<double> waterfill_d2d(double q, const DualState &dual, const Environment &env,
                                         const SystemParams &params)
{
    return fill_to_level(env, water_level(q, dual, params.pa_efficiency));
}

// Scalar analogue for a cellular UE; dual holds (delta, theta).
inline double waterfill_cellular(double q, const DualState &dual, const Environment &env, const SystemParams &params)
{
    if (env.size() != 1)
        throw std::invalid_argument("waterfill_cellular: environment must have one channel");
    return fill_to_level(env, water_level(q, dual, params.pa_efficiency)).front();
}

// Projected gradient step on the multipliers. `spent_power` is the raw
// transmit sum compared against the budget, not the PA-scaled power.
inline DualState update_multipliers(DualState dual, double achieved_se, double spent_power, double floor,
                                    double budget)
{
    dual.alpha = std::max(0.0, dual.alpha - dual.step_alpha * (achieved_se - floor));
    dual.beta = std::max(0.0, dual.beta + dual.step_beta * (spent_power - budget));
    ++dual.iter;
    return dual;
}

// ---- inner problem ----

namespace detail
{
inline double sum(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

// beta that makes the budget bind at the given alpha; 0 if it is slack.
inline double budget_beta(const Environment &env, double q, double alpha, double budget, double eta)
{
    const double free_level = q > 0.0 ? eta * (1.0 + alpha) * kLog2e / q : std::numeric_limits<double>::infinity();
    const double capped = level_for_power(env, budget);
    if (capped <= 0.0 || free_level <= capped)
        return 0.0;
    return std::max(0.0, ((1.0 + alpha) * kLog2e / capped) - q / eta);
}

inline InnerSolution solve_exact(double q, const Environment &env, const SystemParams &params,
                                 const LinkConstraints &c, const DualConfig &cfg)
{
    const double eta = params.pa_efficiency;
    InnerSolution out;

    const double level_q = eta * kLog2e / q;
    out.power = fill_to_level(env, level_q);
    out.inner_iters = 1;

    if (sum(out.power) > c.power_budget)
    {
        const double level_b = level_for_power(env, c.power_budget);
        out.dual.beta = std::max(0.0, kLog2e / level_b - q / eta);
        out.power = fill_to_level(env, level_b);
        ++out.inner_iters;
        if (env_se(env, out.power) < c.se_floor - cfg.se_tol)
            throw InnerNoConverge("SE floor unreachable within the power budget");
        return out;
    }
    if (env_se(env, out.power) >= c.se_floor)
        return out;

    const double level_r = level_for_se(env, c.se_floor);
    ++out.inner_iters;
    out.power = fill_to_level(env, level_r);
    out.dual.alpha = std::max(0.0, level_r * q / (eta * kLog2e) - 1.0);
    if (!std::isfinite(level_r) || sum(out.power) > c.power_budget + cfg.budget_tol)
        throw InnerNoConverge("SE floor requires more than the power budget");
    return out;
}

inline InnerSolution solve_subgradient(double q, const Environment &env, const SystemParams &params,
                                       const LinkConstraints &c, const DualConfig &cfg)
{
    const double eta = params.pa_efficiency;
    InnerSolution out;
    DualState dual;
    double se_res = 0.0;
    double budget_res = 0.0;

    for (std::size_t tau = 1; tau <= cfg.max_inner_iters; ++tau)
    {
        dual.beta = budget_beta(env, q, dual.alpha, c.power_budget, eta);
        out.power = fill_to_level(env, water_level(q, dual, eta));
        out.inner_iters = tau;

        const double se = env_se(env, out.power);
        const double spent = sum(out.power);
        se_res = se - c.se_floor;
        budget_res = spent - c.power_budget;

        const bool budget_ok = budget_res <= cfg.budget_tol;
        const bool floor_ok = se_res >= -cfg.se_tol && (dual.alpha <= 0.0 || std::abs(se_res) <= cfg.se_tol);
        if (budget_ok && floor_ok)
        {
            out.dual = dual;
            return out;
        }
        dual.step_alpha = cfg.step0 / std::sqrt(static_cast<double>(tau));
        dual.step_beta = dual.step_alpha;
        dual = update_multipliers(dual, se, spent, c.se_floor, c.power_budget);
    }
    out.dual = dual;
    const bool floor_bad = se_res < -10.0 * cfg.se_tol || (dual.alpha > 0.0 && std::abs(se_res) > 10.0 * cfg.se_tol);
    if (budget_res > 10.0 * cfg.budget_tol || floor_bad)
        throw InnerNoConverge("dual gradient iterations hit the cap");
    return out;
}
} // namespace detail

// Budget-constrained SE-maximizing allocation (spends the whole budget
// across channels with positive gain).
inline std::vector<double> max_se_allocation(const Environment &env, double budget)
{
    return fill_to_level(env, level_for_power(env, budget));
}

// Solves the subtractive-form problem for a fixed ratio q. q = 0 runs the
// SE-max limit: the budget binds and beta = log2(e) / level.
inline InnerSolution solve_transformed(LinkKind kind, double q, const Environment &env, const SystemParams &params,
                                       const DualConfig &cfg = {})
{
    const auto c = constraints_for(params, kind);
    if (q < 0.0)
        throw std::invalid_argument("solve_transformed: q must be nonnegative");
    if (q == 0.0)
    {
        InnerSolution out;
        const double level = level_for_power(env, c.power_budget);
        out.power = fill_to_level(env, level);
        out.dual.beta = level > 0.0 ? kLog2e / level : 0.0;
        out.inner_iters = 1;
        if (env_se(env, out.power) < c.se_floor - cfg.se_tol)
            throw InnerNoConverge("SE floor unreachable within the power budget");
        return out;
    }
    if (cfg.method == InnerMethod::Subgradient)
        return detail::solve_subgradient(q, env, params, c, cfg);
    return detail::solve_exact(q, env, params, c, cfg);
}

// Strict feasibility of the SE floor: the full-budget SE-max allocation
// must clear floor + kFeasibilityMargin. A nonpositive floor is vacuous.
inline bool check_feasibility(LinkKind kind, const Environment &env, const SystemParams &params)
{
    const auto c = constraints_for(params, kind);
    if (c.se_floor <= 0.0)
        return true;
    return env_se(env, max_se_allocation(env, c.power_budget)) > c.se_floor + kFeasibilityMargin;
}

// Dinkelbach iteration from q = 0. Stops once SE - q * P_total <= tolerance
// or after max_outer_iters; an infeasible link returns feasible = false
// with an all-zero allocation.
inline SolveReport dinkelbach_solve(LinkKind kind, const Environment &env, const SystemParams &params,
                                    const DualConfig &cfg = {})
{
    const auto c = constraints_for(params, kind);
    SolveReport rep;
    rep.best_power.assign(env.size(), 0.0);
    rep.feasible = check_feasibility(kind, env, params);
    if (!rep.feasible)
        return rep;

    double q = 0.0;
    for (std::size_t n = 1; n <= params.max_outer_iters; ++n)
    {
        auto sol = solve_transformed(kind, q, env, params, cfg);
        const double se = env_se(env, sol.power);
        const double total = env_power(env, sol.power, params.pa_efficiency, c.circuit_power);

        rep.q_trace.push_back(q);
        rep.outer_iters = n;
        rep.inner_iters_total += sol.inner_iters;
        rep.best_power = std::move(sol.power);
        rep.dual = sol.dual;
        rep.se = se;
        rep.total_power = total;
        rep.ee = total > 0.0 ? se / total : 0.0;
        rep.objective = se - q * total;

        if (rep.objective <= params.tolerance)
        {
            rep.converged = true;
            break;
        }
        q = rep.ee;
    }
    return rep;
}

} // namespace d2dee

#endif
