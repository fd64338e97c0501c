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


#ifndef D2DEE_PROPERTY_SUITES_HPP
#define D2DEE_PROPERTY_SUITES_HPP

// Randomized structural checks shared by the unit tests and the acceptance
// run. Each suite returns how many samples it checked and how many failed.

#include "test_support.hpp"

#include <d2dee/oracle.hpp>

#include <string>

namespace d2dee::test
{

struct SuiteResult
{
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;

    bool ok() const { return checked > 0 && failed == 0; }
    void expect(bool cond)
    {
        ++checked;
        failed += cond ? 0 : 1;
    }
};

inline LinkId link_at(const SystemParams &p, std::size_t l)
{
    return l < p.n_d2d ? LinkId::d2d(l) : LinkId::cellular(l - p.n_d2d);
}

inline double transformed(const Environment &env, const std::vector<double> &x, double q, const SystemParams &p,
                          LinkKind kind)
{
    return env_se(env, x) - q * env_power(env, x, p.pa_efficiency, constraints_for(p, kind).circuit_power);
}

// Random point of the feasible set (budget simplex scaled by U[0,1]).
inline std::vector<double> random_point(const Environment &env, double budget, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(env.size());
    double s = 0.0;
    for (auto &x : w)
        s += (x = -std::log(1.0 - u(rng)));
    const double spend = u(rng) * budget;
    for (auto &x : w)
        x *= spend / s;
    return w;
}

// SE strictly increasing and EE single-peaked along own-power sweeps.
inline SuiteResult own_power_monotonicity(const SystemParams &p, std::size_t instances)
{
    SuiteResult r{"SE monotone / EE unimodal in own power"};
    std::mt19937_64 rng(101);
    for (std::uint64_t seed = 0; seed < instances; ++seed)
    {
        const auto link = link_at(p, seed % (p.n_d2d + p.n_cell));
        const auto env = random_environment(p, link, seed);
        const auto budget = constraints_for(p, link.kind).power_budget;
        const auto base = random_point(env, budget, rng);
        for (std::size_t k = 0; k < env.size(); ++k)
        {
            r.expect(oracle::quasiconcavity_probe(env, p, link.kind, k, 201, base));
            auto x = base;
            double prev = -1.0;
            bool increasing = true;
            for (int step = 0; step <= 10; ++step)
            {
                x[k] = budget * step / 10.0;
                const double se = env_se(env, x);
                increasing = increasing && se > prev;
                prev = se;
            }
            r.expect(increasing);
        }
    }
    return r;
}

// Midpoint concavity of SE - q * P_total between two feasible points.
inline SuiteResult transformed_concavity(const SystemParams &p, std::size_t instances)
{
    SuiteResult r{"midpoint concavity"};
    std::mt19937_64 rng(202);
    for (std::uint64_t seed = 0; seed < instances; ++seed)
    {
        const auto link = link_at(p, seed % (p.n_d2d + p.n_cell));
        const auto env = random_environment(p, link, seed);
        const auto budget = constraints_for(p, link.kind).power_budget;
        for (int trial = 0; trial < 10; ++trial)
        {
            const auto a = random_point(env, budget, rng);
            const auto b = random_point(env, budget, rng);
            std::vector<double> m(a.size());
            for (std::size_t k = 0; k < m.size(); ++k)
                m[k] = 0.5 * (a[k] + b[k]);
            const double q = std::uniform_real_distribution<double>(0.0, 30.0)(rng);
            const double chord = 0.5 * (transformed(env, a, q, p, link.kind) + transformed(env, b, q, p, link.kind));
            r.expect(transformed(env, m, q, p, link.kind) >= chord - 1e-12);
        }
    }
    return r;
}

inline double f_of_q(const Environment &env, double q, const SystemParams &p, LinkKind kind)
{
    return transformed(env, solve_transformed(kind, q, env, p).power, q, p, kind);
}

// F(q) at the inner optimum is nonincreasing on a 10-point grid.
inline SuiteResult parametric_monotonicity(const SystemParams &p, std::size_t instances)
{
    SuiteResult r{"F(q) nonincreasing"};
    for (std::uint64_t seed = 0; seed < instances; ++seed)
    {
        const auto link = link_at(p, seed % (p.n_d2d + p.n_cell));
        const auto env = random_environment(p, link, seed);
        const auto rep = dinkelbach_solve(link.kind, env, p);
        if (!rep.feasible)
            continue;
        double prev = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int i = 0; i < 10; ++i)
        {
            const double f = f_of_q(env, 2.0 * rep.ee * i / 9.0, p, link.kind);
            ok = ok && f <= prev + 1e-12;
            prev = f;
        }
        r.expect(ok);
    }
    return r;
}

// F(q) >= 0 when q is the EE of some feasible point.
inline SuiteResult parametric_nonnegativity(const SystemParams &p, std::size_t instances)
{
    SuiteResult r{"F(q(p)) >= 0"};
    std::mt19937_64 rng(404);
    for (std::uint64_t seed = 0; seed < instances; ++seed)
    {
        const auto link = link_at(p, seed % (p.n_d2d + p.n_cell));
        const auto env = random_environment(p, link, seed);
        const auto c = constraints_for(p, link.kind);
        if (!check_feasibility(link.kind, env, p))
            continue;
        for (int trial = 0; trial < 20; ++trial)
        {
            const auto x = random_point(env, c.power_budget, rng);
            if (env_se(env, x) < c.se_floor)
                continue;
            const double q = env_se(env, x) / env_power(env, x, p.pa_efficiency, c.circuit_power);
            r.expect(f_of_q(env, q, p, link.kind) >= -1e-12);
        }
    }
    return r;
}

// Strict q_trace increase and the fixed-point gap on every feasible solve.
inline SuiteResult ratio_progress(const SystemParams &p, std::size_t instances)
{
    SuiteResult r{"q_trace strictly increasing"};
    for (std::uint64_t seed = 0; seed < instances; ++seed)
        for (std::size_t l = 0; l < p.n_d2d + p.n_cell; ++l)
        {
            const auto link = link_at(p, l);
            const auto env = random_environment(p, link, seed);
            const auto rep = dinkelbach_solve(link.kind, env, p);
            if (!rep.feasible)
                continue;
            bool ok = rep.converged && std::abs(rep.objective) <= p.tolerance;
            for (std::size_t n = 1; n < rep.q_trace.size(); ++n)
                ok = ok && rep.q_trace[n] > rep.q_trace[n - 1];
            r.expect(ok);
        }
    return r;
}

// Converged energy-efficient games pass the Nash audit.
inline SuiteResult nash_audit(const SystemParams &p, std::size_t games, double epsilon)
{
    SuiteResult r{"Nash audit"};
    for (std::uint64_t seed = 0; r.checked < games && seed < 20 * games; ++seed)
    {
        const auto in = random_instance(p, seed);
        GameConfig cfg;
        cfg.seed = seed;
        const auto trace = run_game(in.gains, p, cfg);
        if (!trace.converged_round)
            continue;
        r.expect(check_nash(trace.final_profile(), in.gains, p, epsilon));
    }
    if (r.checked < games)
        ++r.failed;
    return r;
}

// Analytic SE and EE strictly decrease in the coupling over the dB grid.
inline SuiteResult coupling_monotonicity()
{
    SuiteResult r{"analytic monotonicity in I"};
    for (auto kind : {LinkKind::D2D, LinkKind::Cellular})
        for (double se : {1.0, 3.0, 5.0})
        {
            double prev_se = std::numeric_limits<double>::infinity();
            double prev_ee = prev_se;
            for (double db : {-20.0, -15.0, -10.0})
            {
                SymmetricCase c;
                c.coupling = db_to_linear(db);
                const double s = analytic_se(c, kind);
                const double e = analytic_ee(se, c, kind);
                r.expect(s < prev_se && e < prev_ee);
                prev_se = s;
                prev_ee = e;
            }
        }
    return r;
}

// Closed forms against the general metrics on uniform-gain networks.
inline SuiteResult analytic_consistency(double rel_tol)
{
    SuiteResult r{"analytic vs exact metrics"};
    for (double db : {-20.0, -15.0, -10.0})
        for (double pd : {0.01, 0.05, 0.2})
        {
            SymmetricCase c;
            c.coupling = db_to_linear(db);
            c.d2d_power = pd;
            SystemParams p;
            p.noise_power = 1e-15 * std::min(pd, c.cell_power);
            GainTensor g(p.n_d2d, p.n_cell);
            PowerProfile pp(p);
            for (std::size_t k = 0; k < p.n_cell; ++k)
            {
                g.cell_direct[k] = 1.0;
                pp.cell_power[k] = c.cell_power;
                for (std::size_t i = 0; i < p.n_d2d; ++i)
                {
                    g.d2d_direct(i, k) = 1.0;
                    g.cell_to_d2d(k, i) = c.coupling;
                    g.d2d_to_bs(i, k) = c.coupling;
                    pp.d2d_power(i, k) = pd;
                    for (std::size_t j = 0; j < p.n_d2d; ++j)
                        g.cross(j, i, k) = j == i ? 0.0 : c.coupling;
                }
            }
            auto close = [&](double a, double b) { return std::abs(a - b) <= rel_tol * std::abs(b); };
            for (std::size_t l = 0; l < p.n_d2d + p.n_cell; ++l)
            {
                const auto link = link_at(p, l);
                const auto m = link_metrics(pp, g, p, link);
                r.expect(close(m.se, analytic_se(c, link.kind)) && close(m.ee, analytic_ee(m.se, c, link.kind)));
            }
        }
    return r;
}

} // namespace d2dee::test

#endif
