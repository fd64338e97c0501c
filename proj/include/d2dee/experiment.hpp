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

#ifndef D2DEE_EXPERIMENT_HPP
#define D2DEE_EXPERIMENT_HPP

// Seeded Monte Carlo experiments and their CSV/JSON outputs.
//
// Config files use mW for powers and dB for coupling factors; everything is
// converted to W / linear on load. Every run derives its own seeds from
// (config seed, run index), so results do not depend on the thread count.

#include "analytic.hpp"
#include "game.hpp"
#include "model.hpp"
#include "scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace d2dee
{

enum class ExperimentKind
{
    ScenarioDump,
    GameConvergence,
    TradeoffEmpiricalD2D,
    TradeoffEmpiricalCell,
    TradeoffAnalyticD2D,
    TradeoffAnalyticCell
};

inline constexpr std::array<std::pair<ExperimentKind, const char *>, 6> kExperimentNames{{
    {ExperimentKind::ScenarioDump, "scenario_dump"},
    {ExperimentKind::GameConvergence, "game_convergence"},
    {ExperimentKind::TradeoffEmpiricalD2D, "tradeoff_empirical_d2d"},
    {ExperimentKind::TradeoffEmpiricalCell, "tradeoff_empirical_cell"},
    {ExperimentKind::TradeoffAnalyticD2D, "tradeoff_analytic_d2d"},
    {ExperimentKind::TradeoffAnalyticCell, "tradeoff_analytic_cell"},
}};

inline std::string experiment_name(ExperimentKind k)
{
    for (const auto &[kind, name] : kExperimentNames)
        if (kind == k)
            return name;
    return "unknown";
}

inline ExperimentKind parse_experiment(const std::string &s)
{
    for (const auto &[kind, name] : kExperimentNames)
        if (s == name)
            return kind;
    throw std::invalid_argument("unknown experiment: " + s);
}

struct SeSweep
{
    double min = 0.0;
    double max = 16.0;
    double step = 1.0;

    std::vector<double> values() const
    {
        std::vector<double> v;
        const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i)
            v.push_back(min + step * static_cast<double>(i));
        return v;
    }
};

struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::GameConvergence;
    SystemParams params{};
    std::size_t n_runs = 1000;
    std::uint64_t seed = 1;
    SeSweep se_sweep{};
    std::vector<double> coupling_db{-20.0, -15.0, -10.0};
    std::filesystem::path output_dir = "out";
    std::size_t max_rounds = 10;
    double cell_radius = 500.0;     // m
    double d2d_max_distance = 25.0; // m
    double infinite_budget = 1e6;   // W, stand-in for an unlimited budget
    std::size_t unbounded_outer_iters = 20; // Dinkelbach cap for unlimited-budget solves
    double analytic_d2d_power = 0.2;  // W per channel
    double analytic_cell_power = 0.2; // W
    std::size_t threads = 0;          // 0: hardware concurrency
};

inline std::size_t default_runs(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::GameConvergence:
        return 1000;
    case ExperimentKind::TradeoffEmpiricalD2D:
    case ExperimentKind::TradeoffEmpiricalCell:
        return 500;
    default:
        return 1;
    }
}

inline void validate_config(const ExperimentConfig &c)
{
    require_valid(c.params);
    if (c.n_runs < 1)
        throw std::invalid_argument("config: n_runs must be >= 1");
    if (!(c.se_sweep.step > 0.0) || c.se_sweep.max < c.se_sweep.min)
        throw std::invalid_argument("config: se_sweep needs step > 0 and max >= min");
    if (c.max_rounds < 1)
        throw std::invalid_argument("config: max_rounds must be >= 1");
    if (!(c.cell_radius > 0.0) || !(c.d2d_max_distance > 0.0) || c.d2d_max_distance > c.cell_radius)
        throw std::invalid_argument("config: need 0 < d2d_max_distance_m <= cell_radius_m");
    if (!(c.infinite_budget > 0.0) || c.analytic_d2d_power < 0.0 || c.analytic_cell_power < 0.0)
        throw std::invalid_argument("config: powers must be nonnegative");
}

// Reads a JSON config (mW / dB units). Unknown keys are rejected.
inline ExperimentConfig config_from_json(const nlohmann::json &j)
{
    static const std::set<std::string> top_keys{
        "experiment", "params",       "n_runs",           "seed",          "se_sweep",
        "coupling_list", "output_dir", "max_rounds",      "cell_radius_m", "d2d_max_distance_m",
        "infinite_budget_w", "unbounded_outer_iters", "analytic_d2d_power_mw", "analytic_cell_power_mw", "threads"};
    static const std::set<std::string> param_keys{
        "n_d2d",          "n_cell",       "pa_efficiency", "circuit_power_mw", "noise_power_mw",
        "d2d_power_budget_mw", "cell_power_budget_mw", "d2d_se_floor", "cell_se_floor", "tolerance",
        "max_outer_iters"};

    if (!j.is_object())
        throw std::invalid_argument("config: top level must be an object");
    for (const auto &[key, _] : j.items())
        if (!top_keys.contains(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");

    ExperimentConfig c;
    if (j.contains("experiment"))
        c.experiment = parse_experiment(j.at("experiment").get<std::string>());
    c.n_runs = default_runs(c.experiment);

    if (j.contains("params"))
    {
        const auto &p = j.at("params");
        for (const auto &[key, _] : p.items())
            if (!param_keys.contains(key))
                throw std::invalid_argument("config: unknown params key '" + key + "'");
        auto &sp = c.params;
        sp.n_d2d = p.value("n_d2d", sp.n_d2d);
        sp.n_cell = p.value("n_cell", sp.n_cell);
        sp.pa_efficiency = p.value("pa_efficiency", sp.pa_efficiency);
        sp.circuit_power = mw_to_w(p.value("circuit_power_mw", w_to_mw(sp.circuit_power)));
        sp.noise_power = mw_to_w(p.value("noise_power_mw", w_to_mw(sp.noise_power)));
        sp.d2d_power_budget = mw_to_w(p.value("d2d_power_budget_mw", w_to_mw(sp.d2d_power_budget)));
        sp.cell_power_budget = mw_to_w(p.value("cell_power_budget_mw", w_to_mw(sp.cell_power_budget)));
        sp.d2d_se_floor = p.value("d2d_se_floor", sp.d2d_se_floor);
        sp.cell_se_floor = p.value("cell_se_floor", sp.cell_se_floor);
        sp.tolerance = p.value("tolerance", sp.tolerance);
        sp.max_outer_iters = p.value("max_outer_iters", sp.max_outer_iters);
    }
    c.n_runs = j.value("n_runs", c.n_runs);
    c.seed = j.value("seed", c.seed);
    if (j.contains("se_sweep"))
    {
        const auto &s = j.at("se_sweep");
        c.se_sweep.min = s.value("min", c.se_sweep.min);
        c.se_sweep.max = s.value("max", c.se_sweep.max);
        c.se_sweep.step = s.value("step", c.se_sweep.step);
    }
    if (j.contains("coupling_list"))
        c.coupling_db = j.at("coupling_list").get<std::vector<double>>();
    if (j.contains("output_dir"))
        c.output_dir = j.at("output_dir").get<std::string>();
    c.max_rounds = j.value("max_rounds", c.max_rounds);
    c.cell_radius = j.value("cell_radius_m", c.cell_radius);
    c.d2d_max_distance = j.value("d2d_max_distance_m", c.d2d_max_distance);
    c.infinite_budget = j.value("infinite_budget_w", c.infinite_budget);
    c.unbounded_outer_iters = j.value("unbounded_outer_iters", c.unbounded_outer_iters);
    c.analytic_d2d_power = mw_to_w(j.value("analytic_d2d_power_mw", w_to_mw(c.analytic_d2d_power)));
    c.analytic_cell_power = mw_to_w(j.value("analytic_cell_power_mw", w_to_mw(c.analytic_cell_power)));
    c.threads = j.value("threads", c.threads);
    validate_config(c);
    return c;
}

inline ExperimentConfig load_config(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("cannot open config file: " + file.string());
    return config_from_json(nlohmann::json::parse(in));
}

// splitmix64 finalizer; decorrelates per-run streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run, std::uint64_t stream)
{
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (run * 4 + stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Calls fn(run) for run in [0, n) on a small thread pool. The first
// exception thrown by any run is rethrown after all workers join.
template <typename Fn>
void parallel_runs(std::size_t n, std::size_t threads, Fn &&fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]
    {
        for (std::size_t r = next++; r < n; r = next++)
        {
            try
            {
                fn(r);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };
    if (threads <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
}

inline std::string fmt6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct RunNetwork
{
    Topology topology;
    GainTensor gains;
};

inline RunNetwork make_network(const ExperimentConfig &c, std::size_t run)
{
    RunNetwork net;
    net.topology = generate_topology(c.params, c.cell_radius, c.d2d_max_distance, derive_seed(c.seed, run, 0));
    net.gains = compute_gains(net.topology, derive_seed(c.seed, run, 1));
    return net;
}

// ---- game convergence ----

inline constexpr std::array<Policy, 3> kAllPolicies{Policy::EnergyEfficient, Policy::Random,
                                                    Policy::SpectralEfficient};

struct GameConvergenceResult
{
    // [policy][round], seed-averaged mean EE over links.
    std::array<std::vector<double>, 3> mean_ee_d2d;
    std::array<std::vector<double>, 3> mean_ee_cell;
    std::array<std::vector<double>, 3> norm_ee_d2d;
    std::array<std::vector<double>, 3> norm_ee_cell;
    std::vector<std::size_t> ee_policy_converged_round; // per run, 0 if not settled
};

inline GameConvergenceResult game_convergence(const ExperimentConfig &c)
{
    const std::size_t rounds = c.max_rounds;
    // Per run: [policy][round] means.
    struct RunResult
    {
        std::array<std::vector<double>, 3> d2d, cell;
        std::size_t converged = 0;
    };
    std::vector<RunResult> runs(c.n_runs);

    parallel_runs(c.n_runs, c.threads,
                  [&](std::size_t r)
                  {
                      const auto net = make_network(c, r);
                      for (std::size_t pi = 0; pi < kAllPolicies.size(); ++pi)
                      {
                          GameConfig gc;
                          gc.policy = kAllPolicies[pi];
                          gc.max_rounds = rounds;
                          gc.seed = derive_seed(c.seed, r, 2);
                          const auto trace = run_game(net.gains, c.params, gc);
                          auto &d = runs[r].d2d[pi];
                          auto &e = runs[r].cell[pi];
                          for (std::size_t t = 0; t < rounds; ++t)
                          {
                              // A settled game keeps its last profile.
                              const auto &rec = trace.rounds[std::min(t, trace.rounds.size() - 1)];
                              double sd = 0.0, sc = 0.0;
                              for (const auto &m : rec.d2d)
                                  sd += m.ee;
                              for (const auto &m : rec.cell)
                                  sc += m.ee;
                              d.push_back(sd / static_cast<double>(rec.d2d.size()));
                              e.push_back(sc / static_cast<double>(rec.cell.size()));
                          }
                          if (gc.policy == Policy::EnergyEfficient)
                              runs[r].converged = trace.converged_round.value_or(0);
                      }
                  });

    GameConvergenceResult out;
    double max_d2d = 0.0, max_cell = 0.0;
    for (std::size_t pi = 0; pi < 3; ++pi)
    {
        out.mean_ee_d2d[pi].assign(rounds, 0.0);
        out.mean_ee_cell[pi].assign(rounds, 0.0);
        for (const auto &run : runs)
            for (std::size_t t = 0; t < rounds; ++t)
            {
                out.mean_ee_d2d[pi][t] += run.d2d[pi][t] / static_cast<double>(c.n_runs);
                out.mean_ee_cell[pi][t] += run.cell[pi][t] / static_cast<double>(c.n_runs);
            }
        for (std::size_t t = 0; t < rounds; ++t)
        {
            max_d2d = std::max(max_d2d, out.mean_ee_d2d[pi][t]);
            max_cell = std::max(max_cell, out.mean_ee_cell[pi][t]);
        }
    }
    for (std::size_t pi = 0; pi < 3; ++pi)
        for (std::size_t t = 0; t < rounds; ++t)
        {
            out.norm_ee_d2d[pi].push_back(max_d2d > 0.0 ? out.mean_ee_d2d[pi][t] / max_d2d : 0.0);
            out.norm_ee_cell[pi].push_back(max_cell > 0.0 ? out.mean_ee_cell[pi][t] / max_cell : 0.0);
        }
    for (const auto &run : runs)
        out.ee_policy_converged_round.push_back(run.converged);
    return out;
}

inline std::string game_csv(const GameConvergenceResult &g)
{
    std::ostringstream os;
    os << "# mean EE per round averaged over runs, normalized by the maximum over all policies and rounds"
          " (D2D and cellular columns normalized separately)\n";
    os << "round,policy,mean_ee_d2d_norm,mean_ee_cell_norm\n";
    for (std::size_t pi = 0; pi < 3; ++pi)
        for (std::size_t t = 0; t < g.norm_ee_d2d[pi].size(); ++t)
            os << (t + 1) << ',' << policy_name(kAllPolicies[pi]) << ',' << fmt6(g.norm_ee_d2d[pi][t]) << ','
               << fmt6(g.norm_ee_cell[pi][t]) << '\n';
    return os.str();
}

// ---- empirical tradeoff ----

struct TradeoffRow
{
    double se_floor = 0.0;
    double budget = 0.0;
    double mean_ee = 0.0;     // over feasible link instances
    double mean_ee_all = 0.0; // over all link instances, infeasible ones counted as 0
    double mean_se = 0.0;     // over feasible link instances
    double feasibility_rate = 0.0;
    std::size_t n_feasible = 0;
};

// Each run plays the energy-efficient game once with the configured
// parameters to fix the interference every link sees. Every link of the
// studied class then re-solves its own problem for each SE floor of the
// sweep, once with the finite budget and once with the unbounded stand-in.
inline std::vector<TradeoffRow> tradeoff_empirical(const ExperimentConfig &c, LinkKind kind)
{
    const auto floors = c.se_sweep.values();
    const double finite = kind == LinkKind::D2D ? c.params.d2d_power_budget : c.params.cell_power_budget;
    const std::array<double, 2> budgets{finite, c.infinite_budget};
    const std::size_t rows = floors.size() * budgets.size();
    const std::size_t links = kind == LinkKind::D2D ? c.params.n_d2d : c.params.n_cell;

    struct Acc
    {
        double ee = 0.0;
        double se = 0.0;
        std::size_t feasible = 0;
    };
    std::vector<std::vector<Acc>> per_run(c.n_runs, std::vector<Acc>(rows));

    parallel_runs(c.n_runs, c.threads,
                  [&](std::size_t r)
                  {
                      const auto net = make_network(c, r);
                      GameConfig gc;
                      gc.max_rounds = c.max_rounds;
                      gc.seed = derive_seed(c.seed, r, 2);
                      const auto reference = run_game(net.gains, c.params, gc).final_profile();

                      for (std::size_t l = 0; l < links; ++l)
                      {
                          const LinkId link{kind, l};
                          const auto env = aggregate_interference(reference, net.gains, c.params, link);
                          for (std::size_t fi = 0; fi < floors.size(); ++fi)
                              for (std::size_t bi = 0; bi < budgets.size(); ++bi)
                              {
                                  SystemParams p = c.params;
                                  (kind == LinkKind::D2D ? p.d2d_se_floor : p.cell_se_floor) = floors[fi];
                                  (kind == LinkKind::D2D ? p.d2d_power_budget : p.cell_power_budget) = budgets[bi];
                                  if (bi == 1)
                                      p.max_outer_iters = std::max(p.max_outer_iters, c.unbounded_outer_iters);
                                  const auto rep = dinkelbach_solve(kind, env, p);
                                  if (!rep.feasible)
                                      continue;
                                  auto &acc = per_run[r][fi * budgets.size() + bi];
                                  acc.ee += rep.ee;
                                  acc.se += rep.se;
                                  ++acc.feasible;
                              }
                      }
                  });

    std::vector<TradeoffRow> out;
    const double instances = static_cast<double>(c.n_runs * links);
    for (std::size_t fi = 0; fi < floors.size(); ++fi)
        for (std::size_t bi = 0; bi < budgets.size(); ++bi)
        {
            TradeoffRow row;
            row.se_floor = floors[fi];
            row.budget = budgets[bi];
            double ee = 0.0, se = 0.0;
            for (const auto &run : per_run)
            {
                const auto &acc = run[fi * budgets.size() + bi];
                ee += acc.ee;
                se += acc.se;
                row.n_feasible += acc.feasible;
            }
            if (row.n_feasible > 0)
            {
                row.mean_ee = ee / static_cast<double>(row.n_feasible);
                row.mean_se = se / static_cast<double>(row.n_feasible);
            }
            row.mean_ee_all = ee / instances;
            row.feasibility_rate = static_cast<double>(row.n_feasible) / instances;
            out.push_back(row);
        }
    return out;
}

inline std::string tradeoff_empirical_csv(const std::vector<TradeoffRow> &rows, LinkKind kind)
{
    std::ostringstream os;
    os << "# link=" << (kind == LinkKind::D2D ? "d2d" : "cellular")
       << "; mean_ee averages feasible links only, mean_ee_all counts infeasible links as 0;"
          " budget_w applies to the studied link class\n";
    os << "se_floor,budget_w,mean_ee,feasibility_rate,n_feasible,mean_ee_all\n";
    for (const auto &r : rows)
        os << fmt6(r.se_floor) << ',' << fmt6(r.budget) << ',' << (r.n_feasible ? fmt6(r.mean_ee) : "") << ','
           << fmt6(r.feasibility_rate) << ',' << r.n_feasible << ',' << fmt6(r.mean_ee_all) << '\n';
    return os.str();
}

// ---- analytic tradeoff ----

struct AnalyticRow
{
    double coupling_db = 0.0;
    double se = 0.0;
    double ee = 0.0;
    bool feasible = false;
};

// Highest SE reachable in the symmetric case with the configured powers.
inline double analytic_max_se(const SymmetricCase &sc, LinkKind kind)
{
    return std::min(analytic_se(sc, kind), se_supremum(sc, kind));
}

inline std::vector<AnalyticRow> tradeoff_analytic(const ExperimentConfig &c, LinkKind kind)
{
    std::vector<AnalyticRow> out;
    for (double db : c.coupling_db)
    {
        SymmetricCase sc;
        sc.coupling = db_to_linear(db);
        sc.n_d2d = c.params.n_d2d;
        sc.n_cell = c.params.n_cell;
        sc.d2d_power = c.analytic_d2d_power;
        sc.cell_power = c.analytic_cell_power;
        sc.pa_efficiency = c.params.pa_efficiency;
        sc.circuit_power = c.params.circuit_power;
        const double cap = analytic_max_se(sc, kind);
        const double sup = se_supremum(sc, kind);
        for (double se : c.se_sweep.values())
        {
            AnalyticRow row{db, se, 0.0, se <= cap && se < sup};
            if (row.feasible)
                row.ee = analytic_ee(se, sc, kind);
            out.push_back(row);
        }
    }
    return out;
}

inline std::string tradeoff_analytic_csv(const std::vector<AnalyticRow> &rows, LinkKind kind)
{
    std::ostringstream os;
    os << "# link=" << (kind == LinkKind::D2D ? "d2d" : "cellular")
       << "; symmetric-gain closed form, noise neglected; ee empty where the SE is unreachable\n";
    os << "coupling_db,se,ee,feasible\n";
    for (const auto &r : rows)
        os << fmt6(r.coupling_db) << ',' << fmt6(r.se) << ',' << (r.feasible ? fmt6(r.ee) : "") << ','
           << (r.feasible ? 1 : 0) << '\n';
    return os.str();
}

// ---- driver ----

// Runs the configured experiment and writes its files into output_dir.
// Nothing is written unless every run succeeds.
inline std::vector<std::filesystem::path> run_experiment(const ExperimentConfig &c)
{
    validate_config(c);
    std::vector<std::pair<std::string, std::string>> files;
    switch (c.experiment)
    {
    case ExperimentKind::ScenarioDump:
    {
        const auto net = make_network(c, 0);
        files.emplace_back("scenario.json", topology_to_json(net.topology).dump(2) + "\n");
        break;
    }
    case ExperimentKind::GameConvergence:
        files.emplace_back("game.csv", game_csv(game_convergence(c)));
        break;
    case ExperimentKind::TradeoffEmpiricalD2D:
        files.emplace_back("tradeoff_empirical.csv",
                           tradeoff_empirical_csv(tradeoff_empirical(c, LinkKind::D2D), LinkKind::D2D));
        break;
    case ExperimentKind::TradeoffEmpiricalCell:
        files.emplace_back("tradeoff_empirical.csv",
                           tradeoff_empirical_csv(tradeoff_empirical(c, LinkKind::Cellular), LinkKind::Cellular));
        break;
    case ExperimentKind::TradeoffAnalyticD2D:
        files.emplace_back("tradeoff_analytic.csv",
                           tradeoff_analytic_csv(tradeoff_analytic(c, LinkKind::D2D), LinkKind::D2D));
        break;
    case ExperimentKind::TradeoffAnalyticCell:
        files.emplace_back("tradeoff_analytic.csv",
                           tradeoff_analytic_csv(tradeoff_analytic(c, LinkKind::Cellular), LinkKind::Cellular));
        break;
    }

    std::filesystem::create_directories(c.output_dir);
    std::vector<std::filesystem::path> written;
    for (const auto &[name, body] : files)
    {
        const auto path = c.output_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << body;
        written.push_back(path);
    }
    return written;
}

} // namespace d2dee

#endif
