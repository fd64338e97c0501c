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


// Command-line front end for the d2dee experiments.
//
//   d2dee_sim scenario           [--config f] [--seed s] [--out dir]
//   d2dee_sim game               [--config f] [--seed s] [--runs n] [--out dir] [--fast]
//   d2dee_sim tradeoff-empirical [--link d2d|cell] ...
//   d2dee_sim tradeoff-analytic  [--link d2d|cell] ...

#include <d2dee/experiment.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace
{

struct CommonOptions
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::string> out;
    bool fast = false;
    std::string link = "d2d";
};

void add_common(CLI::App *cmd, CommonOptions &o, bool with_link)
{
    cmd->add_option("--config", o.config, "JSON experiment config (powers in mW, coupling in dB)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--runs", o.runs, "number of Monte Carlo runs")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("--fast", o.fast, "divide the run count by 10");
    if (with_link)
        cmd->add_option("--link", o.link, "link class under study")->check(CLI::IsMember({"d2d", "cell"}));
}

d2dee::ExperimentConfig build_config(const CommonOptions &o, d2dee::ExperimentKind kind)
{
    using d2dee::ExperimentKind;
    d2dee::ExperimentConfig c;
    bool runs_from_file = false;
    if (!o.config.empty())
    {
        std::ifstream in(o.config);
        const auto j = nlohmann::json::parse(in);
        c = d2dee::config_from_json(j);
        runs_from_file = j.contains("n_runs");
        // A d2d/cell variant named in the file wins over the --link default.
        if (j.contains("experiment"))
        {
            const auto file_kind = c.experiment;
            const bool same_family =
                (kind == ExperimentKind::TradeoffEmpiricalD2D && file_kind == ExperimentKind::TradeoffEmpiricalCell) ||
                (kind == ExperimentKind::TradeoffAnalyticD2D && file_kind == ExperimentKind::TradeoffAnalyticCell);
            if (same_family && o.link == "d2d")
                kind = file_kind;
        }
    }
    c.experiment = kind;
    if (!runs_from_file)
        c.n_runs = d2dee::default_runs(kind);
    if (o.seed)
        c.seed = *o.seed;
    if (o.runs)
        c.n_runs = *o.runs;
    if (o.out)
        c.output_dir = *o.out;
    if (o.fast)
        c.n_runs = std::max<std::size_t>(1, c.n_runs / 10);
    d2dee::validate_config(c);
    return c;
}

} // namespace

int main(int argc, char **argv)
{
    using d2dee::ExperimentKind;
    CLI::App app{"d2dee: energy-efficient power allocation for D2D underlay networks"};
    app.require_subcommand(1);

    CommonOptions scenario_opts, game_opts, emp_opts, ana_opts;
    auto *scenario = app.add_subcommand("scenario", "dump one random topology as JSON");
    add_common(scenario, scenario_opts, false);
    auto *game = app.add_subcommand("game", "per-round normalized EE of the three policies");
    add_common(game, game_opts, false);
    auto *emp = app.add_subcommand("tradeoff-empirical", "EE versus SE floor from Monte Carlo games");
    add_common(emp, emp_opts, true);
    auto *ana = app.add_subcommand("tradeoff-analytic", "closed-form EE versus SE for the symmetric network");
    add_common(ana, ana_opts, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        d2dee::ExperimentConfig cfg;
        if (scenario->parsed())
            cfg = build_config(scenario_opts, ExperimentKind::ScenarioDump);
        else if (game->parsed())
            cfg = build_config(game_opts, ExperimentKind::GameConvergence);
        else if (emp->parsed())
            cfg = build_config(emp_opts, emp_opts.link == "d2d" ? ExperimentKind::TradeoffEmpiricalD2D
                                                                : ExperimentKind::TradeoffEmpiricalCell);
        else
            cfg = build_config(ana_opts, ana_opts.link == "d2d" ? ExperimentKind::TradeoffAnalyticD2D
                                                                : ExperimentKind::TradeoffAnalyticCell);

        for (const auto &path : d2dee::run_experiment(cfg))
            std::cout << path.string() << '\n';
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
