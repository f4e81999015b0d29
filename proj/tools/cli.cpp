// SPDX-License-Identifier: Apache-2.0
//
// rissense: backward sensing toolkit for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rissense authors
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

#include "cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "rissense/experiments.hpp"

namespace rissense::cli {

namespace {

std::string quoted(const std::string &s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

const std::vector<std::string> kSubcommands{"bound-sweep", "rank-sweep", "topology", "distance",
                                            "prototype",   "spectrum",   "bounds",   "doa"};

} // namespace

int run(const Invocation &inv, std::ostream &out, std::ostream &err)
{
    const auto experiment = experiment_from_name(inv.subcommand);
    if (!experiment) {
        err << "error: kind=usage key=subcommand message=" << quoted("unknown subcommand " + inv.subcommand) << '\n';
        return other_error;
    }

    std::vector<std::string> overrides = inv.overrides;
    if (inv.seed)
        overrides.push_back("master_seed=" + std::to_string(*inv.seed));

    ConfigResult parsed;
    try {
        parsed = inv.config_path ? validate_config(*inv.config_path, *experiment, overrides)
                                 : parse_config("", *experiment, overrides);
    } catch (const std::exception &e) {
        err << "error: kind=config key=--config message=" << quoted(e.what()) << '\n';
        return config_error;
    }
    if (!parsed.ok()) {
        for (const auto &e : parsed.errors)
            err << "error: kind=config key=" << e.key << " message=" << quoted(e.message) << '\n';
        return config_error;
    }
    const ScenarioConfig &cfg = *parsed.config;

    try {
        if (*experiment == Experiment::bounds) {
            const auto inputs = bound_inputs(cfg);
            out << format_number(relative_error_bound(BoundVariant::crossrange, inputs)) << '\n';
            return ok;
        }
        RunOptions options;
        options.threads = inv.threads;
        const auto result = run_experiment(cfg, options);
        write_outputs(result, inv.output_dir);
        out << inv.subcommand << ": " << result.rows.size() << " rows written to " << inv.output_dir << '\n';
        return ok;
    } catch (const NumericalFailure &e) {
        err << "error: kind=numerical rows=" << e.rows() << " cols=" << e.cols()
            << " cond=" << format_number(e.condition_number()) << " message=" << quoted(e.what()) << '\n';
        return numerical_error;
    } catch (const std::domain_error &e) {
        err << "error: kind=numerical rows=0 cols=0 cond= message=" << quoted(e.what()) << '\n';
        return numerical_error;
    } catch (const std::exception &e) {
        err << "error: kind=other message=" << quoted(e.what()) << '\n';
        return other_error;
    }
}

int main_entry(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Backward sensing simulations for reconfigurable intelligent surfaces", "rissense"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Invocation inv;
    std::string config;
    unsigned long long seed = 0;
    app.add_option("--config", config, "Scenario file (JSON)");
    app.add_option("--out", inv.output_dir, "Output directory")->capture_default_str();
    auto *seed_opt = app.add_option("--seed", seed, "Master seed override");
    app.add_option("--set", inv.overrides, "Override a config value, dotted.key=value (repeatable)");
    app.add_option("--threads", inv.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    const std::map<std::string, std::string> help{
        {"bound-sweep", "Monte-Carlo LS error against the cross-range error bound"},
        {"rank-sweep", "Numeric rank and spectrum while sweeping per-panel T or N"},
        {"topology", "Reconstruction quality for panel deployment strategies"},
        {"distance", "Reconstruction quality versus panel distance"},
        {"prototype", "Phaseless DoA and 2D localisation in the two-panel geometry"},
        {"spectrum", "Singular spectrum of one assembled operator"},
        {"bounds", "Print the cross-range error bound for the configured scene"},
        {"doa", "Phaseless DoA spectra for the two-panel geometry"},
    };
    for (const auto &name : kSubcommands)
        app.add_subcommand(name, help.at(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: kind=usage message=" << quoted(e.what()) << '\n';
        return other_error;
    }

    inv.subcommand = app.get_subcommands().front()->get_name();
    if (!config.empty())
        inv.config_path = config;
    if (seed_opt->count() > 0)
        inv.seed = seed;
    return run(inv, out, err);
}

} // namespace rissense::cli
