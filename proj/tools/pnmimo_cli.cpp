// SPDX-License-Identifier: Apache-2.0
//
// pnmimo: massive MIMO downlink simulation under oscillator phase noise
// Copyright (C) 2026 The pnmimo authors
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

// pnmimo command line: scenario sweeps, presets and lemma checks.
//
// Exit codes: 0 success, 1 I/O or usage error, 2 configuration error,
// 3 numerical failure (e.g. too many rejected ZF draws).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnmimo/config_file.hpp"
#include "pnmimo/lemma_lab.hpp"
#include "pnmimo/presets.hpp"
#include "pnmimo/results_io.hpp"
#include "pnmimo/sweep.hpp"

namespace {

enum Exit : int
{
    ok = 0,
    io_error = 1,
    config_error = 2,
    numerical_error = 3
};

struct Common
{
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<unsigned> parallelism;
    std::string out = "-";
    std::string format = "csv";
    bool timing = false;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--seed", c.seed, "Master seed for all Monte-Carlo streams");
    cmd->add_option("--realizations", c.realizations, "Monte-Carlo realizations per point (0: analytics only)");
    cmd->add_option("--parallelism", c.parallelism, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "Output file, - for stdout");
    cmd->add_option("--format", c.format, "csv or json-lines")->check(CLI::IsMember({"csv", "json-lines", "jsonl"}));
    cmd->add_flag("--timing", c.timing, "Add a wall_time_s column (output is then not byte-reproducible)");
}

int run_plan(pnmimo::sim::SweepPlan plan, const Common &c)
{
    using namespace pnmimo::sim;
    apply_overrides(plan, {c.seed, c.realizations, c.parallelism});
    const auto format = parse_output_format(c.format);
    const auto table = run_plan(plan, RunOptions{c.timing});
    emit_results(table, format, c.out);
    return ok;
}

int run_lemmas(std::uint64_t seed, std::size_t trials, unsigned parallelism, const std::string &out)
{
    using namespace pnmimo::lemmas;
    SuiteOptions opts{seed, trials, parallelism};
    std::vector<ConvergenceRecord> records;

    pnmimo::Rng rng = pnmimo::make_stream(seed, {2});
    const auto inv = check_matrix_inversion_identity(64, rng);
    const auto res = check_resolvent_identity(64, rng);
    std::cerr << std::scientific << std::setprecision(3);
    std::cerr << "matrix inversion identity: max deviation " << inv.deviation << '\n';
    std::cerr << "resolvent identity:        max deviation " << res.deviation << '\n';

    const std::vector<std::size_t> trace_sizes{64, 128, 256, 512, 1024, 2048, 4096};
    const std::vector<std::size_t> rank1_sizes{32, 64, 128, 256};
    const std::vector<std::size_t> free_sizes{64, 128, 256, 512, 1024};
    for (auto &r : check_trace_lemma(trace_sizes, opts))
        records.push_back(r);
    const auto r1 = check_rank1_perturbation(rank1_sizes, opts);
    records.push_back(r1.record);
    std::cerr << "rank-1 bound violations:   " << r1.bound_violations << " of " << r1.draws << '\n';
    records.push_back(check_free_probability_traces(free_sizes, opts));
    for (auto &r : lemma9_convergence(free_sizes, Lemma9Options{}, opts))
        records.push_back(r);

    std::cerr << std::fixed << std::setprecision(3);
    for (const auto &r : records)
        std::cerr << std::left << std::setw(24) << r.name << " slope " << r.slope << '\n';

    if (out == "-") {
        write_convergence_csv(std::cout, records);
    } else {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open '" + out + "' for writing");
        write_convergence_csv(f, records);
    }
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Massive MIMO downlink simulation under oscillator phase noise"};
    app.require_subcommand(1);

    Common common;
    std::string config_path;
    auto *sweep = app.add_subcommand("sweep", "Run the sweeps of a scenario file");
    sweep->add_option("config", config_path, "Scenario file")->required();
    add_common(sweep, common);

    std::string preset_name;
    bool list = false;
    auto *preset = app.add_subcommand("preset", "Run a built-in figure preset");
    preset->add_option("name", preset_name, "Preset name");
    preset->add_flag("--list", list, "List presets and exit");
    add_common(preset, common);

    auto *list_cmd = app.add_subcommand("list-presets", "List built-in presets");

    std::uint64_t lemma_seed = 2024;
    std::size_t lemma_trials = 100;
    unsigned lemma_par = 1;
    std::string lemma_out = "-";
    auto *lemmas = app.add_subcommand("lemmas", "Run the random-matrix lemma checks and emit convergence CSV");
    lemmas->add_option("--seed", lemma_seed, "Suite seed");
    lemmas->add_option("--trials", lemma_trials, "Trials per size")->check(CLI::PositiveNumber);
    lemmas->add_option("--parallelism", lemma_par, "Worker threads")->check(CLI::PositiveNumber);
    lemmas->add_option("--out", lemma_out, "Output file, - for stdout");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate-config", "Check a scenario file and report field errors");
    validate->add_option("config", validate_path, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? ok : io_error;
    }

    auto print_presets = [] {
        for (const auto &p : pnmimo::sim::list_presets())
            std::cout << std::left << std::setw(12) << p.name << "  " << p.description << "\n"
                      << std::setw(12) << "" << "  " << p.provenance << "\n";
    };

    try {
        if (*sweep)
            return run_plan(pnmimo::sim::load_plan(config_path), common);
        if (*preset) {
            if (list || preset_name.empty()) {
                print_presets();
                return list ? ok : config_error;
            }
            return run_plan(pnmimo::sim::find_preset(preset_name).build(), common);
        }
        if (*list_cmd) {
            print_presets();
            return ok;
        }
        if (*lemmas)
            return run_lemmas(lemma_seed, lemma_trials, lemma_par, lemma_out);
        if (*validate) {
            const auto plan = pnmimo::sim::load_plan(validate_path);
            std::size_t points = 0;
            for (const auto &s : plan.sweeps)
                points += s.values.size();
            std::cout << validate_path << ": ok (" << plan.sweeps.size() << " sweeps, " << points << " points, "
                      << plan.precoders.size() << " precoders)\n";
            return ok;
        }
    } catch (const pnmimo::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const pnmimo::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical_error;
    } catch (const pnmimo::DomainError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return io_error;
    }
    return ok;
}
