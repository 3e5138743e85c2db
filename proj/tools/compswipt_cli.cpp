// SPDX-License-Identifier: Apache-2.0
//
// compswipt: resource allocation for CoMP networks with wireless power transfer
// Copyright (C) 2026 The compswipt authors
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


// Command-line front end: run, validate-config, solve-one, selftest.
//
// Exit codes: 0 success, 1 failed self-test or unexpected error, 2 usage or
// configuration error, 3 infeasible instance, 4 numerical failure, 5 I/O
// error. Log verbosity comes from COMPSWIPT_LOG (e.g. "debug", "warn").

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "compswipt/config.hpp"
#include "compswipt/harness.hpp"

using namespace compswipt;

namespace
{

enum Exit
{
    ok = 0,
    failure = 1,
    usage = 2,
    infeasible = 3,
    numerical = 4,
    io = 5,
};

struct Overrides
{
    std::string config;
    std::optional<double> delta;
    std::optional<double> eta;
    std::optional<int> iters;
};

void add_overrides(CLI::App *cmd, Overrides &o)
{
    cmd->add_option("--config", o.config, "configuration file (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--delta", o.delta, "weight of the maximum backhaul term")->check(CLI::NonNegativeNumber);
    cmd->add_option("--eta", o.eta, "weight of the transmit power term")->check(CLI::NonNegativeNumber);
    cmd->add_option("--iters", o.iters, "reweighting iterations L_max")->check(CLI::PositiveNumber);
}

SystemParams base_params(const Overrides &o)
{
    SystemParams p = o.config.empty() ? SystemParams::defaults() : load_params(o.config);
    if (o.delta)
        p.delta = *o.delta;
    if (o.eta)
        p.eta = *o.eta;
    if (o.iters)
        p.max_iterations = *o.iters;
    p.finalize();
    return p;
}

void print_summary(const std::vector<AggregateRow> &rows, const std::string &variable)
{
    const auto cell = [](const Stat &s, int width) {
        std::ostringstream c;
        if (s.count == 0)
            c << "-";
        else
            c << std::fixed << std::setprecision(3) << s.mean << " +/- " << s.half_width;
        std::ostringstream out;
        out << std::left << std::setw(width) << c.str();
        return out.str();
    };
    std::cout << std::left << std::setw(18) << "scheme" << std::setw(6) << variable << std::setw(8) << "trials"
              << std::setw(8) << "infeas" << std::setw(22) << "max backhaul" << std::setw(22) << "total backhaul"
              << std::setw(12) << "power dBm" << "harvest dBm\n";
    for (const AggregateRow &r : rows)
    {
        std::ostringstream pw, hv;
        pw << std::fixed << std::setprecision(2) << r.transmit_power_dbm;
        hv << std::fixed << std::setprecision(2) << r.harvested_dbm;
        std::cout << std::left << std::setw(18) << r.scheme << std::setw(6) << r.sweep << std::setw(8) << r.trials
                  << std::setw(8) << r.infeasible << cell(r.max_backhaul, 22) << cell(r.total_backhaul, 22)
                  << std::setw(12) << (r.trials ? pw.str() : "-") << (r.trials ? hv.str() : "-") << "\n";
    }
    if (!rows.empty())
        std::cout << "lower bounds: per link " << rows.front().bound_per_link << ", total "
                  << rows.front().bound_total << " bit/s/Hz\n";
}

int cmd_run(const Overrides &o, std::uint64_t seed, std::optional<int> trials, const std::string &schemes,
            const std::string &sweep, const std::string &out, unsigned threads, std::optional<double> tolerance)
{
    ExperimentConfig cfg;
    cfg.base = base_params(o);
    cfg.seed = seed;
    if (trials)
        cfg.trials = *trials;
    if (!schemes.empty())
        cfg.schemes = parse_scheme_list(schemes);
    if (!sweep.empty())
        cfg.sweep = parse_sweep(sweep);
    cfg.output_dir = out;
    cfg.threads = threads;
    if (tolerance)
        cfg.solver.tolerance = *tolerance;
    const ExperimentResult res = run_experiment(cfg);
    for (const std::string &note : res.notes)
        std::cout << "note: " << note << "\n";
    print_summary(res.summary, cfg.sweep.variable);
    std::cout << res.records.size() << " records";
    if (!out.empty())
        std::cout << " written to " << out;
    std::cout << "\n";
    return ok;
}

int cmd_validate(const Overrides &o)
{
    const SystemParams p = base_params(o);
    std::cout << "configuration: " << (o.config.empty() ? std::string("built-in defaults") : o.config) << "\n";
    print_params(std::cout, p);
    std::cout << "configuration is valid\n";
    return ok;
}

int cmd_solve_one(const Overrides &o, std::uint64_t seed, std::optional<int> nt, const std::string &scheme)
{
    SystemParams p = base_params(o);
    if (nt)
    {
        p.antennas_per_rrh = *nt;
        p.finalize();
    }
    const std::string name = parse_scheme_list(scheme).front();
    Rng rng(trial_seed(seed, p.antennas_per_rrh, 0));
    const Topology topo = build_topology(p, rng);
    const ChannelSet ch = sample_channels(topo, p, rng);
    SolutionReport report;
    std::optional<IterationTrace> trace;
    if (name == "proposed" || name == "proposed-10-iter")
    {
        if (name == "proposed-10-iter")
            p.max_iterations = 10;
        ReweightResult r = run_reweighted(ch, p, {}, name);
        report = std::move(r.report);
        trace = std::move(r.trace);
    }
    else if (name == "full-coop")
        report = full_cooperation(ch, p);
    else if (name == "exhaustive")
        report = exhaustive_search(ch, p).report;
    else
    {
        Rng colocated(seed ^ 0x636f6c6f63617465ULL);
        report = colocated_system(topo, p, colocated);
    }
    std::cout << report_to_json(report) << "\n";
    if (trace)
    {
        std::cout << "\n";
        write_trace_csv(std::cout, *trace);
    }
    return ok;
}

int cmd_selftest(std::uint64_t seed)
{
    int failed = 0;
    for (const SelftestCheck &c : run_selftest(seed))
    {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        failed += c.passed ? 0 : 1;
    }
    std::cout << (failed ? "selftest failed\n" : "selftest passed\n");
    return failed ? failure : ok;
}

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("compswipt");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::info);
    if (const char *level = std::getenv("COMPSWIPT_LOG"))
        spdlog::cfg::helpers::load_levels(level);
}

} // namespace

int main(int argc, char **argv)
{
    setup_logging();

    CLI::App app{"Backhaul-aware resource allocation for CoMP networks with wireless power transfer"};
    app.require_subcommand(1);

    Overrides run_o, validate_o, solve_o;
    std::uint64_t seed = 1;
    std::optional<int> trials, nt;
    std::string schemes, sweep, out, scheme = "proposed";
    unsigned threads = 0;
    std::optional<double> tolerance;

    CLI::App *run = app.add_subcommand("run", "Monte Carlo sweep");
    add_overrides(run, run_o);
    run->add_option("--seed", seed, "master seed");
    run->add_option("--trials", trials, "trials per sweep point")->check(CLI::PositiveNumber);
    run->add_option("--schemes", schemes, "comma-separated: proposed, proposed-10-iter, full-coop, exhaustive, colocated");
    run->add_option("--sweep", sweep, "sweep such as nt=2..8, nt=2..8:2 or nt=2,4,6");
    run->add_option("--out", out, "output directory for metrics.csv, metrics.jsonl and summary.csv");
    run->add_option("--threads", threads, "worker threads, 0 for all cores");
    run->add_option("--tolerance", tolerance, "interior-point stopping tolerance")->check(CLI::PositiveNumber);

    CLI::App *validate = app.add_subcommand("validate-config", "load, validate and print a configuration");
    add_overrides(validate, validate_o);

    CLI::App *solve = app.add_subcommand("solve-one", "solve one random realization and print the report");
    add_overrides(solve, solve_o);
    solve->add_option("--seed", seed, "seed of the realization");
    solve->add_option("--nt", nt, "antennas per RRH")->check(CLI::PositiveNumber);
    solve->add_option("--scheme", scheme, "scheme to run");

    CLI::App *selftest = app.add_subcommand("selftest", "run the solver oracles and invariant checks");
    selftest->add_option("--seed", seed, "seed for the random instances");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return usage;
    }

    try
    {
        if (*run)
            return cmd_run(run_o, seed, trials, schemes, sweep, out, threads, tolerance);
        if (*validate)
            return cmd_validate(validate_o);
        if (*solve)
            return cmd_solve_one(solve_o, seed, nt, scheme);
        return cmd_selftest(seed);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error [config]: " << e.what() << "\n";
        return usage;
    }
    catch (const StructuralError &e)
    {
        std::cerr << "error [config]: " << e.what() << "\n";
        return usage;
    }
    catch (const InfeasibleInstance &e)
    {
        std::cerr << "error [infeasible]: " << e.what() << "\n";
        return infeasible;
    }
    catch (const NumericalFailure &e)
    {
        std::cerr << "error [numerical]: " << e.what() << "\n";
        return numerical;
    }
    catch (const LimitExceeded &e)
    {
        std::cerr << "error [limit]: " << e.what() << "\n";
        return usage;
    }
    catch (const std::runtime_error &e)
    {
        std::cerr << "error [io]: " << e.what() << "\n";
        return io;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
}
