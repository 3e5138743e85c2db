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


// Acceptance run: prints one PASS/FAIL line per criterion. Exits 0 once every
// criterion has been evaluated; --strict makes any FAIL a nonzero exit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "compswipt/baselines.hpp"
#include "compswipt/harness.hpp"
#include "compswipt/reweighted.hpp"

using namespace compswipt;

namespace
{

struct Outcome
{
    bool passed = false;
    std::string detail;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexVector complex_normal(int n, Rng &rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    ComplexVector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = {nd(rng), nd(rng)};
    return v;
}

Outcome solver_oracle()
{
    Rng rng(101);
    double worst = 0.0, gap = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < 20; ++t)
    {
        const int l = 1 + t % 4;
        const int nt = 8 / l;
        SystemParams p = SystemParams::defaults();
        p.num_ir = 1;
        p.num_er = 0;
        p.num_rrh = l;
        p.antennas_per_rrh = nt;
        p.delta = 0.0;
        p.eta = 1.0;
        p.finalize();
        const ComplexVector h = complex_normal(l * nt, rng);
        const ChannelSet ch(l, nt, {h}, {});
        const BeamformingSdp sdp = build_sdp(ch, p, unit_weights(1, l), ActivationMask(1, l));
        const conic::ConeSolution s = conic::solve(sdp.program);
        const double expected = p.min_sinr[0] * p.noise_mw / h.squaredNorm();
        worst = std::max(worst, std::abs(s.primal_objective - expected) / expected);
        gap = std::max(gap, s.relative_gap);
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-6 && gap <= 1e-8 && elapsed < 1.0,
            "worst relative error " + fmt(worst) + ", worst relative gap " + fmt(gap) + ", " + fmt(elapsed) + " s"};
}

Outcome rank_one_certificate()
{
    SystemParams p = SystemParams::defaults();
    p.num_ir = 3;
    p.num_rrh = 2;
    p.antennas_per_rrh = 2;
    p.num_er = 1;
    p.finalize();
    int certified = 0, feasible = 0, infeasible = 0;
    double ratio = 0.0, comp = 0.0;
    for (std::uint64_t seed = 1; feasible < 100 && seed <= 1000; ++seed)
    {
        Rng rng(seed);
        const Topology topo = build_topology(p, rng);
        const ChannelSet ch = sample_channels(topo, p, rng);
        const BeamformingSdp sdp = build_sdp(ch, p, unit_weights(3, 2), ActivationMask(3, 2));
        const conic::ConeSolution s = conic::solve(sdp.program);
        if (s.status == conic::SolveStatus::infeasible)
        {
            ++infeasible;
            continue;
        }
        ++feasible;
        if (s.status != conic::SolveStatus::optimal)
            continue;
        const Extraction ex = extract_beamformers(s, sdp.layout);
        const RankCertificate cert = verify_rank_certificate(sdp, s);
        for (double r : ex.rank_ratio)
            ratio = std::max(ratio, r);
        comp = std::max(comp, cert.max_complementarity);
        if (cert.all_rank_one && !ex.rank_failure)
            ++certified;
    }
    return {feasible == 100 && certified == 100 && ratio <= 1e-6 && comp <= 1e-6,
            std::to_string(certified) + "/" + std::to_string(feasible) + " certified (" + std::to_string(infeasible) +
                " infeasible draws skipped), max lambda2/lambda1 " + fmt(ratio) + ", max complementarity " +
                fmt(comp)};
}

Outcome exhaustive_equivalence()
{
    SystemParams p = SystemParams::defaults();
    p.num_ir = 2;
    p.num_rrh = 2;
    p.antennas_per_rrh = 2;
    p.num_er = 1;
    p.finalize();
    const double r = p.rates[0];
    int trials = 0, within = 0, dominance_violations = 0, skipped = 0;
    for (std::uint64_t seed = 1; trials < 30 && seed <= 300; ++seed)
    {
        Rng rng(seed);
        const Topology topo = build_topology(p, rng);
        const ChannelSet ch = sample_channels(topo, p, rng);
        SolutionReport proposed, best;
        try
        {
            proposed = run_reweighted(ch, p).report;
            best = exhaustive_search(ch, p).report;
        }
        catch (const InfeasibleInstance &)
        {
            ++skipped;
            continue;
        }
        ++trials;
        if (proposed.backhaul.max <= best.backhaul.max + r)
            ++within;
        if (best.objective > proposed.objective)
            ++dominance_violations;
    }
    const bool ok = trials == 30 && within >= 27 && dominance_violations == 0;
    return {ok, std::to_string(within) + "/" + std::to_string(trials) + " within one R unit (" + fmt(r) + "), " +
                    std::to_string(dominance_violations) + " dominance violations, " + std::to_string(skipped) +
                    " infeasible draws skipped"};
}

Outcome determinism(const std::string &cli, const std::filesystem::path &work)
{
    const auto run = [&](const std::string &dir) {
        const std::string cmd = "\"" + cli + "\" run --seed 7 --trials 3 --sweep nt=2 --out \"" +
                                (work / dir).string() + "\" > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const auto strip_clock = [](const std::filesystem::path &file) {
        std::ifstream in(file);
        std::string line, out;
        int clock_col = -1;
        while (std::getline(in, line))
        {
            std::vector<std::string> fields;
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, ','))
                fields.push_back(f);
            if (clock_col < 0)
                clock_col = static_cast<int>(std::find(fields.begin(), fields.end(), "wall_clock_ms") - fields.begin());
            if (clock_col < static_cast<int>(fields.size()))
                fields.erase(fields.begin() + clock_col);
            for (std::size_t i = 0; i < fields.size(); ++i)
                out += (i ? "," : "") + fields[i];
            out += '\n';
        }
        return out;
    };
    const int a = run("first");
    const int b = run("second");
    if (a != 0 || b != 0)
        return {false, "run exited with " + std::to_string(a) + " and " + std::to_string(b)};
    const std::string x = strip_clock(work / "first" / "metrics.csv");
    const std::string y = strip_clock(work / "second" / "metrics.csv");
    const auto lines = std::count(x.begin(), x.end(), '\n');
    return {!x.empty() && x == y,
            std::to_string(lines) + " CSV lines, " + (x == y ? "byte-identical" : "different") +
                " without the wall-clock column"};
}

struct DeskRun
{
    ExperimentConfig cfg;
    ExperimentResult result;
    double seconds = 0.0;

    const AggregateRow *row(const std::string &scheme, int nt) const
    {
        for (const auto &r : result.summary)
            if (r.scheme == scheme && r.sweep == nt)
                return &r;
        return nullptr;
    }
};

Outcome lower_bounds_check(const DeskRun &desk)
{
    const LowerBounds lb = lower_bounds(desk.cfg.base);
    int checked = 0, below = 0;
    for (const auto &m : desk.result.records)
    {
        if (m.scheme != "proposed" || !m.feasible)
            continue;
        ++checked;
        if (m.max_backhaul < lb.per_link - 1e-9 || m.total_backhaul < lb.total - 1e-9)
            ++below;
    }
    const AggregateRow *r6 = desk.row("proposed", 6);
    const bool trend = r6 && r6->trials > 0 && r6->max_backhaul.mean <= 1.5 * lb.per_link;
    return {checked > 0 && below == 0 && trend,
            std::to_string(below) + " of " + std::to_string(checked) + " trials below the bounds " + fmt(lb.per_link) +
                " / " + fmt(lb.total) + ", N_T = 6 mean max backhaul " + (r6 ? fmt(r6->max_backhaul.mean) : "n/a") +
                " (limit " + fmt(1.5 * lb.per_link) + ")"};
}

Outcome power_ordering(const DeskRun &desk)
{
    constexpr int nt = 4;
    std::map<int, double> proposed, full;
    for (const auto &m : desk.result.records)
    {
        if (m.sweep != nt || !m.feasible)
            continue;
        if (m.scheme == "proposed")
            proposed[m.trial] = m.transmit_power_mw;
        else if (m.scheme == "full-coop")
            full[m.trial] = m.transmit_power_mw;
    }
    int paired = 0, violations = 0;
    for (const auto &[trial, p] : proposed)
        if (auto it = full.find(trial); it != full.end())
        {
            ++paired;
            if (it->second > p + 1e-6)
                ++violations;
        }
    const AggregateRow *rp = desk.row("proposed", nt);
    const AggregateRow *rf = desk.row("full-coop", nt);
    const AggregateRow *rc = desk.row("colocated", nt);
    if (!rp || !rf || !rc)
        return {false, "missing summary rows"};
    const double mp = rp->transmit_power_mw.mean, mf = rf->transmit_power_mw.mean, mc = rc->transmit_power_mw.mean;
    const bool full_ok = mf <= mp && violations == 0 && paired > 0;
    const bool coloc_ok = mc >= mp;
    return {full_ok && coloc_ok,
            "mean power full-coop " + fmt(mw_to_dbm(mf)) + " dBm, proposed " + fmt(mw_to_dbm(mp)) +
                " dBm, co-located " + fmt(mw_to_dbm(mc)) + " dBm; paired full-coop <= proposed violations " +
                std::to_string(violations) + "/" + std::to_string(paired) + "; full-coop ordering " +
                (full_ok ? "holds" : "fails") + ", co-located ordering " + (coloc_ok ? "holds" : "fails")};
}

Outcome antenna_monotonicity(const DeskRun &desk)
{
    const std::vector<int> nts = {2, 4, 6};
    std::string detail = "mean max backhaul";
    bool ok = true;
    const auto check = [&](auto stat_of, const std::string &label) {
        detail += label;
        for (std::size_t i = 0; i < nts.size(); ++i)
        {
            const AggregateRow *r = desk.row("proposed", nts[i]);
            if (!r || r->trials == 0)
            {
                ok = false;
                detail += " n/a";
                continue;
            }
            detail += " " + fmt(stat_of(*r).mean);
            if (i == 0)
                continue;
            const AggregateRow *prev = desk.row("proposed", nts[i - 1]);
            if (prev && prev->trials > 0)
            {
                const double slack = std::max(stat_of(*r).half_width, stat_of(*prev).half_width);
                if (stat_of(*r).mean > stat_of(*prev).mean + slack)
                    ok = false;
            }
        }
    };
    check([](const AggregateRow &r) { return r.max_backhaul; }, "");
    check([](const AggregateRow &r) { return r.transmit_power_mw; }, "; mean power (mW)");
    return {ok, detail + " at N_T = 2, 4, 6"};
}

Outcome harvest_floor(const DeskRun &desk)
{
    int checked = 0, below = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto &m : desk.result.records)
    {
        if (!m.feasible)
            continue;
        const SystemParams p = params_at(desk.cfg.base, desk.cfg.sweep, m.sweep);
        double floor = 0.0;
        for (double v : p.min_harvest_mw)
            floor += v;
        ++checked;
        worst = std::min(worst, m.harvested_mw - floor);
        if (m.harvested_mw < floor - 1e-6)
            ++below;
    }
    return {checked > 0 && below == 0, std::to_string(below) + " of " + std::to_string(checked) +
                                           " feasible records below the floor, smallest margin " + fmt(worst) + " mW"};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance run"};
    std::string report_path;
    std::string cli = COMPSWIPT_CLI;
    std::string work = (std::filesystem::temp_directory_path() / "compswipt-acceptance").string();
    bool strict = false;
    int trials = 50;
    unsigned threads = 0;
    app.add_option("--report", report_path, "also write the PASS/FAIL lines to this file");
    app.add_option("--cli", cli, "path of the compswipt executable");
    app.add_option("--work", work, "scratch directory for output files");
    app.add_option("--trials", trials, "trials per sweep point of the desk run")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "worker threads, 0 for all cores");
    app.add_flag("--strict", strict, "exit nonzero when any criterion fails");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::remove_all(work);
    std::filesystem::create_directories(work);

    std::vector<std::string> lines;
    int failures = 0;
    const auto record = [&](int id, const std::string &name, const auto &body) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            o = body();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("threw: ") + e.what()};
        }
        const std::string line = "criterion " + std::to_string(id) + " (" + name + "): " +
                                 (o.passed ? "PASS" : "FAIL") + " | " + o.detail + " | " +
                                 fmt(seconds_since(t0)) + " s";
        std::cout << line << std::endl;
        lines.push_back(line);
        failures += o.passed ? 0 : 1;
    };

    record(1, "solver oracle", solver_oracle);
    record(2, "rank-one certificate", rank_one_certificate);

    // criteria 3, 5, 6, 7 and 9 share one desk-scale run
    DeskRun desk;
    desk.cfg.sweep = parse_sweep("nt=2,4,6");
    desk.cfg.trials = trials;
    desk.cfg.seed = 1;
    desk.cfg.threads = threads;
    desk.cfg.output_dir = (std::filesystem::path(work) / "desk").string();
    std::string desk_error;
    {
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            desk.result = run_experiment(desk.cfg);
            emit_results(desk.result, desk.cfg.output_dir);
        }
        catch (const std::exception &e)
        {
            desk_error = e.what();
        }
        desk.seconds = seconds_since(t0);
    }
    const auto desk_check = [&](auto fn) {
        return [&, fn]() -> Outcome {
            if (!desk_error.empty())
                return {false, "desk run failed: " + desk_error};
            return fn(desk);
        };
    };
    record(3, "lower bounds", desk_check(lower_bounds_check));
    record(4, "exhaustive equivalence", exhaustive_equivalence);
    record(5, "paired power ordering", desk_check(power_ordering));
    record(6, "antenna monotonicity", desk_check(antenna_monotonicity));
    record(7, "harvest floor", desk_check(harvest_floor));
    record(8, "determinism", [&] { return determinism(cli, work); });
    record(9, "desk-scale runtime", [&]() -> Outcome {
        if (!desk_error.empty())
            return {false, "desk run failed: " + desk_error};
        return {desk.seconds < 1800.0, std::to_string(desk.result.records.size()) + " records in " +
                                           fmt(desk.seconds) + " s on " +
                                           std::to_string(std::max(1u, std::thread::hardware_concurrency())) +
                                           " hardware thread(s), limit 1800 s"};
    });

    const std::string total = std::to_string(9 - failures) + "/9 criteria passed";
    std::cout << total << std::endl;
    if (!report_path.empty())
    {
        std::ofstream out(report_path);
        for (const auto &l : lines)
            out << l << '\n';
        out << total << '\n';
    }
    return strict && failures > 0 ? 1 : 0;
}
