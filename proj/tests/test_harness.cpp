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


#include "doctest.h"

#include "compswipt/config.hpp"
#include "compswipt/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

using namespace compswipt;

namespace
{

const std::string default_config = std::string(COMPSWIPT_SOURCE_DIR) + "/config/default.json";

ExperimentConfig tiny_config()
{
    ExperimentConfig cfg;
    cfg.base.num_ir = 2;
    cfg.base.num_rrh = 2;
    cfg.base.num_er = 1;
    cfg.base.finalize();
    cfg.schemes = {"colocated", "full-coop"};
    cfg.sweep = parse_sweep("nt=2,3");
    cfg.trials = 3;
    cfg.seed = 11;
    cfg.threads = 1;
    return cfg;
}

std::string strip_wall_clock(const std::string &csv)
{
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        out << line.substr(0, line.rfind(',')) << "\n";
    return out.str();
}

std::string csv_of(const std::vector<MetricsRecord> &records)
{
    std::ostringstream os;
    write_metrics(os, records, Format::csv);
    return os.str();
}

std::filesystem::path scratch_dir(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("compswipt-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("sweep parsing")
{
    CHECK(parse_sweep("nt=2..8").values == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
    CHECK(parse_sweep("nt=2..8:2").values == std::vector<int>{2, 4, 6, 8});
    CHECK(parse_sweep("NT = 2, 4,6").values == std::vector<int>{2, 4, 6});
    CHECK(parse_sweep("k=3..3").variable == "k");
    CHECK(parse_sweep("m=0..2").values == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(parse_sweep("nt"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("nt=5..2"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("nt=0..2"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("nt=a..b"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("nt=2,,3"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("x=1..2"), ConfigError);

    CHECK(parse_scheme_list("full-coop, proposed,full-coop") == std::vector<std::string>{"full-coop", "proposed"});
    CHECK_THROWS_AS(parse_scheme_list("proposed,magic"), ConfigError);
    CHECK_THROWS_AS(parse_scheme_list(""), ConfigError);
}

TEST_CASE("experiment config validation")
{
    ExperimentConfig cfg = tiny_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_config();
    cfg.schemes.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_config();
    cfg.schemes = {"nope"};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_config();
    cfg.sweep.values = {0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("trial seeds are deterministic and distinct")
{
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
    std::set<std::uint64_t> seen;
    for (int s = 0; s < 2; ++s)
        for (int v = 2; v <= 8; ++v)
            for (int t = 0; t < 100; ++t)
                seen.insert(trial_seed(static_cast<std::uint64_t>(s), v, t));
    CHECK(seen.size() == 2 * 7 * 100);
}

TEST_CASE("shipped config holds the default parameters")
{
    const SystemParams p = load_params(default_config);
    CHECK(p.carrier_frequency_hz == 1.9e9);
    CHECK(p.path_loss_exponent == 3.6);
    CHECK(mw_to_dbm(p.noise_mw) == doctest::Approx(-23.0).epsilon(1e-12));
    CHECK(p.noise_mw == doctest::Approx(5.0119e-3).epsilon(1e-4));
    for (double g : p.min_sinr)
        CHECK(linear_to_db(g) == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(p.cp_circuit_mw == doctest::Approx(1e4).epsilon(1e-12));
    CHECK(p.cp_max_mw == doctest::Approx(1e5).epsilon(1e-12));
    for (double v : p.rrh_circuit_mw)
        CHECK(v == doctest::Approx(1e3).epsilon(1e-12));
    CHECK(1.0 / p.pa_inefficiency == doctest::Approx(0.38).epsilon(1e-12));
    for (double v : p.max_tx_mw)
        CHECK(mw_to_dbm(v) == doctest::Approx(46.0).epsilon(1e-12));
    for (double v : p.min_harvest_mw)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.conversion_efficiency == 0.5);
    CHECK(p.power_line_loss_fraction == 0.2);
    CHECK(p.kappa == 1e-4);
    CHECK(p.max_iterations == 20);
    CHECK_FALSE(p.backhaul_cap.has_value());

    const SystemParams d = SystemParams::defaults();
    CHECK(p.num_rrh == d.num_rrh);
    CHECK(p.num_ir == d.num_ir);
    CHECK(p.num_er == d.num_er);
    CHECK(p.antennas_per_rrh == d.antennas_per_rrh);
    CHECK(p.antenna_gain_db == d.antenna_gain_db);
    CHECK(p.line_loss_beta == d.line_loss_beta);
    CHECK(p.delta == d.delta);
    CHECK(p.eta == d.eta);
    CHECK(dump_params(p) == dump_params(d));
}

TEST_CASE("config round trip and errors")
{
    SystemParams p = SystemParams::defaults();
    p.num_ir = 3;
    p.min_sinr = {db_to_linear(10.0), db_to_linear(12.0), db_to_linear(15.0)};
    p.max_tx_mw = {std::numeric_limits<double>::infinity()};
    p.backhaul_cap = 12.5;
    p.eta = 0.25;
    p.finalize();
    const SystemParams q = parse_params(dump_params(p));
    CHECK(dump_params(q) == dump_params(p));
    REQUIRE(q.min_sinr.size() == 3);
    for (int k = 0; k < 3; ++k)
        CHECK(q.min_sinr[k] == doctest::Approx(p.min_sinr[k]).epsilon(1e-12));
    CHECK(std::isinf(q.max_tx_mw[2]));
    CHECK(q.backhaul_cap == 12.5);

    CHECK(parse_params("// only a comment\n{ /* inline */ \"num_ir\": 2 }").num_ir == 2);
    CHECK_THROWS_AS(parse_params("{\"num_irs\": 2}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"num_ir\": 2.5}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"num_ir\": \"two\"}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"num_ir\": 3, \"min_sinr_db\": [1, 2]}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"pa_efficiency\": 1.5}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"kappa\": -1}"), ConfigError);
    CHECK_THROWS_AS(parse_params("{\"num_ir\": 0}"), ConfigError);
    CHECK_THROWS_AS(parse_params("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_params("{ not json"), ConfigError);
    CHECK_THROWS_AS(load_params("/nonexistent/compswipt.json"), ConfigError);

    std::ostringstream table;
    print_params(table, SystemParams::defaults());
    CHECK(table.str().find("-23 dBm") != std::string::npos);
    CHECK(table.str().find("15 dB") != std::string::npos);
    CHECK(table.str().find("46 dBm") != std::string::npos);
}

TEST_CASE("experiment produces one record per trial, sweep value and scheme")
{
    const ExperimentConfig cfg = tiny_config();
    const ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.records.size() == 12);
    // sorted by sweep, trial, then canonical scheme order
    CHECK(res.records[0].sweep == 2);
    CHECK(res.records[0].trial == 0);
    CHECK(res.records[0].scheme == "full-coop");
    CHECK(res.records[1].scheme == "colocated");
    CHECK(res.records[11].sweep == 3);
    CHECK(res.records[11].trial == 2);
    for (const MetricsRecord &r : res.records)
    {
        if (!r.feasible)
            continue;
        CHECK(std::abs(r.transmit_power_dbm - 10.0 * std::log10(r.transmit_power_mw)) <= 1e-9);
        CHECK(std::abs(r.harvested_dbm - 10.0 * std::log10(r.harvested_mw)) <= 1e-9);
        CHECK(r.harvested_mw >= 1.0 - 1e-6);
        CHECK(r.wall_clock_ms >= 0.0);
    }
    REQUIRE(res.summary.size() == 4);
    CHECK(res.summary[0].scheme == "full-coop");
    CHECK(res.summary[0].trials + res.summary[0].infeasible == 3);
    const double r = std::log2(1.0 + db_to_linear(15.0));
    CHECK(res.summary[0].bound_per_link == doctest::Approx(r));
    CHECK(res.summary[0].bound_total == doctest::Approx(2.0 * r));
}

TEST_CASE("experiment output is deterministic across runs and thread counts")
{
    ExperimentConfig a = tiny_config();
    ExperimentConfig b = a;
    b.threads = 4;
    const std::string first = strip_wall_clock(csv_of(run_experiment(a).records));
    const std::string second = strip_wall_clock(csv_of(run_experiment(a).records));
    const std::string threaded = strip_wall_clock(csv_of(run_experiment(b).records));
    CHECK(first == second);
    CHECK(first == threaded);
    ExperimentConfig c = a;
    c.seed = 12;
    CHECK(strip_wall_clock(csv_of(run_experiment(c).records)) != first);
}

TEST_CASE("aggregates")
{
    ExperimentConfig cfg = tiny_config();
    cfg.sweep = parse_sweep("nt=2");
    cfg.schemes = {"full-coop"};
    std::vector<MetricsRecord> recs;
    for (int t = 0; t < 4; ++t)
    {
        MetricsRecord m;
        m.trial = t;
        m.scheme = "full-coop";
        m.sweep = 2;
        m.max_backhaul = 10.0 + t;
        m.total_backhaul = 20.0;
        m.transmit_power_mw = t < 2 ? 10.0 : 1000.0;
        m.transmit_power_dbm = mw_to_dbm(m.transmit_power_mw);
        m.harvested_mw = 2.0;
        m.harvested_dbm = mw_to_dbm(2.0);
        m.feasible = t != 3;
        recs.push_back(m);
    }
    const std::vector<AggregateRow> rows = aggregate(recs, cfg);
    REQUIRE(rows.size() == 1);
    const AggregateRow &row = rows[0];
    CHECK(row.trials == 3);
    CHECK(row.infeasible == 1);
    CHECK(row.max_backhaul.mean == doctest::Approx(11.0));
    // sample standard deviation 1, n = 3
    CHECK(row.max_backhaul.half_width == doctest::Approx(1.96 / std::sqrt(3.0)));
    CHECK(row.total_backhaul.half_width == 0.0);
    CHECK(row.transmit_power_mw.mean == doctest::Approx(340.0));
    CHECK(row.transmit_power_dbm == doctest::Approx(mw_to_dbm(340.0)));

    cfg.schemes = {"full-coop", "exhaustive"};
    const std::vector<AggregateRow> with_empty = aggregate(recs, cfg);
    REQUIRE(with_empty.size() == 2);
    CHECK(with_empty[1].trials == 0);
    CHECK(std::isnan(with_empty[1].max_backhaul.mean));
    std::ostringstream os;
    write_summary(os, with_empty);
    std::string line;
    std::istringstream in(os.str());
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line.rfind("exhaustive,2,0,0,0,,", 0) == 0);
}

TEST_CASE("skipped exhaustive scheme yields an empty summary row")
{
    ExperimentConfig cfg = tiny_config();
    cfg.schemes = {"exhaustive"};
    cfg.sweep = parse_sweep("nt=2");
    cfg.trials = 1;
    cfg.enumeration_cap = 4;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.records.empty());
    REQUIRE(res.notes.size() == 1);
    REQUIRE(res.summary.size() == 1);
    CHECK(res.summary[0].trials == 0);
}

TEST_CASE("default-size lower-bound columns")
{
    ExperimentConfig cfg;
    cfg.sweep = parse_sweep("nt=2..4");
    const std::vector<AggregateRow> rows = aggregate({}, cfg);
    REQUIRE(rows.size() == 9);
    for (const AggregateRow &r : rows)
    {
        CHECK(r.bound_per_link == doctest::Approx(10.0558).epsilon(1e-4));
        CHECK(r.bound_total == doctest::Approx(25.1396).epsilon(1e-4));
    }
}

TEST_CASE("metrics CSV and JSON lines")
{
    std::vector<MetricsRecord> recs = run_experiment(tiny_config()).records;
    MetricsRecord failed;
    failed.trial = 7;
    failed.scheme = "proposed";
    failed.sweep = 4;
    failed.max_backhaul = failed.total_backhaul = std::numeric_limits<double>::quiet_NaN();
    failed.transmit_power_mw = failed.transmit_power_dbm = std::numeric_limits<double>::quiet_NaN();
    failed.harvested_mw = failed.harvested_dbm = std::numeric_limits<double>::quiet_NaN();
    failed.rank_failure = true;
    failed.wall_clock_ms = 0.1;
    recs.push_back(failed);

    std::istringstream in(csv_of(recs));
    const std::vector<MetricsRecord> back = read_metrics_csv(in);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
        CHECK(back[i] == recs[i]);
    CHECK(csv_of(recs).rfind(metrics_header() + "\n", 0) == 0);

    std::istringstream bad("trial,scheme\n1,x\n");
    CHECK_THROWS_AS(read_metrics_csv(bad), ConfigError);

    std::ostringstream js;
    write_metrics(js, recs, Format::json_lines);
    std::istringstream lines(js.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line))
    {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("trial").get<int>() == recs[n].trial);
        CHECK(j.at("scheme").get<std::string>() == recs[n].scheme);
        CHECK(j.at("feasible").get<bool>() == recs[n].feasible);
        if (std::isnan(recs[n].max_backhaul))
            CHECK(j.at("max_backhaul").is_null());
        else
            CHECK(j.at("max_backhaul").get<double>() == recs[n].max_backhaul);
        ++n;
    }
    CHECK(n == recs.size());
}

TEST_CASE("result files")
{
    const auto dir = scratch_dir("emit");
    ExperimentConfig cfg = tiny_config();
    cfg.output_dir = (dir / "nested").string();
    const ExperimentResult res = run_experiment(cfg);
    for (const char *name : {"metrics.csv", "metrics.jsonl", "summary.csv"})
        CHECK(std::filesystem::exists(dir / "nested" / name));
    std::ifstream csv(dir / "nested" / "metrics.csv");
    CHECK(read_metrics_csv(csv).size() == res.records.size());

    // a regular file where the directory should be
    std::ofstream(dir / "blocker") << "x";
    CHECK_THROWS_AS(emit_results(res, (dir / "blocker").string()), std::runtime_error);
    cfg.output_dir = (dir / "blocker" / "below").string();
    CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("report and trace serialization")
{
    SystemParams p = SystemParams::defaults();
    p.num_ir = 2;
    p.num_rrh = 2;
    p.antennas_per_rrh = 2;
    p.num_er = 1;
    p.max_iterations = 3;
    p.finalize();
    Rng rng(5);
    const Topology topo = build_topology(p, rng);
    const ChannelSet ch = sample_channels(topo, p, rng);
    const ReweightResult res = run_reweighted(ch, p);
    const auto j = nlohmann::json::parse(report_to_json(res.report));
    CHECK(j.at("scheme") == "proposed");
    CHECK(j.at("backhaul").at("max").get<double>() == res.report.backhaul.max);
    CHECK(j.at("beamformers").size() == 2);
    CHECK(j.at("beamformers")[0].size() == 4);
    CHECK(j.at("solver").at("solves") == 3);
    CHECK(j.at("feasibility").at("c1").size() == 2);

    std::ostringstream os;
    write_trace_csv(os, res.trace);
    std::istringstream in(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        ++lines;
    CHECK(lines == 4);
}

TEST_CASE("selftest passes")
{
    for (const SelftestCheck &c : run_selftest())
    {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
