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


// Monte Carlo experiment driver: sweeps, per-trial metrics, aggregates and
// result files.

#ifndef COMPSWIPT_HARNESS_HPP
#define COMPSWIPT_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "compswipt/baselines.hpp"
#include "compswipt/reweighted.hpp"

namespace compswipt
{

// Schemes in their canonical emission order.
inline const std::vector<std::string> &known_schemes()
{
    static const std::vector<std::string> names = {"proposed", "proposed-10-iter", "full-coop", "exhaustive",
                                                   "colocated"};
    return names;
}

// Sweep variables: "nt" (antennas per RRH), "k" (IRs), "l" (RRHs), "m" (ERs).
struct Sweep
{
    std::string variable = "nt";
    std::vector<int> values = {2, 3, 4, 5, 6};
};

// "nt=2..8", "nt=2..8:2" or "nt=2,4,6". Throws ConfigError.
Sweep parse_sweep(const std::string &text);
std::vector<std::string> parse_scheme_list(const std::string &text);

struct ExperimentConfig
{
    SystemParams base = SystemParams::defaults();
    std::vector<std::string> schemes = {"proposed", "full-coop", "colocated"};
    Sweep sweep;
    int trials = 50;
    std::uint64_t seed = 1;
    std::string output_dir; // empty: nothing written by run_experiment
    conic::SolverOptions solver;
    ZeroTest zero;
    std::size_t enumeration_cap = 100000;
    unsigned threads = 0; // 0: hardware concurrency

    // Throws ConfigError.
    void validate() const;
};

// Parameters for one sweep point.
SystemParams params_at(const SystemParams &base, const Sweep &sweep, int value);

// Independent stream per (master seed, sweep value, trial).
std::uint64_t trial_seed(std::uint64_t master, int sweep_value, int trial);

struct MetricsRecord
{
    int trial = 0;
    std::string scheme;
    int sweep = 0;
    double max_backhaul = 0.0;   // bit/s/Hz
    double total_backhaul = 0.0; // bit/s/Hz
    double transmit_power_mw = 0.0;
    double transmit_power_dbm = 0.0;
    double harvested_mw = 0.0;
    double harvested_dbm = 0.0;
    bool feasible = false;
    bool rank_failure = false;
    double wall_clock_ms = 0.0;

    bool operator==(const MetricsRecord &) const;
};

struct Stat
{
    int count = 0;
    double mean = 0.0;
    double half_width = 0.0; // 95% normal approximation
};

struct AggregateRow
{
    std::string scheme;
    int sweep = 0;
    int trials = 0;     // feasible records included in the means
    int infeasible = 0; // excluded records
    int rank_failures = 0;
    Stat max_backhaul;
    Stat total_backhaul;
    Stat transmit_power_mw;
    double transmit_power_dbm = 0.0; // of the mean mW
    Stat harvested_mw;
    double harvested_dbm = 0.0; // of the mean mW
    double bound_per_link = 0.0;
    double bound_total = 0.0;
};

struct ExperimentResult
{
    std::vector<MetricsRecord> records; // sorted by sweep, trial, scheme
    std::vector<AggregateRow> summary;  // sorted by sweep, scheme
    std::vector<std::string> notes;     // skipped schemes and similar
};

// Per-trial solver failures are recorded as infeasible rows and never abort
// the sweep. Writes result files when cfg.output_dir is set.
ExperimentResult run_experiment(const ExperimentConfig &cfg);

std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord> &records, const ExperimentConfig &cfg);

// --------------------------------------------------------------- output

enum class Format
{
    csv,
    json_lines,
};

const std::string &metrics_header();
void write_metrics(std::ostream &os, const std::vector<MetricsRecord> &records, Format format);
std::vector<MetricsRecord> read_metrics_csv(std::istream &is);
void write_summary(std::ostream &os, const std::vector<AggregateRow> &rows);

// metrics.csv, metrics.jsonl and summary.csv in `dir`, created if missing.
// Throws std::runtime_error with the offending path.
void emit_results(const ExperimentResult &result, const std::string &dir);

// Creates `dir` and checks that it is writable.
void prepare_output_dir(const std::string &dir);

// ------------------------------------------------------------ reports

std::string report_to_json(const SolutionReport &report, int indent = 2);
void write_trace_csv(std::ostream &os, const IterationTrace &trace);

// --------------------------------------------------------------- selftest

struct SelftestCheck
{
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 2024);

} // namespace compswipt

#endif
