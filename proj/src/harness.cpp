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


#include "compswipt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "compswipt/parallel.hpp"

namespace compswipt
{

namespace
{

using nlohmann::json;

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

int parse_int(const std::string &text, const std::string &context)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    int v = 0;
    try
    {
        v = std::stoi(t, &used);
    }
    catch (const std::exception &)
    {
        throw ConfigError(context + ": '" + text + "' is not an integer");
    }
    if (used != t.size())
        throw ConfigError(context + ": '" + text + "' is not an integer");
    return v;
}

// Shortest text that reads back to the same double.
std::string fmt(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision)
    {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x)
            break;
    }
    return buf;
}

double parse_double(const std::string &text)
{
    const std::string t = trim(text);
    if (t == "nan")
        return nan_value;
    char *end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0')
        throw ConfigError("'" + text + "' is not a number");
    return v;
}

json number_or_null(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int scheme_rank(const std::string &name)
{
    const auto &all = known_schemes();
    return static_cast<int>(std::find(all.begin(), all.end(), name) - all.begin());
}

MetricsRecord record_of(const SolutionReport &r)
{
    MetricsRecord m;
    m.max_backhaul = r.backhaul.max;
    m.total_backhaul = r.backhaul.total;
    m.transmit_power_mw = r.transmit_power_mw;
    m.transmit_power_dbm = mw_to_dbm(r.transmit_power_mw);
    m.harvested_mw = r.total_harvested_mw();
    m.harvested_dbm = mw_to_dbm(m.harvested_mw);
    m.feasible = r.feasible;
    m.rank_failure = r.rank_failure;
    return m;
}

MetricsRecord failed_record()
{
    MetricsRecord m;
    m.max_backhaul = m.total_backhaul = nan_value;
    m.transmit_power_mw = m.transmit_power_dbm = nan_value;
    m.harvested_mw = m.harvested_dbm = nan_value;
    return m;
}

Stat stat_of(const std::vector<double> &v)
{
    Stat s;
    s.count = static_cast<int>(v.size());
    if (v.empty())
    {
        s.mean = s.half_width = nan_value;
        return s;
    }
    double sum = 0.0;
    for (double x : v)
        sum += x;
    s.mean = sum / s.count;
    if (s.count > 1)
    {
        double ss = 0.0;
        for (double x : v)
            ss += (x - s.mean) * (x - s.mean);
        s.half_width = 1.96 * std::sqrt(ss / (s.count - 1)) / std::sqrt(static_cast<double>(s.count));
    }
    return s;
}

bool same(double a, double b)
{
    return a == b || (std::isnan(a) && std::isnan(b));
}

} // namespace

// ----------------------------------------------------------------- config

Sweep parse_sweep(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError("sweep '" + text + "': expected VAR=VALUES");
    Sweep s;
    s.variable = trim(text.substr(0, eq));
    std::transform(s.variable.begin(), s.variable.end(), s.variable.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s.variable != "nt" && s.variable != "k" && s.variable != "l" && s.variable != "m")
        throw ConfigError("sweep '" + text + "': variable must be nt, k, l or m");
    const std::string values = trim(text.substr(eq + 1));
    s.values.clear();
    const auto dots = values.find("..");
    if (dots != std::string::npos)
    {
        std::string hi = values.substr(dots + 2);
        int step = 1;
        if (const auto colon = hi.find(':'); colon != std::string::npos)
        {
            step = parse_int(hi.substr(colon + 1), "sweep step");
            hi = hi.substr(0, colon);
        }
        const int a = parse_int(values.substr(0, dots), "sweep start");
        const int b = parse_int(hi, "sweep end");
        if (step < 1 || b < a)
            throw ConfigError("sweep '" + text + "': empty range");
        for (int v = a; v <= b; v += step)
            s.values.push_back(v);
    }
    else
    {
        for (const std::string &item : split(values, ','))
            s.values.push_back(parse_int(item, "sweep value"));
    }
    if (s.values.empty())
        throw ConfigError("sweep '" + text + "': no values");
    for (int v : s.values)
        if (v < (s.variable == "m" ? 0 : 1))
            throw ConfigError("sweep '" + text + "': values must be positive");
    return s;
}

std::vector<std::string> parse_scheme_list(const std::string &text)
{
    std::vector<std::string> out;
    for (const std::string &item : split(text, ','))
    {
        const std::string name = trim(item);
        if (scheme_rank(name) == static_cast<int>(known_schemes().size()))
            throw ConfigError("unknown scheme '" + name + "'");
        if (std::find(out.begin(), out.end(), name) == out.end())
            out.push_back(name);
    }
    if (out.empty())
        throw ConfigError("scheme list is empty");
    return out;
}

void ExperimentConfig::validate() const
{
    if (trials < 1)
        throw ConfigError("trial count must be at least 1");
    if (schemes.empty())
        throw ConfigError("scheme list is empty");
    for (const std::string &s : schemes)
        if (scheme_rank(s) == static_cast<int>(known_schemes().size()))
            throw ConfigError("unknown scheme '" + s + "'");
    if (sweep.values.empty())
        throw ConfigError("sweep has no values");
    for (int v : sweep.values)
        params_at(base, sweep, v);
    if (!(solver.tolerance > 0.0) || solver.max_iterations < 1)
        throw ConfigError("solver tolerance and iteration limit must be positive");
}

SystemParams params_at(const SystemParams &base, const Sweep &sweep, int value)
{
    SystemParams p = base;
    if (sweep.variable == "nt")
        p.antennas_per_rrh = value;
    else if (sweep.variable == "k")
        p.num_ir = value;
    else if (sweep.variable == "l")
        p.num_rrh = value;
    else if (sweep.variable == "m")
        p.num_er = value;
    else
        throw ConfigError("unknown sweep variable '" + sweep.variable + "'");
    try
    {
        p.finalize();
    }
    catch (const std::exception &e)
    {
        throw ConfigError(sweep.variable + "=" + std::to_string(value) + ": " + e.what());
    }
    return p;
}

std::uint64_t trial_seed(std::uint64_t master, int sweep_value, int trial)
{
    std::uint64_t h = splitmix(master);
    h = splitmix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(sweep_value)));
    return splitmix(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial)) << 1));
}

bool MetricsRecord::operator==(const MetricsRecord &o) const
{
    return trial == o.trial && scheme == o.scheme && sweep == o.sweep && same(max_backhaul, o.max_backhaul) &&
           same(total_backhaul, o.total_backhaul) && same(transmit_power_mw, o.transmit_power_mw) &&
           same(transmit_power_dbm, o.transmit_power_dbm) && same(harvested_mw, o.harvested_mw) &&
           same(harvested_dbm, o.harvested_dbm) && feasible == o.feasible && rank_failure == o.rank_failure &&
           same(wall_clock_ms, o.wall_clock_ms);
}

// ------------------------------------------------------------ experiment

ExperimentResult run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (!cfg.output_dir.empty())
        prepare_output_dir(cfg.output_dir);

    ExperimentResult result;
    std::vector<std::string> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end(),
              [](const std::string &a, const std::string &b) { return scheme_rank(a) < scheme_rank(b); });

    struct Point
    {
        int sweep;
        SystemParams params;
        std::vector<std::string> schemes;
    };
    std::vector<Point> points;
    for (int v : cfg.sweep.values)
    {
        Point pt{v, params_at(cfg.base, cfg.sweep, v), {}};
        for (const std::string &s : schemes)
        {
            if (s == "exhaustive")
            {
                const std::uint64_t n = AssignmentEnumeration(pt.params.num_ir, pt.params.num_rrh).size();
                if (n > cfg.enumeration_cap)
                {
                    const std::string note = "exhaustive disabled at " + cfg.sweep.variable + "=" +
                                             std::to_string(v) + ": " + std::to_string(n) +
                                             " assignments exceed the cap of " +
                                             std::to_string(cfg.enumeration_cap);
                    spdlog::info(note);
                    result.notes.push_back(note);
                    continue;
                }
                if (n > 1000)
                    spdlog::info("exhaustive at {}={} enumerates {} assignments; this is slow", cfg.sweep.variable, v,
                                 n);
            }
            pt.schemes.push_back(s);
        }
        points.push_back(std::move(pt));
    }

    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t jobs = points.size() * trials;
    std::vector<std::vector<MetricsRecord>> out(jobs);
    std::mutex log_mutex;

    parallel_for(jobs, cfg.threads, [&](std::size_t job) {
        const Point &pt = points[job / trials];
        const int trial = static_cast<int>(job % trials);
        const std::uint64_t seed = trial_seed(cfg.seed, pt.sweep, trial);
        Rng rng(seed);
        const Topology topo = build_topology(pt.params, rng);
        const ChannelSet ch = sample_channels(topo, pt.params, rng);

        for (const std::string &scheme : pt.schemes)
        {
            const auto t0 = std::chrono::steady_clock::now();
            MetricsRecord rec;
            try
            {
                SolutionReport report;
                if (scheme == "proposed" || scheme == "proposed-10-iter")
                {
                    SystemParams p = pt.params;
                    if (scheme == "proposed-10-iter")
                        p.max_iterations = 10;
                    ReweightOptions opt;
                    opt.solver = cfg.solver;
                    opt.zero = cfg.zero;
                    report = run_reweighted(ch, p, opt, scheme).report;
                }
                else if (scheme == "full-coop")
                    report = full_cooperation(ch, pt.params, cfg.solver, cfg.zero);
                else if (scheme == "exhaustive")
                {
                    ExhaustiveOptions opt;
                    opt.enumeration_cap = cfg.enumeration_cap;
                    opt.solver = cfg.solver;
                    opt.zero = cfg.zero;
                    report = exhaustive_search(ch, pt.params, opt).report;
                }
                else
                {
                    Rng colocated_rng(splitmix(seed ^ 0x636f6c6f63617465ULL));
                    report = colocated_system(topo, pt.params, colocated_rng, cfg.solver, cfg.zero);
                }
                rec = record_of(report);
                if (!rec.feasible)
                {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    spdlog::warn("{} {}={} trial {}: solution violates a constraint (worst margin {})", scheme,
                                 cfg.sweep.variable, pt.sweep, trial, report.feasibility.worst_margin());
                }
            }
            catch (const std::exception &e)
            {
                rec = failed_record();
                std::lock_guard<std::mutex> lock(log_mutex);
                spdlog::warn("{} {}={} trial {}: {}", scheme, cfg.sweep.variable, pt.sweep, trial, e.what());
            }
            rec.trial = trial;
            rec.scheme = scheme;
            rec.sweep = pt.sweep;
            rec.wall_clock_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out[job].push_back(std::move(rec));
        }
        spdlog::debug("{}={} trial {} done", cfg.sweep.variable, pt.sweep, trial);
    });

    for (auto &chunk : out)
        for (auto &rec : chunk)
            result.records.push_back(std::move(rec));
    std::map<int, std::size_t> order;
    for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i)
        order.emplace(cfg.sweep.values[i], i);
    std::stable_sort(result.records.begin(), result.records.end(), [&](const auto &a, const auto &b) {
        if (a.sweep != b.sweep)
            return order.at(a.sweep) < order.at(b.sweep);
        if (a.trial != b.trial)
            return a.trial < b.trial;
        return scheme_rank(a.scheme) < scheme_rank(b.scheme);
    });

    ExperimentConfig sorted = cfg;
    sorted.schemes = schemes;
    result.summary = aggregate(result.records, sorted);
    if (!cfg.output_dir.empty())
        emit_results(result, cfg.output_dir);
    return result;
}

std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord> &records, const ExperimentConfig &cfg)
{
    std::vector<AggregateRow> rows;
    std::set<int> seen;
    for (int v : cfg.sweep.values)
    {
        if (!seen.insert(v).second)
            continue;
        const LowerBounds lb = lower_bounds(params_at(cfg.base, cfg.sweep, v));
        for (const std::string &scheme : cfg.schemes)
        {
            AggregateRow row;
            row.scheme = scheme;
            row.sweep = v;
            row.bound_per_link = lb.per_link;
            row.bound_total = lb.total;
            std::vector<double> mb, tb, pw, hv;
            for (const MetricsRecord &r : records)
            {
                if (r.sweep != v || r.scheme != scheme)
                    continue;
                if (r.rank_failure)
                    ++row.rank_failures;
                if (!r.feasible)
                {
                    ++row.infeasible;
                    continue;
                }
                mb.push_back(r.max_backhaul);
                tb.push_back(r.total_backhaul);
                pw.push_back(r.transmit_power_mw);
                hv.push_back(r.harvested_mw);
            }
            row.trials = static_cast<int>(mb.size());
            row.max_backhaul = stat_of(mb);
            row.total_backhaul = stat_of(tb);
            row.transmit_power_mw = stat_of(pw);
            row.harvested_mw = stat_of(hv);
            row.transmit_power_dbm = row.trials ? mw_to_dbm(row.transmit_power_mw.mean) : nan_value;
            row.harvested_dbm = row.trials ? mw_to_dbm(row.harvested_mw.mean) : nan_value;
            rows.push_back(row);
        }
    }
    return rows;
}

// ---------------------------------------------------------------- output

const std::string &metrics_header()
{
    static const std::string header = "trial,scheme,sweep,max_backhaul,total_backhaul,transmit_power_mw,"
                                      "transmit_power_dbm,harvested_mw,harvested_dbm,feasible,rank_failure,"
                                      "wall_clock_ms";
    return header;
}

void write_metrics(std::ostream &os, const std::vector<MetricsRecord> &records, Format format)
{
    if (format == Format::csv)
    {
        os << metrics_header() << "\n";
        for (const MetricsRecord &r : records)
            os << r.trial << ',' << r.scheme << ',' << r.sweep << ',' << fmt(r.max_backhaul) << ','
               << fmt(r.total_backhaul) << ',' << fmt(r.transmit_power_mw) << ',' << fmt(r.transmit_power_dbm) << ','
               << fmt(r.harvested_mw) << ',' << fmt(r.harvested_dbm) << ',' << (r.feasible ? 1 : 0) << ','
               << (r.rank_failure ? 1 : 0) << ',' << fmt(r.wall_clock_ms) << "\n";
        return;
    }
    for (const MetricsRecord &r : records)
    {
        json j = json::object();
        j["trial"] = r.trial;
        j["scheme"] = r.scheme;
        j["sweep"] = r.sweep;
        j["max_backhaul"] = number_or_null(r.max_backhaul);
        j["total_backhaul"] = number_or_null(r.total_backhaul);
        j["transmit_power_mw"] = number_or_null(r.transmit_power_mw);
        j["transmit_power_dbm"] = number_or_null(r.transmit_power_dbm);
        j["harvested_mw"] = number_or_null(r.harvested_mw);
        j["harvested_dbm"] = number_or_null(r.harvested_dbm);
        j["feasible"] = r.feasible;
        j["rank_failure"] = r.rank_failure;
        j["wall_clock_ms"] = r.wall_clock_ms;
        os << j.dump() << "\n";
    }
}

std::vector<MetricsRecord> read_metrics_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line) || trim(line) != metrics_header())
        throw ConfigError("metrics CSV: unexpected header");
    std::vector<MetricsRecord> out;
    int line_no = 1;
    while (std::getline(is, line))
    {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> f = split(trim(line), ',');
        if (f.size() != 12)
            throw ConfigError("metrics CSV line " + std::to_string(line_no) + ": expected 12 fields");
        const std::string ctx = "metrics CSV line " + std::to_string(line_no);
        const auto flag = [&](const std::string &s) {
            const int v = parse_int(s, ctx);
            if (v != 0 && v != 1)
                throw ConfigError(ctx + ": flag must be 0 or 1");
            return v == 1;
        };
        MetricsRecord r;
        r.trial = parse_int(f[0], ctx);
        r.scheme = f[1];
        r.sweep = parse_int(f[2], ctx);
        r.max_backhaul = parse_double(f[3]);
        r.total_backhaul = parse_double(f[4]);
        r.transmit_power_mw = parse_double(f[5]);
        r.transmit_power_dbm = parse_double(f[6]);
        r.harvested_mw = parse_double(f[7]);
        r.harvested_dbm = parse_double(f[8]);
        r.feasible = flag(f[9]);
        r.rank_failure = flag(f[10]);
        r.wall_clock_ms = parse_double(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_summary(std::ostream &os, const std::vector<AggregateRow> &rows)
{
    const auto opt = [](double x) { return std::isfinite(x) ? fmt(x) : std::string(); };
    os << "scheme,sweep,trials,infeasible,rank_failures,max_backhaul_mean,max_backhaul_ci95,"
          "total_backhaul_mean,total_backhaul_ci95,transmit_power_mw_mean,transmit_power_mw_ci95,"
          "transmit_power_dbm,harvested_mw_mean,harvested_mw_ci95,harvested_dbm,bound_per_link,bound_total\n";
    for (const AggregateRow &r : rows)
        os << r.scheme << ',' << r.sweep << ',' << r.trials << ',' << r.infeasible << ',' << r.rank_failures << ','
           << opt(r.max_backhaul.mean) << ',' << opt(r.max_backhaul.half_width) << ','
           << opt(r.total_backhaul.mean) << ',' << opt(r.total_backhaul.half_width) << ','
           << opt(r.transmit_power_mw.mean) << ',' << opt(r.transmit_power_mw.half_width) << ','
           << opt(r.transmit_power_dbm) << ',' << opt(r.harvested_mw.mean) << ','
           << opt(r.harvested_mw.half_width) << ',' << opt(r.harvested_dbm) << ',' << fmt(r.bound_per_link) << ','
           << fmt(r.bound_total) << "\n";
}

void prepare_output_dir(const std::string &dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("cannot create output directory '" + dir + "'" +
                                 (ec ? ": " + ec.message() : std::string()));
    const fs::path probe = fs::path(dir) / ".write-test";
    {
        std::ofstream f(probe);
        if (!f)
            throw std::runtime_error("output directory '" + dir + "' is not writable");
    }
    fs::remove(probe, ec);
}

void emit_results(const ExperimentResult &result, const std::string &dir)
{
    namespace fs = std::filesystem;
    prepare_output_dir(dir);
    const auto write = [&](const std::string &name, auto body) {
        const std::string path = (fs::path(dir) / name).string();
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        body(f);
        f.flush();
        if (!f)
            throw std::runtime_error("write to '" + path + "' failed");
    };
    write("metrics.csv", [&](std::ostream &os) { write_metrics(os, result.records, Format::csv); });
    write("metrics.jsonl", [&](std::ostream &os) { write_metrics(os, result.records, Format::json_lines); });
    write("summary.csv", [&](std::ostream &os) { write_summary(os, result.summary); });
}

// --------------------------------------------------------------- reports

std::string report_to_json(const SolutionReport &r, int indent)
{
    const auto list = [](const std::vector<double> &v) {
        json a = json::array();
        for (double x : v)
            a.push_back(std::isinf(x) ? json(x > 0 ? "inf" : "-inf") : number_or_null(x));
        return a;
    };
    json bf = json::array();
    for (int k = 0; k < r.beamformers.num_ir(); ++k)
    {
        json w = json::array();
        const ComplexVector &v = r.beamformers.w(k);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            w.push_back({v(i).real(), v(i).imag()});
        bf.push_back(w);
    }
    json j = json::object();
    j["scheme"] = r.scheme;
    j["feasible"] = r.feasible;
    j["rank_failure"] = r.rank_failure;
    j["objective"] = number_or_null(r.objective);
    j["mask"] = r.mask.to_string();
    j["backhaul"] = {{"per_link", list(r.backhaul.per_link)},
                     {"max", r.backhaul.max},
                     {"total", r.backhaul.total},
                     {"argmax", r.backhaul.argmax}};
    j["transmit_power_mw"] = r.transmit_power_mw;
    j["transmit_power_dbm"] = number_or_null(mw_to_dbm(r.transmit_power_mw));
    j["harvested_mw"] = list(r.harvested_mw);
    j["total_harvested_mw"] = r.total_harvested_mw();
    j["sinr"] = list(r.sinr);
    j["rank_ratio"] = list(r.rank_ratio);
    j["supplies_mw"] = list(r.supplies);
    j["phi"] = r.phi;
    j["feasibility"] = {{"c1", list(r.feasibility.c1)}, {"c2", list(r.feasibility.c2)},
                        {"c3", list(r.feasibility.c3)}, {"c4", list(r.feasibility.c4)},
                        {"c5", list(r.feasibility.c5)}, {"c6", list(r.feasibility.c6)},
                        {"worst_margin", number_or_null(r.feasibility.worst_margin())}};
    j["solver"] = {{"status", r.solver.status},
                   {"iterations", r.solver.iterations},
                   {"solves", r.solver.solves},
                   {"relative_gap", r.solver.relative_gap},
                   {"primal_infeasibility", r.solver.primal_infeasibility},
                   {"dual_infeasibility", r.solver.dual_infeasibility}};
    j["beamformers"] = bf;
    return j.dump(indent);
}

void write_trace_csv(std::ostream &os, const IterationTrace &trace)
{
    os << "iteration,max_backhaul,total_backhaul,transmit_power_mw,surrogate_objective,objective,"
          "max_rank_ratio,active_slices,feasible,solver_status\n";
    for (const IterationRecord &r : trace.rows)
    {
        double ratio = 0.0;
        for (double x : r.rank_ratio)
            ratio = std::max(ratio, x);
        os << r.iteration << ',' << fmt(r.max_backhaul) << ',' << fmt(r.total_backhaul) << ','
           << fmt(r.transmit_power_mw) << ',' << fmt(r.surrogate_objective) << ',' << fmt(r.objective) << ','
           << fmt(ratio) << ',' << r.active_slices << ',' << (r.feasible ? 1 : 0) << ',' << r.solver_status << "\n";
    }
}

// -------------------------------------------------------------- selftest

std::vector<SelftestCheck> run_selftest(std::uint64_t seed)
{
    std::vector<SelftestCheck> checks;
    const auto add = [&](std::string name, bool ok, std::string detail) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };
    const auto guarded = [&](const std::string &name, auto body) {
        try
        {
            body();
        }
        catch (const std::exception &e)
        {
            add(name, false, std::string("threw: ") + e.what());
        }
    };
    Rng rng(seed);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    const auto cn = [&](int n) {
        ComplexVector v(n);
        for (int i = 0; i < n; ++i)
            v(i) = {nd(rng), nd(rng)};
        return v;
    };

    guarded("unit conversions", [&] {
        double worst = 0.0;
        for (double dbm = -60.0; dbm <= 60.0; dbm += 0.7)
            worst = std::max(worst, std::abs(mw_to_dbm(dbm_to_mw(dbm)) - dbm) / std::max(1.0, std::abs(dbm)));
        const bool ok = worst <= 1e-12 && std::abs(dbm_to_mw(-23.0) - 5.0119e-3) <= 1e-7;
        add("unit conversions", ok, "worst relative round-trip error " + fmt(worst));
    });

    guarded("single-IR closed form", [&] {
        double worst = 0.0, gap = 0.0;
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
            const ComplexVector h = cn(l * nt);
            const ChannelSet ch(l, nt, {h}, {});
            const BeamformingSdp sdp = build_sdp(ch, p, unit_weights(1, l), ActivationMask(1, l));
            const conic::ConeSolution s = conic::solve(sdp.program);
            const double expected = p.min_sinr[0] * p.noise_mw / h.squaredNorm();
            worst = std::max(worst, std::abs(s.primal_objective - expected) / expected);
            gap = std::max(gap, s.relative_gap);
        }
        add("single-IR closed form", worst <= 1e-6 && gap <= 1e-8,
            "worst relative error " + fmt(worst) + ", worst relative gap " + fmt(gap));
    });

    guarded("rank-one certificate", [&] {
        SystemParams p = SystemParams::defaults();
        p.num_ir = 3;
        p.num_rrh = 2;
        p.antennas_per_rrh = 2;
        p.num_er = 1;
        p.finalize();
        int certified = 0, tried = 0;
        double ratio = 0.0, comp = 0.0;
        for (int t = 0; t < 10 && tried < 5; ++t)
        {
            const Topology topo = build_topology(p, rng);
            const ChannelSet ch = sample_channels(topo, p, rng);
            const BeamformingSdp sdp = build_sdp(ch, p, unit_weights(3, 2), ActivationMask(3, 2));
            const conic::ConeSolution s = conic::solve(sdp.program);
            if (s.status != conic::SolveStatus::optimal)
                continue;
            ++tried;
            const Extraction ex = extract_beamformers(s, sdp.layout);
            const RankCertificate cert = verify_rank_certificate(sdp, s);
            for (double r : ex.rank_ratio)
                ratio = std::max(ratio, r);
            comp = std::max(comp, cert.max_complementarity);
            if (cert.all_rank_one && !ex.rank_failure)
                ++certified;
        }
        add("rank-one certificate", tried > 0 && certified == tried && ratio <= 1e-6 && comp <= 1e-6,
            std::to_string(certified) + "/" + std::to_string(tried) + " certified, max rank ratio " + fmt(ratio) +
                ", max complementarity " + fmt(comp));
    });

    guarded("monotone duality gap", [&] {
        SystemParams p = SystemParams::defaults();
        p.antennas_per_rrh = 2;
        p.finalize();
        const Topology topo = build_topology(p, rng);
        const ChannelSet ch = sample_channels(topo, p, rng);
        const BeamformingSdp sdp = build_sdp(ch, p, unit_weights(5, 3), ActivationMask(5, 3));
        const conic::ConeSolution s = conic::solve(sdp.program);
        double growth = 0.0;
        for (std::size_t i = 1; i < s.gap_history.size(); ++i)
            growth = std::max(growth, s.gap_history[i] / s.gap_history[i - 1] - 1.0);
        const bool monotone = growth <= 1e-9;
        const conic::KktReport kkt = conic::check_kkt(sdp.program, s);
        add("monotone duality gap", monotone && s.status == conic::SolveStatus::optimal,
            std::to_string(s.gap_history.size()) + " iterates, largest relative growth " + fmt(growth) +
                ", final status " + conic::to_string(s.status) + ", primal residual " + fmt(kkt.primal_residual));
    });

    guarded("lower bounds", [&] {
        const LowerBounds lb = lower_bounds(SystemParams::defaults());
        const bool ok = std::abs(lb.per_link / 10.0558 - 1.0) <= 1e-4 && std::abs(lb.total / 25.1396 - 1.0) <= 1e-4;
        add("lower bounds", ok, "per link " + fmt(lb.per_link) + ", total " + fmt(lb.total));
    });

    guarded("assignment enumeration", [&] {
        const AssignmentEnumeration e(3, 3);
        std::set<std::string> seen;
        for (const ActivationMask &m : e)
            seen.insert(m.to_string());
        add("assignment enumeration", e.size() == 343 && seen.size() == 343,
            std::to_string(seen.size()) + " distinct of " + std::to_string(e.size()));
    });

    guarded("slice stacking", [&] {
        const ComplexVector h = cn(12);
        const bool ok = stack_slices(split_slices(h, 3, 4)) == h;
        add("slice stacking", ok, ok ? "exact" : "mismatch");
    });

    guarded("full cooperation below a masked solution", [&] {
        SystemParams p = SystemParams::defaults();
        p.num_ir = 2;
        p.num_rrh = 2;
        p.antennas_per_rrh = 2;
        p.num_er = 1;
        p.finalize();
        const Topology topo = build_topology(p, rng);
        const ChannelSet ch = sample_channels(topo, p, rng);
        const SolutionReport fc = full_cooperation(ch, p);
        ExhaustiveOptions opt;
        opt.keep_table = true;
        const ExhaustiveResult ex = exhaustive_search(ch, p, opt);
        bool ok = true;
        for (const MaskSummary &row : ex.table)
            if (row.feasible)
                ok = ok && fc.transmit_power_mw <= row.transmit_power_mw + 1e-6;
        add("full cooperation below a masked solution", ok,
            std::to_string(ex.feasible_masks) + " feasible masks checked");
    });
    return checks;
}

} // namespace compswipt
