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


#include "compswipt/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace compswipt
{

namespace
{

using nlohmann::json;

[[noreturn]] void bad(const std::string &key, const std::string &what)
{
    throw ConfigError("config key '" + key + "': " + what);
}

double number(const json &j, const std::string &key)
{
    if (!j.is_number())
        bad(key, "expected a number");
    return j.get<double>();
}

int integer(const json &j, const std::string &key)
{
    if (!j.is_number_integer())
        bad(key, "expected an integer");
    return j.get<int>();
}

// Scalar or array; each element is mapped through `convert`. A null entry
// maps to +inf (unconstrained).
template <class F>
std::vector<double> per_entity(const json &j, const std::string &key, F convert)
{
    auto one = [&](const json &v) {
        if (v.is_null())
            return std::numeric_limits<double>::infinity();
        return convert(number(v, key));
    };
    if (j.is_array())
    {
        if (j.empty())
            bad(key, "empty array");
        std::vector<double> out;
        for (const json &v : j)
            out.push_back(one(v));
        return out;
    }
    return {one(j)};
}

json dbm_list(const std::vector<double> &mw)
{
    json out = json::array();
    for (double v : mw)
        out.push_back(std::isinf(v) ? json(nullptr) : json(mw_to_dbm(v)));
    return out;
}

// Collapses an array of equal values to a scalar.
json compact(json values)
{
    for (const json &v : values)
        if (v != values.front())
            return values;
    return values.front();
}

} // namespace

SystemParams parse_params(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text, nullptr, true, true);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    SystemParams p;
    for (const auto &[key, v] : doc.items())
    {
        if (key == "num_rrh")
            p.num_rrh = integer(v, key);
        else if (key == "num_ir")
            p.num_ir = integer(v, key);
        else if (key == "num_er")
            p.num_er = integer(v, key);
        else if (key == "antennas_per_rrh")
            p.antennas_per_rrh = integer(v, key);
        else if (key == "rrh_spacing_m")
            p.rrh_spacing_m = number(v, key);
        else if (key == "disc_radius_m")
            p.disc_radius_m = number(v, key);
        else if (key == "carrier_frequency_hz")
            p.carrier_frequency_hz = number(v, key);
        else if (key == "path_loss_exponent")
            p.path_loss_exponent = number(v, key);
        else if (key == "reference_distance_m")
            p.reference_distance_m = number(v, key);
        else if (key == "min_distance_m")
            p.min_distance_m = number(v, key);
        else if (key == "antenna_gain_db")
            p.antenna_gain_db = number(v, key);
        else if (key == "noise_dbm")
            p.noise_mw = dbm_to_mw(number(v, key));
        else if (key == "min_sinr_db")
            p.min_sinr = per_entity(v, key, db_to_linear);
        else if (key == "cp_circuit_dbm")
            p.cp_circuit_mw = dbm_to_mw(number(v, key));
        else if (key == "cp_max_dbm")
            p.cp_max_mw = dbm_to_mw(number(v, key));
        else if (key == "rrh_circuit_dbm")
            p.rrh_circuit_mw = per_entity(v, key, dbm_to_mw);
        else if (key == "pa_efficiency")
        {
            const double e = number(v, key);
            if (!(e > 0.0 && e <= 1.0))
                bad(key, "must lie in (0, 1]");
            p.pa_inefficiency = 1.0 / e;
        }
        else if (key == "max_tx_dbm")
            p.max_tx_mw = per_entity(v, key, dbm_to_mw);
        else if (key == "min_harvest_dbm")
        {
            p.min_harvest_mw = per_entity(v, key, dbm_to_mw);
            for (double x : p.min_harvest_mw)
                if (std::isinf(x))
                    bad(key, "must be finite");
        }
        else if (key == "conversion_efficiency")
            p.conversion_efficiency = number(v, key);
        else if (key == "power_line_loss_fraction")
        {
            p.power_line_loss_fraction = number(v, key);
        }
        else if (key == "delta")
            p.delta = number(v, key);
        else if (key == "eta")
            p.eta = number(v, key);
        else if (key == "kappa")
            p.kappa = number(v, key);
        else if (key == "max_iterations")
            p.max_iterations = integer(v, key);
        else if (key == "backhaul_cap")
        {
            if (v.is_null())
                p.backhaul_cap.reset();
            else
                p.backhaul_cap = number(v, key);
        }
        else
            bad(key, "unknown key");
    }
    if (p.num_rrh < 1 || p.num_ir < 1 || p.num_er < 0 || p.antennas_per_rrh < 1)
        throw ConfigError("config: network sizes must be positive");
    const auto check_size = [](const std::vector<double> &v, int n, const char *key) {
        if (v.size() > 1 && static_cast<int>(v.size()) != n)
            bad(key, "expected a scalar or " + std::to_string(n) + " values");
    };
    check_size(p.min_sinr, p.num_ir, "min_sinr_db");
    check_size(p.rrh_circuit_mw, p.num_rrh, "rrh_circuit_dbm");
    check_size(p.max_tx_mw, p.num_rrh, "max_tx_dbm");
    check_size(p.min_harvest_mw, p.num_er, "min_harvest_dbm");
    p.finalize();
    return p;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw ConfigError("cannot read '" + path + "'");
    return ss.str();
}

SystemParams load_params(const std::string &path)
{
    try
    {
        return parse_params(read_text_file(path));
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string dump_params(const SystemParams &p)
{
    json sinr = json::array();
    for (double g : p.min_sinr)
        sinr.push_back(linear_to_db(g));
    json j = json::object();
    j["num_rrh"] = p.num_rrh;
    j["num_ir"] = p.num_ir;
    j["num_er"] = p.num_er;
    j["antennas_per_rrh"] = p.antennas_per_rrh;
    j["rrh_spacing_m"] = p.rrh_spacing_m;
    j["disc_radius_m"] = p.disc_radius_m;
    j["carrier_frequency_hz"] = p.carrier_frequency_hz;
    j["path_loss_exponent"] = p.path_loss_exponent;
    j["reference_distance_m"] = p.reference_distance_m;
    j["min_distance_m"] = p.min_distance_m;
    j["antenna_gain_db"] = p.antenna_gain_db;
    j["noise_dbm"] = mw_to_dbm(p.noise_mw);
    j["min_sinr_db"] = compact(sinr);
    j["cp_circuit_dbm"] = mw_to_dbm(p.cp_circuit_mw);
    j["cp_max_dbm"] = mw_to_dbm(p.cp_max_mw);
    j["rrh_circuit_dbm"] = compact(dbm_list(p.rrh_circuit_mw));
    j["pa_efficiency"] = 1.0 / p.pa_inefficiency;
    j["max_tx_dbm"] = compact(dbm_list(p.max_tx_mw));
    j["min_harvest_dbm"] = p.num_er == 0 ? json(0.0) : compact(dbm_list(p.min_harvest_mw));
    j["conversion_efficiency"] = p.conversion_efficiency;
    j["power_line_loss_fraction"] = p.power_line_loss_fraction;
    j["delta"] = p.delta;
    j["eta"] = p.eta;
    j["kappa"] = p.kappa;
    j["max_iterations"] = p.max_iterations;
    j["backhaul_cap"] = p.backhaul_cap ? json(*p.backhaul_cap) : json(nullptr);
    return j.dump(2) + "\n";
}

void print_params(std::ostream &os, const SystemParams &p)
{
    const auto list = [](const std::vector<double> &v, auto f) {
        std::ostringstream s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s << (i ? ", " : "") << (std::isinf(v[i]) ? std::string("unconstrained") : f(v[i]));
        return s.str();
    };
    const auto num = [](double x) {
        std::ostringstream s;
        s << std::setprecision(6) << x;
        return s.str();
    };
    const auto dbm = [&](double mw) { return num(mw_to_dbm(mw)) + " dBm"; };
    const auto row = [&](const std::string &name, const std::string &value) {
        os << std::left << std::setw(42) << name << value << "\n";
    };
    row("RRHs L", std::to_string(p.num_rrh));
    row("information receivers K", std::to_string(p.num_ir));
    row("energy receivers M", std::to_string(p.num_er));
    row("antennas per RRH N_T", std::to_string(p.antennas_per_rrh));
    row("RRH spacing", num(p.rrh_spacing_m) + " m");
    row("user disc radius", num(p.disc_radius_m) + " m");
    row("carrier frequency", num(p.carrier_frequency_hz / 1e9) + " GHz");
    row("path loss exponent", num(p.path_loss_exponent));
    row("reference / minimum distance", num(p.reference_distance_m) + " m / " + num(p.min_distance_m) + " m");
    row("link gain offset", num(p.antenna_gain_db) + " dB");
    row("noise variance sigma^2", dbm(p.noise_mw) + " (" + num(p.noise_mw) + " mW)");
    row("minimum SINR Gamma_req", list(p.min_sinr, [&](double g) { return num(linear_to_db(g)) + " dB"; }));
    row("CP circuit power P_C^CP", dbm(p.cp_circuit_mw));
    row("CP maximum power P_max^CP", dbm(p.cp_max_mw));
    row("RRH circuit power P_C_l", list(p.rrh_circuit_mw, dbm));
    row("power amplifier efficiency 1/epsilon", num(1.0 / p.pa_inefficiency));
    row("maximum transmit power P^Tmax", list(p.max_tx_mw, dbm));
    row("minimum harvested power P_min", p.num_er == 0 ? std::string("none") : list(p.min_harvest_mw, dbm));
    row("RF-to-DC conversion efficiency mu", num(p.conversion_efficiency));
    row("power line loss at full CP supply", num(p.power_line_loss_fraction));
    row("line loss coefficient beta_l", list(p.line_loss_beta, [&](double b) { return num(b) + " per mW"; }));
    row("delta / eta", num(p.delta) + " / " + num(p.eta));
    row("kappa", num(p.kappa));
    row("maximum iterations L_max", std::to_string(p.max_iterations));
    row("backhaul cap per link", p.backhaul_cap ? num(*p.backhaul_cap) + " bit/s/Hz" : std::string("none"));
}

} // namespace compswipt
