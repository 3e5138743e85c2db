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

#include "compswipt/network.hpp"

#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace compswipt
{
namespace
{

constexpr double kSpeedOfLight = 299792458.0;

template <typename T>
void resize_like_first(std::vector<T> &v, int n, T fallback)
{
    const T fill = v.empty() ? fallback : v.front();
    v.resize(static_cast<std::size_t>(n), fill);
}

void require(bool ok, const std::string &what)
{
    if (!ok)
        throw ConfigError("invalid parameters: " + what);
}

} // namespace

SystemParams SystemParams::defaults()
{
    SystemParams p;
    p.finalize();
    return p;
}

void SystemParams::finalize()
{
    require(num_rrh >= 1 && num_ir >= 1 && num_er >= 0 && antennas_per_rrh >= 1, "network sizes");
    resize_like_first(min_sinr, num_ir, db_to_linear(15.0));
    resize_like_first(rrh_circuit_mw, num_rrh, dbm_to_mw(30.0));
    resize_like_first(max_tx_mw, num_rrh, dbm_to_mw(46.0));
    resize_like_first(min_harvest_mw, num_er, dbm_to_mw(0.0));
    line_loss_beta.assign(static_cast<std::size_t>(num_rrh), power_line_loss_fraction / cp_max_mw);
    rates.resize(static_cast<std::size_t>(num_ir));
    for (int k = 0; k < num_ir; ++k)
        rates[static_cast<std::size_t>(k)] = std::log2(1.0 + min_sinr[static_cast<std::size_t>(k)]);
    validate();
}

void SystemParams::validate() const
{
    require(num_rrh >= 1, "num_rrh >= 1");
    require(num_ir >= 1, "num_ir >= 1");
    require(num_er >= 0, "num_er >= 0");
    require(antennas_per_rrh >= 1, "antennas_per_rrh >= 1");
    require(static_cast<int>(min_sinr.size()) == num_ir, "one min_sinr per IR");
    require(static_cast<int>(rates.size()) == num_ir, "one cached rate per IR");
    require(static_cast<int>(rrh_circuit_mw.size()) == num_rrh, "one circuit power per RRH");
    require(static_cast<int>(max_tx_mw.size()) == num_rrh, "one max transmit power per RRH");
    require(static_cast<int>(line_loss_beta.size()) == num_rrh, "one beta per RRH");
    require(static_cast<int>(min_harvest_mw.size()) == num_er, "one harvest floor per ER");
    for (std::size_t k = 0; k < min_sinr.size(); ++k)
    {
        require(min_sinr[k] > 0.0 && std::isfinite(min_sinr[k]), "min_sinr > 0");
        require(rates[k] == std::log2(1.0 + min_sinr[k]), "rates are stale; call finalize()");
    }
    for (double v : rrh_circuit_mw)
        require(v >= 0.0, "rrh circuit power >= 0");
    for (double v : max_tx_mw)
        require(v >= 0.0, "max transmit power >= 0");
    for (double v : min_harvest_mw)
        require(v >= 0.0 && std::isfinite(v), "min harvested power >= 0");
    for (double v : line_loss_beta)
        require(v > 0.0 && std::isfinite(v), "beta > 0");
    require(noise_mw > 0.0, "noise power > 0");
    require(cp_circuit_mw >= 0.0 && cp_max_mw >= 0.0, "CP powers >= 0");
    require(pa_inefficiency >= 1.0, "epsilon >= 1");
    require(conversion_efficiency > 0.0 && conversion_efficiency <= 1.0, "0 < mu <= 1");
    require(power_line_loss_fraction > 0.0 && power_line_loss_fraction < 1.0, "0 < line loss fraction < 1");
    require(delta >= 0.0 && eta >= 0.0, "delta, eta >= 0");
    require(kappa > 0.0, "kappa > 0");
    require(max_iterations >= 1, "max_iterations >= 1");
    require(carrier_frequency_hz > 0.0, "carrier frequency > 0");
    require(path_loss_exponent > 0.0, "path loss exponent > 0");
    require(reference_distance_m > 0.0 && min_distance_m > 0.0, "reference and minimum distance > 0");
    require(rrh_spacing_m > 0.0 && disc_radius_m > 0.0, "geometry > 0");
    require(!backhaul_cap || *backhaul_cap >= 0.0, "backhaul cap >= 0");
}

bool SystemParams::uniform_sinr() const
{
    for (double g : min_sinr)
        if (g != min_sinr.front())
            return false;
    return true;
}

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

Point Topology::centroid() const
{
    Point c;
    for (const auto &p : rrh)
    {
        c.x += p.x;
        c.y += p.y;
    }
    if (!rrh.empty())
    {
        c.x /= static_cast<double>(rrh.size());
        c.y /= static_cast<double>(rrh.size());
    }
    return c;
}

std::vector<Point> sample_disc(int count, double radius, Point center, Rng &rng)
{
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
    {
        const double r = radius * std::sqrt(unif(rng));
        const double theta = 2.0 * std::numbers::pi * unif(rng);
        pts.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
    }
    return pts;
}

Topology build_topology(const SystemParams &params, Rng &rng)
{
    Topology t;
    t.disc_radius_m = params.disc_radius_m;
    t.rrh_spacing_m = params.rrh_spacing_m;
    const int l = params.num_rrh;
    // regular polygon with side s has circumradius s / (2 sin(pi / L))
    const double circumradius = l == 1 ? 0.0 : params.rrh_spacing_m / (2.0 * std::sin(std::numbers::pi / l));
    if (params.disc_radius_m < circumradius)
        throw ConfigError("disc radius is smaller than the RRH circumradius");
    for (int i = 0; i < l; ++i)
    {
        const double a = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * i / l;
        t.rrh.push_back({circumradius * std::cos(a), circumradius * std::sin(a)});
    }
    const Point c = t.centroid();
    t.ir = sample_disc(params.num_ir, params.disc_radius_m, c, rng);
    t.er = sample_disc(params.num_er, params.disc_radius_m, c, rng);
    return t;
}

double path_loss_db(double distance_m, const SystemParams &params)
{
    if (!(distance_m > 0.0))
        throw DomainError("path_loss_db: distance must be positive");
    const double d0 = params.reference_distance_m;
    const double wavelength = kSpeedOfLight / params.carrier_frequency_hz;
    const double fspl_d0 = 20.0 * std::log10(4.0 * std::numbers::pi * d0 / wavelength);
    const double d = std::max(distance_m, params.min_distance_m);
    return fspl_d0 + 10.0 * params.path_loss_exponent * std::log10(d / d0);
}

double link_gain(double distance_m, const SystemParams &params)
{
    return db_to_linear(params.antenna_gain_db - path_loss_db(distance_m, params));
}

ChannelSet::ChannelSet(int num_rrh, int antennas_per_rrh, std::vector<ComplexVector> ir, std::vector<ComplexVector> er)
    : num_rrh_(num_rrh), antennas_(antennas_per_rrh), ir_(std::move(ir)), er_(std::move(er))
{
    for (const auto *group : {&ir_, &er_})
        for (const auto &v : *group)
            if (v.size() != dim())
                throw StructuralError("ChannelSet: channel vector length must equal N_T * L");
}

std::vector<ComplexVector> split_slices(const ComplexVector &v, int num_rrh, int antennas_per_rrh)
{
    if (v.size() != static_cast<Eigen::Index>(num_rrh) * antennas_per_rrh)
        throw StructuralError("split_slices: length must equal N_T * L");
    std::vector<ComplexVector> out;
    for (int l = 0; l < num_rrh; ++l)
        out.push_back(v.segment(l * antennas_per_rrh, antennas_per_rrh));
    return out;
}

ComplexVector stack_slices(const std::vector<ComplexVector> &slices)
{
    Eigen::Index n = 0;
    for (const auto &s : slices)
        n += s.size();
    ComplexVector v(n);
    Eigen::Index pos = 0;
    for (const auto &s : slices)
    {
        v.segment(pos, s.size()) = s;
        pos += s.size();
    }
    return v;
}

ChannelSet sample_channels(const Topology &topo, const SystemParams &params, Rng &rng)
{
    if (static_cast<int>(topo.rrh.size()) != params.num_rrh || static_cast<int>(topo.ir.size()) != params.num_ir ||
        static_cast<int>(topo.er.size()) != params.num_er)
        throw StructuralError("sample_channels: topology does not match parameters");
    std::normal_distribution<double> component(0.0, std::sqrt(0.5));
    const int nt = params.antennas_per_rrh;
    auto draw = [&](Point user) {
        ComplexVector h(params.total_antennas());
        for (int l = 0; l < params.num_rrh; ++l)
        {
            const double amplitude = std::sqrt(link_gain(distance(topo.rrh[static_cast<std::size_t>(l)], user), params));
            for (int a = 0; a < nt; ++a)
            {
                const double re = component(rng);
                const double im = component(rng);
                h(l * nt + a) = amplitude * std::complex<double>(re, im);
            }
        }
        return h;
    };
    std::vector<ComplexVector> ir, er;
    for (const auto &p : topo.ir)
        ir.push_back(draw(p));
    for (const auto &p : topo.er)
        er.push_back(draw(p));
    return ChannelSet(params.num_rrh, nt, std::move(ir), std::move(er));
}

// Record-per-line formats. Channels:
//   channels <L> <N_T> <K> <M>
//   ir <k> <entry> <re> <im>
//   er <m> <entry> <re> <im>
void ChannelSet::write(std::ostream &os) const
{
    const auto old = os.precision();
    os << std::setprecision(17);
    os << "channels " << num_rrh_ << ' ' << antennas_ << ' ' << num_ir() << ' ' << num_er() << '\n';
    for (int k = 0; k < num_ir(); ++k)
        for (int i = 0; i < dim(); ++i)
            os << "ir " << k << ' ' << i << ' ' << ir(k)(i).real() << ' ' << ir(k)(i).imag() << '\n';
    for (int m = 0; m < num_er(); ++m)
        for (int i = 0; i < dim(); ++i)
            os << "er " << m << ' ' << i << ' ' << er(m)(i).real() << ' ' << er(m)(i).imag() << '\n';
    os.precision(old);
}

ChannelSet ChannelSet::read(std::istream &is)
{
    std::string tag;
    int l = 0, nt = 0, k = 0, m = 0;
    if (!(is >> tag >> l >> nt >> k >> m) || tag != "channels" || l < 1 || nt < 1 || k < 0 || m < 0)
        throw StructuralError("ChannelSet::read: missing or malformed header");
    std::vector<ComplexVector> ir(static_cast<std::size_t>(k), ComplexVector::Zero(l * nt));
    std::vector<ComplexVector> er(static_cast<std::size_t>(m), ComplexVector::Zero(l * nt));
    const long expected = static_cast<long>(k + m) * l * nt;
    for (long r = 0; r < expected; ++r)
    {
        int idx = 0, entry = 0;
        double re = 0.0, im = 0.0;
        if (!(is >> tag >> idx >> entry >> re >> im))
            throw StructuralError("ChannelSet::read: truncated record list");
        auto &group = tag == "ir" ? ir : er;
        if ((tag != "ir" && tag != "er") || idx < 0 || idx >= static_cast<int>(group.size()) || entry < 0 ||
            entry >= l * nt)
            throw StructuralError("ChannelSet::read: bad record '" + tag + "'");
        group[static_cast<std::size_t>(idx)](entry) = {re, im};
    }
    return ChannelSet(l, nt, std::move(ir), std::move(er));
}

// Topology:
//   topology <disc radius> <rrh spacing>
//   rrh|ir|er <index> <x> <y>
void write_topology(std::ostream &os, const Topology &topo)
{
    const auto old = os.precision();
    os << std::setprecision(17);
    os << "topology " << topo.disc_radius_m << ' ' << topo.rrh_spacing_m << '\n';
    auto dump = [&](const char *tag, const std::vector<Point> &pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << tag << ' ' << i << ' ' << pts[i].x << ' ' << pts[i].y << '\n';
    };
    dump("rrh", topo.rrh);
    dump("ir", topo.ir);
    dump("er", topo.er);
    os.precision(old);
}

Topology read_topology(std::istream &is)
{
    Topology t;
    std::string tag;
    if (!(is >> tag >> t.disc_radius_m >> t.rrh_spacing_m) || tag != "topology")
        throw StructuralError("read_topology: missing header");
    std::size_t idx = 0;
    Point p;
    while (is >> tag >> idx >> p.x >> p.y)
    {
        std::vector<Point> *dst = tag == "rrh" ? &t.rrh : tag == "ir" ? &t.ir : tag == "er" ? &t.er : nullptr;
        if (dst == nullptr || idx != dst->size())
            throw StructuralError("read_topology: unexpected record '" + tag + "'");
        dst->push_back(p);
    }
    return t;
}

} // namespace compswipt
