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

// System parameters, simulation topology and channel realizations.
//
// All powers are in milliwatts and all gains are linear; dB and dBm appear
// only at the configuration and report boundaries.

#ifndef COMPSWIPT_NETWORK_HPP
#define COMPSWIPT_NETWORK_HPP

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compswipt/errors.hpp"

namespace compswipt
{

using Rng = std::mt19937_64;
using ComplexVector = Eigen::VectorXcd;

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct SystemParams
{
    // network size
    int num_rrh = 3;          // L
    int num_ir = 5;           // K
    int num_er = 2;           // M
    int antennas_per_rrh = 4; // N_T

    // geometry and propagation
    double rrh_spacing_m = 500.0;
    double disc_radius_m = 1000.0;
    double carrier_frequency_hz = 1.9e9;
    double path_loss_exponent = 3.6;
    double reference_distance_m = 10.0;
    double min_distance_m = 10.0;
    // Combined antenna and link-budget gain added to every path. The log-distance
    // model alone leaves the default harvesting and SINR targets out of reach.
    double antenna_gain_db = 90.0;

    // radio and power model
    double noise_mw = dbm_to_mw(-23.0);
    std::vector<double> min_sinr;             // Gamma_req per IR, linear
    double cp_circuit_mw = dbm_to_mw(40.0);   // P_C^CP
    double cp_max_mw = dbm_to_mw(50.0);       // P_max^CP
    std::vector<double> rrh_circuit_mw;       // P_C_l
    double pa_inefficiency = 1.0 / 0.38;      // epsilon
    std::vector<double> max_tx_mw;            // P_l^Tmax, +inf when unconstrained
    std::vector<double> min_harvest_mw;       // P_m^min
    double conversion_efficiency = 0.5;       // mu
    double power_line_loss_fraction = 0.2;    // fractional loss at full CP supply
    std::vector<double> line_loss_beta;       // beta_l, per mW

    // objective and algorithm constants
    double delta = 1.0;
    double eta = 0.0;
    double kappa = 1e-4;
    int max_iterations = 20; // L_max

    // optional per-link backhaul cap (bit/s/Hz); honored by the exhaustive search
    std::optional<double> backhaul_cap;

    // derived: R_k = log2(1 + Gamma_req_k), refreshed by finalize()
    std::vector<double> rates;

    int total_antennas() const { return antennas_per_rrh * num_rrh; }

    // Table II defaults with the desk-scale network size.
    static SystemParams defaults();

    // Resizes every per-entity vector to the current L/K/M (new entries copy
    // the first element), recomputes beta and the cached rates, then
    // validates. Call after editing any field.
    void finalize();

    // Throws ConfigError naming the first violated invariant.
    void validate() const;

    bool uniform_sinr() const;
};

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

struct Topology
{
    std::vector<Point> rrh;
    std::vector<Point> ir;
    std::vector<Point> er;
    double disc_radius_m = 0.0;
    double rrh_spacing_m = 0.0;

    Point centroid() const;
};

// RRHs on a regular polygon with the configured side (an equilateral triangle
// for L = 3; a single RRH sits at the centroid), users uniform by area in the
// disc around the centroid: r = R sqrt(u), angle uniform.
Topology build_topology(const SystemParams &params, Rng &rng);

// Resamples only the user positions of an existing topology.
std::vector<Point> sample_disc(int count, double radius, Point center, Rng &rng);

// Free-space loss at the reference distance plus log-distance slope, with
// distances clamped below at min_distance_m. Throws DomainError for d <= 0.
double path_loss_db(double distance_m, const SystemParams &params);

class ChannelSet
{
public:
    ChannelSet() = default;
    ChannelSet(int num_rrh, int antennas_per_rrh, std::vector<ComplexVector> ir, std::vector<ComplexVector> er);

    int num_rrh() const { return num_rrh_; }
    int antennas_per_rrh() const { return antennas_; }
    int dim() const { return num_rrh_ * antennas_; }
    int num_ir() const { return static_cast<int>(ir_.size()); }
    int num_er() const { return static_cast<int>(er_.size()); }

    const ComplexVector &ir(int k) const { return ir_.at(static_cast<std::size_t>(k)); }
    const ComplexVector &er(int m) const { return er_.at(static_cast<std::size_t>(m)); }

    // Entries (l-1) N_T ... l N_T - 1 of the stacked vector.
    ComplexVector ir_slice(int k, int l) const { return ir(k).segment(l * antennas_, antennas_); }
    ComplexVector er_slice(int m, int l) const { return er(m).segment(l * antennas_, antennas_); }

    void write(std::ostream &os) const;
    static ChannelSet read(std::istream &is);

private:
    int num_rrh_ = 0;
    int antennas_ = 0;
    std::vector<ComplexVector> ir_;
    std::vector<ComplexVector> er_;
};

// Splits a stacked vector into per-RRH slices and back.
std::vector<ComplexVector> split_slices(const ComplexVector &v, int num_rrh, int antennas_per_rrh);
ComplexVector stack_slices(const std::vector<ComplexVector> &slices);

// Rayleigh fading scaled by the path gain from every RRH to every user:
// each entry of slice l is sqrt(gain_l) * CN(0, 1).
ChannelSet sample_channels(const Topology &topo, const SystemParams &params, Rng &rng);

// Linear power gain of one link, including antenna_gain_db.
double link_gain(double distance_m, const SystemParams &params);

void write_topology(std::ostream &os, const Topology &topo);
Topology read_topology(std::istream &is);

} // namespace compswipt

#endif
