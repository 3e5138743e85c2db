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

// Physical-layer metrics, the relaxed beamforming SDP and its rank-one
// extraction.

#ifndef COMPSWIPT_PROBLEM_HPP
#define COMPSWIPT_PROBLEM_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compswipt/conic.hpp"
#include "compswipt/network.hpp"

namespace compswipt
{

// Joint beamformers w_k, stacked RRH-major like the channels.
class BeamformerSet
{
public:
    BeamformerSet() = default;
    BeamformerSet(int num_rrh, int antennas_per_rrh, int num_ir);
    BeamformerSet(int num_rrh, int antennas_per_rrh, std::vector<ComplexVector> w);

    int num_rrh() const { return num_rrh_; }
    int antennas_per_rrh() const { return antennas_; }
    int num_ir() const { return static_cast<int>(w_.size()); }

    const ComplexVector &w(int k) const { return w_.at(static_cast<std::size_t>(k)); }
    ComplexVector &w(int k) { return w_.at(static_cast<std::size_t>(k)); }
    auto slice(int k, int l) const { return w(k).segment(l * antennas_, antennas_); }
    auto slice(int k, int l) { return w(k).segment(l * antennas_, antennas_); }

    // ||w_k^l||^2
    double slice_energy(int k, int l) const { return slice(k, l).squaredNorm(); }
    double total_power() const;
    // sum_k ||w_k^l||^2
    double rrh_power(int l) const;

private:
    int num_rrh_ = 0;
    int antennas_ = 0;
    std::vector<ComplexVector> w_;
};

// rho_k^l, K x L.
using WeightMatrix = Eigen::MatrixXd;
WeightMatrix unit_weights(int num_ir, int num_rrh);

// Which RRHs carry data for which IR.
class ActivationMask
{
public:
    ActivationMask() = default;
    ActivationMask(int num_ir, int num_rrh, bool value = true);

    int num_ir() const { return num_ir_; }
    int num_rrh() const { return num_rrh_; }
    bool active(int k, int l) const { return bits_.at(index(k, l)) != 0; }
    void set(int k, int l, bool value) { bits_.at(index(k, l)) = value ? 1 : 0; }
    int active_count() const;
    int rrh_count(int k) const;
    // every IR has at least one active RRH
    bool serves_all() const;
    std::string to_string() const; // e.g. "{1,2}{3}" with 1-based RRH ids

    bool operator==(const ActivationMask &) const = default;

private:
    std::size_t index(int k, int l) const;

    int num_ir_ = 0;
    int num_rrh_ = 0;
    std::vector<char> bits_;
};

// ------------------------------------------------------------------ metrics

std::vector<double> compute_sinr(const BeamformerSet &bf, const ChannelSet &ch, const SystemParams &params);
std::vector<double> compute_harvested(const BeamformerSet &bf, const ChannelSet &ch, const SystemParams &params);

// A slice counts as active when its energy exceeds both `absolute` and
// `relative` times the largest slice energy of the same IR.
struct ZeroTest
{
    double relative = 1e-6;
    double absolute = 0.0;
};

ActivationMask active_slices(const BeamformerSet &bf, const ZeroTest &zero = {});

struct BackhaulReport
{
    std::vector<double> per_link; // C_l, bit/s/Hz
    double max = 0.0;
    double total = 0.0;
    int argmax = 0;
};

BackhaulReport compute_backhaul(const BeamformerSet &bf, const SystemParams &params, const ZeroTest &zero = {});
BackhaulReport backhaul_from_mask(const ActivationMask &mask, const SystemParams &params);

// delta * max_l C_l + eta * sum ||w||^2
double evaluate_objective(const BeamformerSet &bf, const SystemParams &params, const ZeroTest &zero = {});

struct FeasibilityReport
{
    // signed margins in mW; C1 is |h_k^H w_k|^2 - Gamma_req (interference + noise)
    std::vector<double> c1, c2, c3, c4, c5, c6;
    bool ok[6] = {true, true, true, true, true, true};

    bool all() const;
    double worst_margin() const;
};

FeasibilityReport check_feasibility(const BeamformerSet &bf, const std::vector<double> &supplies,
                                    const ChannelSet &ch, const SystemParams &params, double tol = 1e-6);

// ------------------------------------------------------------------- SDP

// How masked-out (k, l) pairs are removed from the relaxed problem.
enum class MaskEncoding
{
    // W_k only spans the antennas of its active RRHs
    reduce,
    // W_k keeps full size and Tr(B_l W_k) = 0 forces inactive slices to zero;
    // this leaves no strictly feasible point, so the solver ends less accurate
    trace_equality,
};

// Where each variable of the relaxed problem lives in the cone program.
struct SdpLayout
{
    int num_ir = 0;
    int num_rrh = 0;
    int antennas_per_rrh = 0;
    MaskEncoding encoding = MaskEncoding::reduce;
    std::vector<int> w_block;               // embedded W_k, dimension 2 x coords[k].size()
    std::vector<std::vector<int>> coords;   // stacked-vector entries spanned by W_k
    std::vector<int> supply_block; // E_l^s
    int phi_block = -1;
    std::vector<int> lmi_block;    // 2x2 Schur-complement block of C3
    ActivationMask mask;
    bool has_tx_limit = true;

    // constraint-group sizes, for shape audits
    int c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c7 = 0, forced_zero = 0;
};

struct BeamformingSdp
{
    conic::ConeProgram program;
    SdpLayout layout;
};

// Relaxed problem: minimize phi + eta sum Tr(W_k) subject to C1-C8 with
// C7 weighted by `weights`. Throws StructuralError when the mask leaves an IR
// unserved.
BeamformingSdp build_sdp(const ChannelSet &ch, const SystemParams &params, const WeightMatrix &weights,
                         const ActivationMask &mask, MaskEncoding encoding = MaskEncoding::reduce);

// Selector B_l embedded and halved, so <coeff, X> = Tr(B_l W).
conic::Matrix embedded_selector(int l, int num_rrh, int antennas_per_rrh);

struct Extraction
{
    BeamformerSet beamformers;
    std::vector<double> rank_ratio; // lambda_2 / lambda_1 per W_k
    std::vector<double> supplies;   // E_l^s
    double phi = 0.0;
    bool rank_failure = false;
};

// Principal-eigenvector beamformers w_k = sqrt(lambda_1) u_1. Slices masked
// out in the layout are set to exactly zero. Throws NumericalFailure when a
// W_k is zero.
Extraction extract_beamformers(const conic::ConeSolution &solution, const SdpLayout &layout,
                               double rank_tol = 1e-4);

struct RankCertificate
{
    struct PerUser
    {
        int dim = 0;                  // active dimension of W_k (complex)
        int vanishing = 0;            // eigenvalues of Y_k below tol * lambda_max
        double smallest_ratio = 0.0;  // lambda_min(Y_k) / lambda_max(Y_k)
        double second_ratio = 0.0;    // second smallest / lambda_max
        double complementarity = 0.0; // ||Y_k W_k||_F / (||Y_k||_F ||W_k||_F)
        bool rank_one = false;        // exactly one vanishing direction
    };
    std::vector<PerUser> users;
    bool all_rank_one = false;
    double max_complementarity = 0.0;
};

// Checks that each dual slack Y_k has a one-dimensional null space (the
// embedded copy has two) aligned with W_k. Masked-out slices are skipped.
RankCertificate verify_rank_certificate(const BeamformingSdp &sdp, const conic::ConeSolution &solution,
                                        double tol = 1e-6);

// ------------------------------------------------------------ reporting

struct SolverDiagnostics
{
    std::string status = "not-run";
    int iterations = 0;
    double relative_gap = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    int solves = 0;
};

struct SolutionReport
{
    std::string scheme;
    BeamformerSet beamformers;
    std::vector<double> supplies;
    double phi = 0.0;
    BackhaulReport backhaul;
    double transmit_power_mw = 0.0;
    std::vector<double> harvested_mw;
    std::vector<double> sinr;
    std::vector<double> rank_ratio;
    FeasibilityReport feasibility;
    double objective = 0.0; // delta max_l C_l + eta sum ||w||^2
    bool feasible = false;
    bool rank_failure = false;
    ActivationMask mask;
    SolverDiagnostics solver;

    double total_harvested_mw() const;
};

// Recomputes every metric from the beamformers.
SolutionReport make_report(std::string scheme, const Extraction &ex, const ChannelSet &ch,
                           const SystemParams &params, const ZeroTest &zero = {});

SolverDiagnostics diagnostics_of(const conic::ConeSolution &s);

} // namespace compswipt

#endif
