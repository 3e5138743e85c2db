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

#include "compswipt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace compswipt
{

using conic::BlockTerm;
using conic::ConeProgram;
using conic::ConeSolution;
using conic::HermitianMatrix;
using conic::Matrix;
using conic::Sense;

BeamformerSet::BeamformerSet(int num_rrh, int antennas_per_rrh, int num_ir)
    : num_rrh_(num_rrh), antennas_(antennas_per_rrh),
      w_(static_cast<std::size_t>(num_ir), ComplexVector::Zero(num_rrh * antennas_per_rrh))
{
}

BeamformerSet::BeamformerSet(int num_rrh, int antennas_per_rrh, std::vector<ComplexVector> w)
    : num_rrh_(num_rrh), antennas_(antennas_per_rrh), w_(std::move(w))
{
    for (const auto &v : w_)
        if (v.size() != static_cast<Eigen::Index>(num_rrh_) * antennas_)
            throw StructuralError("BeamformerSet: beamformer length must equal N_T * L");
}

double BeamformerSet::total_power() const
{
    double p = 0.0;
    for (const auto &v : w_)
        p += v.squaredNorm();
    return p;
}

double BeamformerSet::rrh_power(int l) const
{
    double p = 0.0;
    for (int k = 0; k < num_ir(); ++k)
        p += slice_energy(k, l);
    return p;
}

WeightMatrix unit_weights(int num_ir, int num_rrh)
{
    return WeightMatrix::Ones(num_ir, num_rrh);
}

ActivationMask::ActivationMask(int num_ir, int num_rrh, bool value)
    : num_ir_(num_ir), num_rrh_(num_rrh), bits_(static_cast<std::size_t>(num_ir * num_rrh), value ? 1 : 0)
{
}

std::size_t ActivationMask::index(int k, int l) const
{
    if (k < 0 || k >= num_ir_ || l < 0 || l >= num_rrh_)
        throw StructuralError("ActivationMask: index out of range");
    return static_cast<std::size_t>(k * num_rrh_ + l);
}

int ActivationMask::active_count() const
{
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

int ActivationMask::rrh_count(int k) const
{
    int n = 0;
    for (int l = 0; l < num_rrh_; ++l)
        n += active(k, l) ? 1 : 0;
    return n;
}

bool ActivationMask::serves_all() const
{
    for (int k = 0; k < num_ir_; ++k)
        if (rrh_count(k) == 0)
            return false;
    return true;
}

std::string ActivationMask::to_string() const
{
    std::string s;
    for (int k = 0; k < num_ir_; ++k)
    {
        s += '{';
        bool first = true;
        for (int l = 0; l < num_rrh_; ++l)
            if (active(k, l))
            {
                if (!first)
                    s += ',';
                s += std::to_string(l + 1);
                first = false;
            }
        s += '}';
    }
    return s;
}

namespace
{

void require_layout(const BeamformerSet &bf, const ChannelSet &ch)
{
    if (bf.num_rrh() != ch.num_rrh() || bf.antennas_per_rrh() != ch.antennas_per_rrh() ||
        bf.num_ir() != ch.num_ir())
        throw StructuralError("beamformer and channel layouts differ");
}

} // namespace

std::vector<double> compute_sinr(const BeamformerSet &bf, const ChannelSet &ch, const SystemParams &params)
{
    require_layout(bf, ch);
    std::vector<double> out;
    for (int k = 0; k < bf.num_ir(); ++k)
    {
        const ComplexVector &h = ch.ir(k);
        double interference = 0.0;
        for (int j = 0; j < bf.num_ir(); ++j)
            if (j != k)
                interference += std::norm(h.dot(bf.w(j)));
        out.push_back(std::norm(h.dot(bf.w(k))) / (interference + params.noise_mw));
    }
    return out;
}

std::vector<double> compute_harvested(const BeamformerSet &bf, const ChannelSet &ch, const SystemParams &params)
{
    require_layout(bf, ch);
    std::vector<double> out;
    for (int m = 0; m < ch.num_er(); ++m)
    {
        double received = 0.0;
        for (int k = 0; k < bf.num_ir(); ++k)
            received += std::norm(ch.er(m).dot(bf.w(k)));
        out.push_back(params.conversion_efficiency * received);
    }
    return out;
}

ActivationMask active_slices(const BeamformerSet &bf, const ZeroTest &zero)
{
    ActivationMask mask(bf.num_ir(), bf.num_rrh(), false);
    for (int k = 0; k < bf.num_ir(); ++k)
    {
        double largest = 0.0;
        for (int l = 0; l < bf.num_rrh(); ++l)
            largest = std::max(largest, bf.slice_energy(k, l));
        for (int l = 0; l < bf.num_rrh(); ++l)
        {
            const double e = bf.slice_energy(k, l);
            mask.set(k, l, e > zero.absolute && e > zero.relative * largest);
        }
    }
    return mask;
}

BackhaulReport backhaul_from_mask(const ActivationMask &mask, const SystemParams &params)
{
    if (mask.num_ir() != params.num_ir || mask.num_rrh() != params.num_rrh)
        throw StructuralError("backhaul: mask does not match parameters");
    BackhaulReport r;
    r.per_link.assign(static_cast<std::size_t>(mask.num_rrh()), 0.0);
    for (int l = 0; l < mask.num_rrh(); ++l)
        for (int k = 0; k < mask.num_ir(); ++k)
            if (mask.active(k, l))
                r.per_link[static_cast<std::size_t>(l)] += params.rates[static_cast<std::size_t>(k)];
    for (int l = 0; l < mask.num_rrh(); ++l)
    {
        const double c = r.per_link[static_cast<std::size_t>(l)];
        r.total += c;
        if (c > r.max)
        {
            r.max = c;
            r.argmax = l;
        }
    }
    return r;
}

BackhaulReport compute_backhaul(const BeamformerSet &bf, const SystemParams &params, const ZeroTest &zero)
{
    if (zero.relative < 0.0 || zero.absolute < 0.0)
        throw DomainError("compute_backhaul: zero tolerance must be nonnegative");
    return backhaul_from_mask(active_slices(bf, zero), params);
}

double evaluate_objective(const BeamformerSet &bf, const SystemParams &params, const ZeroTest &zero)
{
    return params.delta * compute_backhaul(bf, params, zero).max + params.eta * bf.total_power();
}

bool FeasibilityReport::all() const
{
    return std::all_of(std::begin(ok), std::end(ok), [](bool b) { return b; });
}

double FeasibilityReport::worst_margin() const
{
    double w = std::numeric_limits<double>::infinity();
    for (const auto *v : {&c1, &c2, &c3, &c4, &c5, &c6})
        for (double x : *v)
            w = std::min(w, x);
    return w;
}

FeasibilityReport check_feasibility(const BeamformerSet &bf, const std::vector<double> &supplies,
                                    const ChannelSet &ch, const SystemParams &params, double tol)
{
    require_layout(bf, ch);
    if (static_cast<int>(supplies.size()) != bf.num_rrh())
        throw StructuralError("check_feasibility: one supply per RRH required");
    FeasibilityReport r;
    // a margin passes when it is >= -tol scaled by the constraint's magnitude
    // in mW (never below 1 mW)
    auto pass = [&](double margin, double magnitude) { return margin >= -tol * std::max(1.0, magnitude); };

    for (int k = 0; k < bf.num_ir(); ++k)
    {
        const ComplexVector &h = ch.ir(k);
        const double signal = std::norm(h.dot(bf.w(k)));
        double interference = 0.0;
        for (int j = 0; j < bf.num_ir(); ++j)
            if (j != k)
                interference += std::norm(h.dot(bf.w(j)));
        const double need = params.min_sinr[static_cast<std::size_t>(k)] * (interference + params.noise_mw);
        r.c1.push_back(signal - need);
        r.ok[0] = r.ok[0] && pass(r.c1.back(), need);
    }

    const double supply_total = std::accumulate(supplies.begin(), supplies.end(), 0.0);
    r.c2.push_back(params.cp_max_mw - params.cp_circuit_mw - supply_total);
    r.ok[1] = pass(r.c2.back(), params.cp_max_mw);

    for (int l = 0; l < bf.num_rrh(); ++l)
    {
        const auto ul = static_cast<std::size_t>(l);
        const double e = supplies[ul];
        const double load = params.rrh_circuit_mw[ul] + params.pa_inefficiency * bf.rrh_power(l);
        r.c3.push_back(e - e * e * params.line_loss_beta[ul] - load);
        r.ok[2] = r.ok[2] && pass(r.c3.back(), e);

        const double cap = params.max_tx_mw[ul];
        r.c4.push_back(std::isinf(cap) ? std::numeric_limits<double>::infinity() : cap - bf.rrh_power(l));
        r.ok[3] = r.ok[3] && pass(r.c4.back(), cap);

        r.c6.push_back(e);
        r.ok[5] = r.ok[5] && pass(e, 0.0);
    }

    const std::vector<double> harvested = compute_harvested(bf, ch, params);
    for (int m = 0; m < ch.num_er(); ++m)
    {
        const double floor = params.min_harvest_mw[static_cast<std::size_t>(m)];
        r.c5.push_back(harvested[static_cast<std::size_t>(m)] - floor);
        r.ok[4] = r.ok[4] && pass(r.c5.back(), floor);
    }
    return r;
}

// -------------------------------------------------------------------- SDP

namespace
{

// Half the real embedding of a restricted to the entries in idx, so that
// <coeff, X> = Re Tr(a W) for the embedded X of the restricted W.
Matrix restricted_embedding(const conic::ComplexMatrix &a, const std::vector<int> &idx)
{
    const auto d = static_cast<Eigen::Index>(idx.size());
    conic::ComplexMatrix sub(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            sub(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    return 0.5 * conic::embed_hermitian(HermitianMatrix::from_dense(sub));
}

} // namespace

BeamformingSdp build_sdp(const ChannelSet &ch, const SystemParams &params, const WeightMatrix &weights,
                         const ActivationMask &mask, MaskEncoding encoding)
{
    params.validate();
    const int K = ch.num_ir();
    const int L = ch.num_rrh();
    const int M = ch.num_er();
    const int nt = ch.antennas_per_rrh();
    if (K != params.num_ir || L != params.num_rrh || M != params.num_er || nt != params.antennas_per_rrh)
        throw StructuralError("build_sdp: channels do not match parameters");
    if (weights.rows() != K || weights.cols() != L || (weights.array() < 0.0).any() || !weights.allFinite())
        throw StructuralError("build_sdp: weights must be a finite nonnegative K x L matrix");
    if (mask.num_ir() != K || mask.num_rrh() != L)
        throw StructuralError("build_sdp: mask does not match parameters");
    if (!mask.serves_all())
        throw StructuralError("build_sdp: activation mask leaves an IR unserved (" + mask.to_string() + ")");

    const int n = nt * L;
    const bool reduce = encoding == MaskEncoding::reduce;
    BeamformingSdp sdp;
    SdpLayout &lay = sdp.layout;
    ConeProgram &p = sdp.program;
    lay.num_ir = K;
    lay.num_rrh = L;
    lay.antennas_per_rrh = nt;
    lay.encoding = encoding;
    lay.mask = mask;

    for (int k = 0; k < K; ++k)
    {
        std::vector<int> idx;
        for (int l = 0; l < L; ++l)
            if (!reduce || mask.active(k, l))
                for (int a = 0; a < nt; ++a)
                    idx.push_back(l * nt + a);
        lay.w_block.push_back(p.add_block(2 * static_cast<int>(idx.size()), "W[" + std::to_string(k) + "]"));
        lay.coords.push_back(std::move(idx));
        p.set_label("C8[" + std::to_string(k) + "]", {-1, lay.w_block.back(), 1.0});
    }
    for (int l = 0; l < L; ++l)
    {
        lay.supply_block.push_back(p.add_block(1, "E[" + std::to_string(l) + "]"));
        p.set_label("C6[" + std::to_string(l) + "]", {-1, lay.supply_block.back(), 1.0});
    }
    lay.phi_block = p.add_block(1, "phi");

    auto wb = [&](int k) { return lay.w_block[static_cast<std::size_t>(k)]; };
    auto span = [&](int k) -> const std::vector<int> & { return lay.coords[static_cast<std::size_t>(k)]; };
    // whether W_k carries coordinates of RRH l
    auto spans = [&](int k, int l) { return !reduce || mask.active(k, l); };

    std::vector<conic::ComplexMatrix> h_outer, g_outer, selector;
    for (int k = 0; k < K; ++k)
        h_outer.push_back(ch.ir(k) * ch.ir(k).adjoint());
    for (int m = 0; m < M; ++m)
        g_outer.push_back(ch.er(m) * ch.er(m).adjoint());
    for (int l = 0; l < L; ++l)
    {
        conic::ComplexMatrix b = conic::ComplexMatrix::Zero(n, n);
        b.diagonal().segment(l * nt, nt).setOnes();
        selector.push_back(b);
    }

    // objective: phi + eta sum Tr(W_k)
    p.add_objective(lay.phi_block, Matrix::Constant(1, 1, 1.0));
    if (params.eta > 0.0)
        for (int k = 0; k < K; ++k)
        {
            const auto d = static_cast<Eigen::Index>(2 * span(k).size());
            p.add_objective(wb(k), 0.5 * params.eta * Matrix::Identity(d, d));
        }

    // C1: Tr(H_k W_k) / Gamma_k - sum_{j != k} Tr(H_k W_j) >= sigma^2
    for (int k = 0; k < K; ++k)
    {
        std::vector<BlockTerm> terms;
        for (int j = 0; j < K; ++j)
        {
            const double c = j == k ? 1.0 / params.min_sinr[static_cast<std::size_t>(k)] : -1.0;
            terms.push_back({wb(j), c * restricted_embedding(h_outer[static_cast<std::size_t>(k)], span(j))});
        }
        p.add_inequality(std::move(terms), Sense::greater_equal, params.noise_mw, "C1[" + std::to_string(k) + "]");
        ++lay.c1;
    }

    // C2: P_C^CP + sum_l E_l <= P_max^CP
    {
        std::vector<BlockTerm> terms;
        for (int l = 0; l < L; ++l)
            terms.push_back({lay.supply_block[static_cast<std::size_t>(l)], Matrix::Constant(1, 1, 1.0)});
        p.add_inequality(std::move(terms), Sense::less_equal, params.cp_max_mw - params.cp_circuit_mw, "C2");
        ++lay.c2;
    }

    // C3: P_C_l + eps sum_k Tr(B_l W_k) <= E_l - beta_l E_l^2 as
    //     [[E_l - P_C_l - eps sum_k Tr(B_l W_k), sqrt(beta_l) E_l], [sqrt(beta_l) E_l, 1]] >= 0
    for (int l = 0; l < L; ++l)
    {
        const auto ul = static_cast<std::size_t>(l);
        const int z = p.add_block(2, "C3.lmi[" + std::to_string(l) + "]");
        lay.lmi_block.push_back(z);
        Matrix e11 = Matrix::Zero(2, 2), e12 = Matrix::Zero(2, 2), e22 = Matrix::Zero(2, 2);
        e11(0, 0) = 1.0;
        e12(0, 1) = e12(1, 0) = 0.5;
        e22(1, 1) = 1.0;

        std::vector<BlockTerm> terms{{z, e11}, {lay.supply_block[ul], Matrix::Constant(1, 1, -1.0)}};
        for (int k = 0; k < K; ++k)
            if (spans(k, l))
                terms.push_back({wb(k), params.pa_inefficiency * restricted_embedding(selector[ul], span(k))});
        const int row = p.add_equality(std::move(terms), -params.rrh_circuit_mw[ul]);
        p.set_label("C3[" + std::to_string(l) + "]", {row, z, -1.0});
        p.add_equality({{z, e12}, {lay.supply_block[ul], Matrix::Constant(1, 1, -std::sqrt(params.line_loss_beta[ul]))}},
                       0.0, "C3.link[" + std::to_string(l) + "]");
        p.add_equality({{z, e22}}, 1.0, "C3.unit[" + std::to_string(l) + "]");
        ++lay.c3;
    }

    // C4: sum_k Tr(B_l W_k) <= P_l^Tmax
    lay.has_tx_limit = false;
    for (int l = 0; l < L; ++l)
    {
        const double cap = params.max_tx_mw[static_cast<std::size_t>(l)];
        if (std::isinf(cap))
            continue;
        lay.has_tx_limit = true;
        std::vector<BlockTerm> terms;
        for (int k = 0; k < K; ++k)
            if (spans(k, l))
                terms.push_back({wb(k), restricted_embedding(selector[static_cast<std::size_t>(l)], span(k))});
        p.add_inequality(std::move(terms), Sense::less_equal, cap, "C4[" + std::to_string(l) + "]");
        ++lay.c4;
    }

    // C5: mu sum_k Tr(G_m W_k) >= P_m^min
    for (int m = 0; m < M; ++m)
    {
        std::vector<BlockTerm> terms;
        for (int k = 0; k < K; ++k)
            terms.push_back({wb(k), params.conversion_efficiency *
                                        restricted_embedding(g_outer[static_cast<std::size_t>(m)], span(k))});
        p.add_inequality(std::move(terms), Sense::greater_equal, params.min_harvest_mw[static_cast<std::size_t>(m)],
                         "C5[" + std::to_string(m) + "]");
        ++lay.c5;
    }

    // C7: delta sum_k rho_k^l R_k Tr(B_l W_k) <= phi
    for (int l = 0; l < L; ++l)
    {
        std::vector<BlockTerm> terms{{lay.phi_block, Matrix::Constant(1, 1, -1.0)}};
        for (int k = 0; k < K; ++k)
        {
            const double c = params.delta * weights(k, l) * params.rates[static_cast<std::size_t>(k)];
            if (c != 0.0 && mask.active(k, l))
                terms.push_back({wb(k), c * restricted_embedding(selector[static_cast<std::size_t>(l)], span(k))});
        }
        p.add_inequality(std::move(terms), Sense::less_equal, 0.0, "C7[" + std::to_string(l) + "]");
        ++lay.c7;
    }

    // inactive (k, l): Tr(B_l W_k) = 0 zeroes the whole slice block of W_k
    if (!reduce)
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < L; ++l)
                if (!mask.active(k, l))
                {
                    p.add_equality({{wb(k), restricted_embedding(selector[static_cast<std::size_t>(l)], span(k))}},
                                   0.0, "Z[" + std::to_string(k) + "," + std::to_string(l) + "]");
                    ++lay.forced_zero;
                }
    return sdp;
}

Matrix embedded_selector(int l, int num_rrh, int antennas_per_rrh)
{
    HermitianMatrix b(static_cast<Eigen::Index>(num_rrh) * antennas_per_rrh);
    for (int a = 0; a < antennas_per_rrh; ++a)
        b.set(l * antennas_per_rrh + a, l * antennas_per_rrh + a, 1.0);
    return 0.5 * conic::embed_hermitian(b);
}

namespace
{

// Rotates v so that its largest-magnitude entry is real and positive.
void normalize_phase(ComplexVector &v)
{
    Eigen::Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    const double mag = std::abs(v(best));
    if (mag > 0.0)
        v *= std::conj(v(best)) / mag;
}

} // namespace

Extraction extract_beamformers(const ConeSolution &solution, const SdpLayout &layout, double rank_tol)
{
    if (solution.status != conic::SolveStatus::optimal)
        throw NumericalFailure(std::string("extract_beamformers: solution status is ") + conic::to_string(solution.status));
    Extraction ex;
    ex.beamformers = BeamformerSet(layout.num_rrh, layout.antennas_per_rrh, layout.num_ir);
    for (int k = 0; k < layout.num_ir; ++k)
    {
        const conic::ComplexMatrix w =
            conic::unembed_hermitian(solution.x.at(static_cast<std::size_t>(layout.w_block[static_cast<std::size_t>(k)])))
                .dense();
        Eigen::SelfAdjointEigenSolver<conic::ComplexMatrix> es(w);
        const Eigen::Index n = w.rows();
        const double l1 = es.eigenvalues()(n - 1);
        if (!(l1 > 0.0))
            throw NumericalFailure("extract_beamformers: W_" + std::to_string(k) + " is zero");
        const double l2 = n > 1 ? std::max(0.0, es.eigenvalues()(n - 2)) : 0.0;
        ComplexVector v = std::sqrt(l1) * es.eigenvectors().col(n - 1);
        normalize_phase(v);
        const std::vector<int> &idx = layout.coords.at(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < idx.size(); ++i)
            ex.beamformers.w(k)(idx[i]) = v(static_cast<Eigen::Index>(i));
        for (int l = 0; l < layout.num_rrh; ++l)
            if (!layout.mask.active(k, l))
                ex.beamformers.slice(k, l).setZero();
        ex.rank_ratio.push_back(l2 / l1);
        if (l2 / l1 > rank_tol)
            ex.rank_failure = true;
    }
    for (int b : layout.supply_block)
        ex.supplies.push_back(solution.x.at(static_cast<std::size_t>(b))(0, 0));
    ex.phi = solution.x.at(static_cast<std::size_t>(layout.phi_block))(0, 0);
    return ex;
}

RankCertificate verify_rank_certificate(const BeamformingSdp &sdp, const ConeSolution &solution, double tol)
{
    const SdpLayout &lay = sdp.layout;
    RankCertificate cert;
    cert.all_rank_one = true;
    for (int k = 0; k < lay.num_ir; ++k)
    {
        const auto block = static_cast<std::size_t>(lay.w_block[static_cast<std::size_t>(k)]);
        const conic::ComplexMatrix y = conic::unembed_hermitian(solution.s.at(block)).dense();
        const conic::ComplexMatrix w = conic::unembed_hermitian(solution.x.at(block)).dense();

        // positions within the block of the active coordinates
        const std::vector<int> &idx = lay.coords[static_cast<std::size_t>(k)];
        std::vector<Eigen::Index> keep;
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (lay.mask.active(k, idx[i] / lay.antennas_per_rrh))
                keep.push_back(static_cast<Eigen::Index>(i));
        const auto d = static_cast<Eigen::Index>(keep.size());
        conic::ComplexMatrix ya(d, d), wa(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
            {
                ya(i, j) = y(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
                wa(i, j) = w(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
            }

        RankCertificate::PerUser u;
        u.dim = static_cast<int>(d);
        Eigen::SelfAdjointEigenSolver<conic::ComplexMatrix> es(ya, Eigen::EigenvaluesOnly);
        const auto &ev = es.eigenvalues();
        const double top = ev(d - 1);
        for (Eigen::Index i = 0; i < d; ++i)
            if (ev(i) <= tol * top)
                ++u.vanishing;
        u.smallest_ratio = top > 0.0 ? ev(0) / top : 0.0;
        u.second_ratio = d > 1 && top > 0.0 ? ev(1) / top : 0.0;
        const double denom = ya.norm() * wa.norm();
        u.complementarity = denom > 0.0 ? (ya * wa).norm() / denom : 0.0;
        u.rank_one = u.vanishing == 1;
        cert.all_rank_one = cert.all_rank_one && u.rank_one;
        cert.max_complementarity = std::max(cert.max_complementarity, u.complementarity);
        cert.users.push_back(u);
    }
    return cert;
}

double SolutionReport::total_harvested_mw() const
{
    return std::accumulate(harvested_mw.begin(), harvested_mw.end(), 0.0);
}

namespace
{

// Smallest E with E - beta E^2 >= load; the largest deliverable power when
// the load cannot be met.
double minimal_supply(double load, double beta)
{
    const double disc = 1.0 - 4.0 * beta * load;
    if (disc < 0.0)
        return 1.0 / (2.0 * beta);
    return 2.0 * load / (1.0 + std::sqrt(disc));
}

} // namespace

SolutionReport make_report(std::string scheme, const Extraction &ex, const ChannelSet &ch, const SystemParams &params,
                           const ZeroTest &zero)
{
    SolutionReport r;
    r.scheme = std::move(scheme);
    r.beamformers = ex.beamformers;
    r.phi = ex.phi;
    r.rank_ratio = ex.rank_ratio;
    r.rank_failure = ex.rank_failure;
    // supplies follow from the beamformers: the least power meeting C3 per RRH
    for (int l = 0; l < params.num_rrh; ++l)
    {
        const auto ul = static_cast<std::size_t>(l);
        const double load = params.rrh_circuit_mw[ul] + params.pa_inefficiency * ex.beamformers.rrh_power(l);
        r.supplies.push_back(minimal_supply(load, params.line_loss_beta[ul]));
    }
    r.mask = active_slices(ex.beamformers, zero);
    r.backhaul = backhaul_from_mask(r.mask, params);
    r.transmit_power_mw = ex.beamformers.total_power();
    r.harvested_mw = compute_harvested(ex.beamformers, ch, params);
    r.sinr = compute_sinr(ex.beamformers, ch, params);
    r.feasibility = check_feasibility(ex.beamformers, r.supplies, ch, params);
    r.feasible = r.feasibility.all();
    r.objective = params.delta * r.backhaul.max + params.eta * r.transmit_power_mw;
    return r;
}

SolverDiagnostics diagnostics_of(const ConeSolution &s)
{
    SolverDiagnostics d;
    d.status = conic::to_string(s.status);
    d.iterations = s.iterations;
    d.relative_gap = s.relative_gap;
    d.primal_infeasibility = s.primal_infeasibility;
    d.dual_infeasibility = s.dual_infeasibility;
    d.solves = 1;
    return d;
}

} // namespace compswipt
