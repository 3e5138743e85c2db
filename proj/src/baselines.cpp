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


#include "compswipt/baselines.hpp"

#include <cmath>
#include <limits>

#include "compswipt/parallel.hpp"

namespace compswipt
{

AssignmentEnumeration::AssignmentEnumeration(int num_ir, int num_rrh) : num_ir_(num_ir), num_rrh_(num_rrh)
{
    if (num_ir < 1 || num_rrh < 1 || num_rrh > 62)
        throw StructuralError("AssignmentEnumeration: need K >= 1 and 1 <= L <= 62");
    subsets_ = (std::uint64_t{1} << num_rrh) - 1;
    size_ = 1;
    for (int k = 0; k < num_ir; ++k)
    {
        if (size_ > std::numeric_limits<std::uint64_t>::max() / subsets_)
        {
            size_ = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        size_ *= subsets_;
    }
}

ActivationMask AssignmentEnumeration::at(std::uint64_t index) const
{
    if (index >= size_)
        throw StructuralError("AssignmentEnumeration: index out of range");
    ActivationMask m(num_ir_, num_rrh_, false);
    for (int k = num_ir_ - 1; k >= 0; --k)
    {
        const std::uint64_t subset = index % subsets_ + 1;
        index /= subsets_;
        for (int l = 0; l < num_rrh_; ++l)
            m.set(k, l, ((subset >> l) & 1U) != 0);
    }
    return m;
}

namespace
{

SystemParams power_minimization(const SystemParams &params)
{
    SystemParams q = params;
    q.delta = 0.0;
    q.eta = 1.0;
    return q;
}

bool nearly_equal(double a, double b)
{
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// strict "a is better than b" under the selection order
bool better(const MaskSummary &a, const MaskSummary &b)
{
    if (!nearly_equal(a.objective, b.objective))
        return a.objective < b.objective;
    if (!nearly_equal(a.total_backhaul, b.total_backhaul))
        return a.total_backhaul < b.total_backhaul;
    if (!nearly_equal(a.transmit_power_mw, b.transmit_power_mw))
        return a.transmit_power_mw < b.transmit_power_mw;
    return a.index < b.index;
}

} // namespace

ExhaustiveResult exhaustive_search(const ChannelSet &ch, const SystemParams &params, const ExhaustiveOptions &options)
{
    params.validate();
    const AssignmentEnumeration masks(params.num_ir, params.num_rrh);
    if (masks.size() > options.enumeration_cap)
        throw LimitExceeded("exhaustive search: " + std::to_string(masks.size()) +
                            " assignments exceed the enumeration cap of " + std::to_string(options.enumeration_cap) +
                            " (K = " + std::to_string(params.num_ir) + ", L = " + std::to_string(params.num_rrh) + ")");
    const SystemParams q = power_minimization(params);
    const auto count = static_cast<std::size_t>(masks.size());

    std::vector<MaskSummary> rows(count);
    std::vector<Extraction> extractions(count);
    parallel_for(count, options.threads, [&](std::size_t i) {
        MaskSummary &row = rows[i];
        const ActivationMask mask = masks.at(i);
        row.index = i;
        row.mask = mask.to_string();
        const BackhaulReport bh = backhaul_from_mask(mask, params);
        row.max_backhaul = bh.max;
        row.total_backhaul = bh.total;
        if (params.backhaul_cap && bh.max > *params.backhaul_cap)
        {
            row.status = "over-cap";
            return;
        }
        const BeamformingSdp sdp = build_sdp(ch, q, unit_weights(params.num_ir, params.num_rrh), mask);
        const conic::ConeSolution sol = conic::solve(sdp.program, options.solver);
        row.status = conic::to_string(sol.status);
        if (sol.status != conic::SolveStatus::optimal)
            return;
        extractions[i] = extract_beamformers(sol, sdp.layout);
        const SolutionReport r = make_report("exhaustive", extractions[i], ch, params, options.zero);
        row.feasible = r.feasible;
        row.transmit_power_mw = r.transmit_power_mw;
        row.objective = params.delta * bh.max + params.eta * r.transmit_power_mw;
    });

    ExhaustiveResult out;
    out.evaluated = masks.size();
    const MaskSummary *winner = nullptr;
    for (const auto &row : rows)
    {
        if (!row.feasible)
            continue;
        ++out.feasible_masks;
        if (winner == nullptr || better(row, *winner))
            winner = &row;
    }
    if (winner == nullptr)
        throw InfeasibleInstance("exhaustive search: no assignment is feasible");
    out.report = make_report("exhaustive", extractions[static_cast<std::size_t>(winner->index)], ch, params,
                             options.zero);
    out.report.solver.status = "optimal";
    out.report.solver.solves = static_cast<int>(count);
    if (options.keep_table)
        out.table = std::move(rows);
    return out;
}

SolutionReport full_cooperation(const ChannelSet &ch, const SystemParams &params, const conic::SolverOptions &solver,
                                const ZeroTest &zero)
{
    const SystemParams q = power_minimization(params);
    const BeamformingSdp sdp =
        build_sdp(ch, q, unit_weights(q.num_ir, q.num_rrh), ActivationMask(q.num_ir, q.num_rrh));
    const conic::ConeSolution sol = conic::solve(sdp.program, solver);
    if (sol.status == conic::SolveStatus::infeasible)
        throw InfeasibleInstance("full cooperation: the problem is infeasible");
    if (sol.status != conic::SolveStatus::optimal)
        throw NumericalFailure(std::string("full cooperation: solver status ") + conic::to_string(sol.status));
    SolutionReport r = make_report("full-coop", extract_beamformers(sol, sdp.layout), ch, q, zero);
    r.solver = diagnostics_of(sol);
    return r;
}

SystemParams colocated_params(const SystemParams &params)
{
    SystemParams q = power_minimization(params);
    q.antennas_per_rrh = params.num_rrh * params.antennas_per_rrh;
    q.num_rrh = 1;
    q.max_tx_mw = {std::numeric_limits<double>::infinity()};
    q.rrh_circuit_mw = {params.rrh_circuit_mw.front()};
    q.finalize();
    return q;
}

SolutionReport colocated_system(const Topology &topo, const SystemParams &params, Rng &rng,
                                const conic::SolverOptions &solver, const ZeroTest &zero)
{
    const SystemParams q = colocated_params(params);
    Topology single = topo;
    single.rrh = {topo.centroid()};
    const ChannelSet ch = sample_channels(single, q, rng);
    SolutionReport r = full_cooperation(ch, q, solver, zero);
    r.scheme = "colocated";
    return r;
}

} // namespace compswipt
