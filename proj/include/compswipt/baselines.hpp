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


// Reference schemes: exhaustive assignment search, full cooperation and a
// single co-located antenna array.

#ifndef COMPSWIPT_BASELINES_HPP
#define COMPSWIPT_BASELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "compswipt/problem.hpp"

namespace compswipt
{

// All K-tuples of non-empty RRH subsets in lexicographic order. IR 0 is the
// most significant position; subsets are ordered by their bit pattern with
// bit l standing for RRH l + 1, so for L = 2 the order is {1}, {2}, {1,2}.
class AssignmentEnumeration
{
public:
    AssignmentEnumeration(int num_ir, int num_rrh);

    int num_ir() const { return num_ir_; }
    int num_rrh() const { return num_rrh_; }
    // (2^L - 1)^K, saturating at UINT64_MAX
    std::uint64_t size() const { return size_; }
    ActivationMask at(std::uint64_t index) const;

    class iterator
    {
    public:
        using value_type = ActivationMask;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const AssignmentEnumeration *e, std::uint64_t i) : e_(e), i_(i) {}
        ActivationMask operator*() const { return e_->at(i_); }
        iterator &operator++()
        {
            ++i_;
            return *this;
        }
        iterator operator++(int)
        {
            iterator t = *this;
            ++i_;
            return t;
        }
        bool operator==(const iterator &o) const { return i_ == o.i_; }

    private:
        const AssignmentEnumeration *e_ = nullptr;
        std::uint64_t i_ = 0;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size_}; }

private:
    int num_ir_;
    int num_rrh_;
    std::uint64_t subsets_;
    std::uint64_t size_;
};

struct MaskSummary
{
    std::uint64_t index = 0;
    std::string mask;
    std::string status;
    bool feasible = false;
    double objective = 0.0; // delta max_l C_l + eta sum ||w||^2, backhaul from the mask
    double max_backhaul = 0.0;
    double total_backhaul = 0.0;
    double transmit_power_mw = 0.0;
};

struct ExhaustiveOptions
{
    std::uint64_t enumeration_cap = 100000;
    bool keep_table = false;
    unsigned threads = 1; // 0: hardware concurrency
    conic::SolverOptions solver;
    ZeroTest zero;
};

struct ExhaustiveResult
{
    SolutionReport report;
    std::uint64_t evaluated = 0;
    std::uint64_t feasible_masks = 0;
    std::vector<MaskSummary> table; // filled when keep_table is set
};

// Solves the minimum-power SDP (delta = 0, eta = 1) for every assignment and
// selects by the objective of the original (delta, eta), then by total
// backhaul, then by transmit power. Masks exceeding params.backhaul_cap on
// any link are skipped. Throws LimitExceeded above the enumeration cap and
// InfeasibleInstance when no assignment is feasible.
ExhaustiveResult exhaustive_search(const ChannelSet &ch, const SystemParams &params,
                                   const ExhaustiveOptions &options = {});

// One minimum-power solve with every RRH serving every IR. The report's
// objective is the transmit power.
SolutionReport full_cooperation(const ChannelSet &ch, const SystemParams &params,
                                const conic::SolverOptions &solver = {}, const ZeroTest &zero = {});

// Parameters of the co-located system: one RRH with L N_T antennas and no
// transmit power cap, minimizing power.
SystemParams colocated_params(const SystemParams &params);

// Full cooperation for a single array at the RRH centroid, with the same user
// positions and fresh fading drawn from rng. Throws InfeasibleInstance when
// the solve is infeasible.
SolutionReport colocated_system(const Topology &topo, const SystemParams &params, Rng &rng,
                                const conic::SolverOptions &solver = {}, const ZeroTest &zero = {});

} // namespace compswipt

#endif
