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


// Iterative reweighted l1 resource allocation and the backhaul lower bounds.

#ifndef COMPSWIPT_REWEIGHTED_HPP
#define COMPSWIPT_REWEIGHTED_HPP

#include <string>
#include <vector>

#include "compswipt/problem.hpp"

namespace compswipt
{

struct IterationRecord
{
    int iteration = 0;
    WeightMatrix weights; // rho used for this solve
    BeamformerSet beamformers;
    double max_backhaul = 0.0;
    double total_backhaul = 0.0;
    double transmit_power_mw = 0.0;
    double surrogate_objective = 0.0; // phi + eta sum Tr(W_k)
    double objective = 0.0;           // delta max_l C_l + eta sum ||w||^2
    std::vector<double> rank_ratio;
    int active_slices = 0;
    bool feasible = false;
    std::string solver_status;
};

struct IterationTrace
{
    std::vector<IterationRecord> rows;
};

struct ReweightOptions
{
    // stop once the active pattern repeats and the surrogate moves by less
    // than early_stop_tol (relative)
    bool early_stop = false;
    double early_stop_tol = 1e-7;
    // report the feasible iterate with the smallest objective instead of the last
    bool best_iterate = false;
    conic::SolverOptions solver;
    ZeroTest zero;
};

struct ReweightResult
{
    SolutionReport report;
    IterationTrace trace;
};

// rho = 1 / (||w_k^l||^2 + kappa)
double reweight(double slice_energy, double kappa);
WeightMatrix update_weights(const BeamformerSet &bf, double kappa);

// Runs params.max_iterations reweighted SDP solves starting from unit
// weights. Throws InfeasibleInstance when the first SDP is infeasible and
// NumericalFailure when it fails otherwise. A failed later solve ends the
// loop; the report then keeps the last good iterate and the failing status.
ReweightResult run_reweighted(const ChannelSet &ch, const SystemParams &params, const ReweightOptions &options = {},
                              const std::string &scheme = "proposed");

struct LowerBounds
{
    double per_link = 0.0; // ceil(K / L) R
    double total = 0.0;    // K R
    // set when the targets differ across IRs; the bounds then use min_k R_k
    bool non_uniform = false;
};

LowerBounds lower_bounds(const SystemParams &params);

} // namespace compswipt

#endif
