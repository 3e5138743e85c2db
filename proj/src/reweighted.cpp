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


#include "compswipt/reweighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace compswipt
{

double reweight(double slice_energy, double kappa)
{
    return 1.0 / (slice_energy + kappa);
}

WeightMatrix update_weights(const BeamformerSet &bf, double kappa)
{
    WeightMatrix rho(bf.num_ir(), bf.num_rrh());
    for (int k = 0; k < bf.num_ir(); ++k)
        for (int l = 0; l < bf.num_rrh(); ++l)
            rho(k, l) = reweight(bf.slice_energy(k, l), kappa);
    return rho;
}

ReweightResult run_reweighted(const ChannelSet &ch, const SystemParams &params, const ReweightOptions &options,
                              const std::string &scheme)
{
    params.validate();
    const int K = params.num_ir;
    const int L = params.num_rrh;
    const ActivationMask full(K, L);

    ReweightResult out;
    WeightMatrix rho = unit_weights(K, L);
    Extraction last, best;
    double best_objective = std::numeric_limits<double>::infinity();
    bool have_best = false;
    SolverDiagnostics diag;
    std::string failure;

    for (int n = 0; n < params.max_iterations; ++n)
    {
        const BeamformingSdp sdp = build_sdp(ch, params, rho, full);
        const conic::ConeSolution sol = conic::solve(sdp.program, options.solver);
        ++diag.solves;
        diag.iterations += sol.iterations;
        if (sol.status != conic::SolveStatus::optimal)
        {
            if (n == 0 && sol.status == conic::SolveStatus::infeasible)
                throw InfeasibleInstance("reweighted: the relaxed problem is infeasible");
            if (n == 0)
                throw NumericalFailure(std::string("reweighted: first solve ended with status ") +
                                       conic::to_string(sol.status));
            // the feasible set does not depend on rho, so this is numerical
            failure = std::string(conic::to_string(sol.status)) + " at iteration " + std::to_string(n);
            break;
        }
        diag.relative_gap = sol.relative_gap;
        diag.primal_infeasibility = sol.primal_infeasibility;
        diag.dual_infeasibility = sol.dual_infeasibility;

        last = extract_beamformers(sol, sdp.layout);
        const SolutionReport r = make_report(scheme, last, ch, params, options.zero);

        IterationRecord rec;
        rec.iteration = n;
        rec.weights = rho;
        rec.beamformers = last.beamformers;
        rec.max_backhaul = r.backhaul.max;
        rec.total_backhaul = r.backhaul.total;
        rec.transmit_power_mw = r.transmit_power_mw;
        double traces = 0.0;
        for (int b : sdp.layout.w_block)
            traces += 0.5 * sol.x[static_cast<std::size_t>(b)].trace();
        rec.surrogate_objective = last.phi + params.eta * traces;
        rec.objective = r.objective;
        rec.rank_ratio = last.rank_ratio;
        rec.active_slices = r.mask.active_count();
        rec.feasible = r.feasible;
        rec.solver_status = conic::to_string(sol.status);

        if (rec.feasible && rec.objective < best_objective)
        {
            best_objective = rec.objective;
            best = last;
            have_best = true;
        }

        bool settled = false;
        if (options.early_stop && !out.trace.rows.empty())
        {
            const IterationRecord &prev = out.trace.rows.back();
            const bool same_pattern = active_slices(prev.beamformers, options.zero) == r.mask;
            const double change = std::abs(rec.surrogate_objective - prev.surrogate_objective);
            settled = same_pattern && change <= options.early_stop_tol * std::max(1.0, std::abs(prev.surrogate_objective));
        }
        out.trace.rows.push_back(std::move(rec));
        if (settled)
            break;
        rho = update_weights(last.beamformers, params.kappa);
    }

    const Extraction &chosen = options.best_iterate && have_best ? best : last;
    out.report = make_report(scheme, chosen, ch, params, options.zero);
    diag.status = failure.empty() ? "optimal" : failure;
    out.report.solver = diag;
    return out;
}

LowerBounds lower_bounds(const SystemParams &params)
{
    if (params.rates.empty())
        throw ConfigError("lower_bounds: rates not computed; call finalize()");
    LowerBounds b;
    const double r = *std::min_element(params.rates.begin(), params.rates.end());
    b.non_uniform = !params.uniform_sinr();
    const int per_link_users = (params.num_ir + params.num_rrh - 1) / params.num_rrh;
    b.per_link = per_link_users * r;
    b.total = params.num_ir * r;
    return b;
}

} // namespace compswipt
