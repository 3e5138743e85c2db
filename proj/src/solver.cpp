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

// Infeasible-start primal-dual path-following SDP solver.
//
// Search direction: HKM (Helmberg-Kojima-Monteiro), i.e. the Newton step for
// X S = mu I linearized as dX + X dS S^-1 = R and symmetrized. Every step
// forms the Schur complement M_ik = Tr(A_i X A_k S^-1), factors it once, and
// reuses the factorization for Mehrotra's predictor and corrector.
//
// The program is equilibrated before iterating: each row is divided by the
// Frobenius norm of its coefficients, then b and C are normalized. All
// reported quantities are mapped back to the caller's scaling.

#include "compswipt/conic.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace compswipt::conic
{
namespace
{

struct Term
{
    int row;
    Matrix coeff;
};

struct ScaledProgram
{
    std::vector<int> dims;
    std::vector<Matrix> c;
    Vector b;
    std::vector<std::vector<Term>> by_block; // terms grouped by block
    std::vector<int> original_row;           // scaled row -> program row
    Vector row_scale;                        // program row scale factors
    double b_scale = 1.0;
    double c_scale = 1.0;
    int total_dim = 0;
};

double frob_dot(const std::vector<Matrix> &a, const std::vector<Matrix> &b)
{
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j].cwiseProduct(b[j]).sum();
    return s;
}

double frob_norm(const std::vector<Matrix> &a)
{
    return std::sqrt(frob_dot(a, a));
}

ScaledProgram prepare(const ConeProgram &p, const std::vector<int> &rows)
{
    ScaledProgram sp;
    sp.dims = p.block_dims();
    sp.by_block.resize(sp.dims.size());
    sp.original_row = rows;
    const int m = static_cast<int>(rows.size());
    sp.b.resize(m);
    sp.row_scale.resize(m);

    for (int i = 0; i < m; ++i)
    {
        const auto &row = p.rows()[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])];
        double norm2 = 0.0;
        for (const auto &t : row.terms)
            norm2 += t.coeff.squaredNorm();
        const double scale = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 1.0;
        sp.row_scale(i) = scale;
        sp.b(i) = scale * row.rhs;
        for (const auto &t : row.terms)
        {
            auto &terms = sp.by_block[static_cast<std::size_t>(t.block)];
            // merge duplicate references to the same block
            if (!terms.empty() && terms.back().row == i)
                terms.back().coeff += scale * t.coeff;
            else
                terms.push_back({i, scale * t.coeff});
        }
    }

    sp.b_scale = std::max(1.0, sp.b.norm());
    sp.b /= sp.b_scale;
    sp.c = p.objective();
    sp.c_scale = std::max(1.0, frob_norm(sp.c));
    for (auto &cj : sp.c)
        cj /= sp.c_scale;
    for (int d : sp.dims)
        sp.total_dim += d;
    return sp;
}

// A(X)
Vector apply_a(const ScaledProgram &sp, const std::vector<Matrix> &x)
{
    Vector r = Vector::Zero(sp.b.size());
    for (std::size_t j = 0; j < sp.dims.size(); ++j)
        for (const auto &t : sp.by_block[j])
            r(t.row) += t.coeff.cwiseProduct(x[j]).sum();
    return r;
}

// A^T(y)
std::vector<Matrix> apply_at(const ScaledProgram &sp, const Vector &y)
{
    std::vector<Matrix> out;
    out.reserve(sp.dims.size());
    for (std::size_t j = 0; j < sp.dims.size(); ++j)
    {
        Matrix m = Matrix::Zero(sp.dims[j], sp.dims[j]);
        for (const auto &t : sp.by_block[j])
            m += y(t.row) * t.coeff;
        out.push_back(std::move(m));
    }
    return out;
}

Matrix symmetrize(const Matrix &m)
{
    return 0.5 * (m + m.transpose());
}

// Largest alpha <= cap with X + alpha dX PSD, given the Cholesky factor of X.
double max_step(const std::vector<Eigen::LLT<Matrix>> &chol, const std::vector<Matrix> &dx, double cap)
{
    double alpha = cap;
    for (std::size_t j = 0; j < dx.size(); ++j)
    {
        double lambda_min;
        if (dx[j].rows() == 1)
        {
            const double l = chol[j].matrixL()(0, 0);
            lambda_min = dx[j](0, 0) / (l * l);
        }
        else
        {
            Matrix t = chol[j].matrixL().solve(dx[j]);
            t = chol[j].matrixL().solve(t.transpose().eval());
            Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(t), Eigen::EigenvaluesOnly);
            lambda_min = es.eigenvalues()(0);
        }
        if (lambda_min < 0.0)
            alpha = std::min(alpha, -1.0 / lambda_min);
    }
    return alpha;
}

bool positive_definite(const std::vector<Matrix> &x)
{
    for (const auto &b : x)
        if (Eigen::LLT<Matrix>(b).info() != Eigen::Success)
            return false;
    return true;
}

// x + alpha dx, shrinking alpha until the result factors. Returns the step
// taken, 0 when no step keeps the iterate positive definite.
double take_step(std::vector<Matrix> &x, const std::vector<Matrix> &dx, double alpha)
{
    std::vector<Matrix> trial(x.size());
    for (int tries = 0; tries < 40; ++tries, alpha *= 0.8)
    {
        for (std::size_t j = 0; j < x.size(); ++j)
            trial[j] = symmetrize(x[j] + alpha * dx[j]);
        if (positive_definite(trial))
        {
            x = std::move(trial);
            return alpha;
        }
    }
    return 0.0;
}

struct Direction
{
    std::vector<Matrix> dx;
    Vector dy;
    std::vector<Matrix> ds;
};

class Iteration
{
public:
    Iteration(const ScaledProgram &sp, const std::vector<Matrix> &x, const std::vector<Matrix> &s)
        : sp_(sp), x_(x), s_(s)
    {
    }

    // Factors S, X and the Schur complement. False on loss of definiteness.
    bool factor(std::string &why)
    {
        const std::size_t nb = sp_.dims.size();
        s_inv_.assign(nb, Matrix());
        x_chol_.assign(nb, Eigen::LLT<Matrix>());
        s_chol_.assign(nb, Eigen::LLT<Matrix>());
        for (std::size_t j = 0; j < nb; ++j)
        {
            s_chol_[j].compute(s_[j]);
            x_chol_[j].compute(x_[j]);
            if (s_chol_[j].info() != Eigen::Success || x_chol_[j].info() != Eigen::Success)
            {
                why = "lost positive definiteness in block " + std::to_string(j);
                return false;
            }
            s_inv_[j] = s_chol_[j].solve(Matrix::Identity(sp_.dims[j], sp_.dims[j]));
        }

        const Eigen::Index m = sp_.b.size();
        Matrix schur = Matrix::Zero(m, m);
        for (std::size_t j = 0; j < nb; ++j)
        {
            const auto &terms = sp_.by_block[j];
            if (terms.empty())
                continue;
            if (sp_.dims[j] == 1)
            {
                const double w = x_[j](0, 0) * s_inv_[j](0, 0);
                for (const auto &a : terms)
                    for (const auto &b : terms)
                        schur(a.row, b.row) += w * a.coeff(0, 0) * b.coeff(0, 0);
                continue;
            }
            std::vector<Matrix> u;
            u.reserve(terms.size());
            for (const auto &t : terms)
                u.push_back(x_[j] * t.coeff * s_inv_[j]);
            for (std::size_t a = 0; a < terms.size(); ++a)
                for (std::size_t b = a; b < terms.size(); ++b)
                {
                    const double v = terms[a].coeff.cwiseProduct(u[b].transpose()).sum();
                    schur(terms[a].row, terms[b].row) += v;
                    if (a != b)
                        schur(terms[b].row, terms[a].row) += v;
                }
        }
        schur = symmetrize(schur);
        schur_.compute(schur);
        if (schur_.info() != Eigen::Success)
        {
            why = "Schur complement is not positive definite";
            return false;
        }
        return true;
    }

    // Solves the Newton system for the right-hand side dX + X dS S^-1 = rc.
    Direction direction(const Vector &rp, const std::vector<Matrix> &rd, const std::vector<Matrix> &rc) const
    {
        const std::size_t nb = sp_.dims.size();
        Vector h = rp;
        for (std::size_t j = 0; j < nb; ++j)
        {
            if (sp_.by_block[j].empty())
                continue;
            const Matrix q = rc[j] - x_[j] * rd[j] * s_inv_[j];
            for (const auto &t : sp_.by_block[j])
                h(t.row) -= t.coeff.cwiseProduct(q).sum();
        }
        Direction d;
        d.dy = schur_.solve(h);
        const std::vector<Matrix> at = apply_at(sp_, d.dy);
        d.ds.resize(nb);
        d.dx.resize(nb);
        for (std::size_t j = 0; j < nb; ++j)
        {
            d.ds[j] = rd[j] - at[j];
            d.dx[j] = symmetrize(rc[j] - x_[j] * d.ds[j] * s_inv_[j]);
        }
        return d;
    }

    const std::vector<Matrix> &s_inv() const { return s_inv_; }
    const std::vector<Eigen::LLT<Matrix>> &x_chol() const { return x_chol_; }
    const std::vector<Eigen::LLT<Matrix>> &s_chol() const { return s_chol_; }

private:
    const ScaledProgram &sp_;
    const std::vector<Matrix> &x_;
    const std::vector<Matrix> &s_;
    std::vector<Matrix> s_inv_;
    std::vector<Eigen::LLT<Matrix>> x_chol_;
    std::vector<Eigen::LLT<Matrix>> s_chol_;
    Eigen::LLT<Matrix> schur_;
};

double min_eigenvalue(const std::vector<Matrix> &blocks)
{
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &b : blocks)
    {
        if (b.rows() == 1)
            lo = std::min(lo, b(0, 0));
        else
        {
            Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
            lo = std::min(lo, es.eigenvalues()(0));
        }
    }
    return blocks.empty() ? 0.0 : lo;
}

// One Newton step towards the central point at half the current mu.
bool center(const ScaledProgram &sp, std::vector<Matrix> &x, Vector &y, std::vector<Matrix> &s, const Vector &rp,
            const std::vector<Matrix> &rd)
{
    Iteration it(sp, x, s);
    std::string why;
    if (!it.factor(why))
        return false;
    const std::size_t nb = x.size();
    const double gap = frob_dot(x, s);
    const double mu = gap / static_cast<double>(sp.total_dim);
    std::vector<Matrix> rc(nb);
    for (std::size_t j = 0; j < nb; ++j)
        rc[j] = 0.5 * mu * it.s_inv()[j] - x[j];
    const Direction d = it.direction(rp, rd, rc);
    double ap = std::min(1.0, 0.95 * max_step(it.x_chol(), d.dx, std::numeric_limits<double>::infinity()));
    double ad = std::min(1.0, 0.95 * max_step(it.s_chol(), d.ds, std::numeric_limits<double>::infinity()));
    // same gap safeguard as the main loop, but a blocked step ends centering
    auto gap_at = [&](double a_p, double a_d) {
        double g = 0.0;
        for (std::size_t j = 0; j < nb; ++j)
            g += (x[j] + a_p * d.dx[j]).cwiseProduct(s[j] + a_d * d.ds[j]).sum();
        return g;
    };
    if (gap_at(ap, ad) > gap * (1.0 + 1e-9))
    {
        double a = std::min(ap, ad);
        while (a > 1.0 / 16.0 && gap_at(a, a) > gap * (1.0 + 1e-9))
            a *= 0.5;
        if (gap_at(a, a) > gap * (1.0 + 1e-9))
            return false;
        ap = ad = a;
    }
    std::vector<Matrix> x_new = x, s_new = s;
    if (take_step(x_new, d.dx, ap) != ap || take_step(s_new, d.ds, ad) != ad)
        return false;
    x = std::move(x_new);
    s = std::move(s_new);
    y += ad * d.dy;
    return true;
}

// One interior-point run. With `safeguard` set, <X, S> never grows between
// accepted iterates; `stalled` reports that the safeguard pinned the steps.
ConeSolution solve_pass(const ConeProgram &program, const SolverOptions &options, bool safeguard, bool &stalled)
{
    stalled = false;
    ConeSolution sol;
    const std::vector<int> rows = program.independent_rows();
    sol.removed_rows = program.num_rows() - static_cast<int>(rows.size());
    const ScaledProgram sp = prepare(program, rows);
    const std::size_t nb = sp.dims.size();
    const Eigen::Index m = sp.b.size();

    // identity-scaled starting point
    double max_row_ratio = 0.0;
    double max_coeff_norm = 0.0;
    {
        Vector row_norm = Vector::Zero(m);
        for (std::size_t j = 0; j < nb; ++j)
            for (const auto &t : sp.by_block[j])
                row_norm(t.row) += t.coeff.squaredNorm();
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const double n = std::sqrt(row_norm(i));
            max_row_ratio = std::max(max_row_ratio, (1.0 + std::abs(sp.b(i))) / (1.0 + n));
            max_coeff_norm = std::max(max_coeff_norm, n);
        }
    }
    std::vector<Matrix> x(nb), s(nb);
    Vector y = Vector::Zero(m);
    for (std::size_t j = 0; j < nb; ++j)
    {
        const double d = sp.dims[j];
        const double tau_p = std::max({10.0, std::sqrt(d), d * max_row_ratio});
        const double tau_d = std::max({10.0, std::sqrt(d), max_coeff_norm, sp.c[j].norm()});
        x[j] = tau_p * Matrix::Identity(sp.dims[j], sp.dims[j]);
        s[j] = tau_d * Matrix::Identity(sp.dims[j], sp.dims[j]);
    }

    const double b_norm = sp.b.norm();
    const double c_norm = frob_norm(sp.c);
    const double n_total = static_cast<double>(sp.total_dim);
    std::ostringstream diag;

    SolveStatus status = SolveStatus::max_iterations;
    int centering_left = options.centering_steps;
    int short_steps = 0;
    int iter = 0;
    for (;; ++iter)
    {
        const Vector rp = sp.b - apply_a(sp, x);
        std::vector<Matrix> rd = apply_at(sp, y);
        for (std::size_t j = 0; j < nb; ++j)
            rd[j] = sp.c[j] - rd[j] - s[j];

        const double pobj = frob_dot(sp.c, x);
        const double dobj = sp.b.dot(y);
        const double gap = frob_dot(x, s);
        const double scale = sp.b_scale * sp.c_scale;
        const double rel_gap = scale * gap / (1.0 + scale * (std::abs(pobj) + std::abs(dobj)));
        const double pinf = rp.norm() / (1.0 + b_norm);
        const double dinf = frob_norm(rd) / (1.0 + c_norm);
        sol.gap_history.push_back(gap * sp.b_scale * sp.c_scale);
        if (options.verbose)
            std::cerr << "iter " << iter << " pobj " << pobj << " dobj " << dobj << " gap " << rel_gap << " pinf "
                      << pinf << " dinf " << dinf << '\n';

        if (rel_gap <= options.tolerance && pinf <= options.tolerance && dinf <= options.tolerance)
        {
            status = SolveStatus::optimal;
            // A converged predictor-corrector iterate can sit far from the
            // central path, leaving X S far from symmetric. Pure centering
            // steps restore X S ~ mu I without losing accuracy.
            if (centering_left-- > 0 && center(sp, x, y, s, rp, rd))
                continue;
            break;
        }
        // Farkas-type certificates: the iterates diverge along a ray
        if (dobj > 0.0 && frob_norm(apply_at(sp, y)) > 0.0)
        {
            std::vector<Matrix> ray = apply_at(sp, y);
            for (std::size_t j = 0; j < nb; ++j)
                ray[j] += s[j];
            if (frob_norm(ray) / dobj < options.tolerance && dobj > 1e6)
            {
                status = SolveStatus::infeasible;
                diag << "primal infeasibility certificate: b'y = " << dobj << "; ";
                break;
            }
        }
        if (pobj < 0.0 && -pobj > 1e6 && apply_a(sp, x).norm() / -pobj < options.tolerance)
        {
            status = SolveStatus::unbounded_below;
            diag << "dual infeasibility certificate: <C,X> = " << pobj << "; ";
            break;
        }
        if (iter >= options.max_iterations)
        {
            status = SolveStatus::max_iterations;
            diag << "iteration limit reached; rel gap " << rel_gap << ", pinf " << pinf << ", dinf " << dinf << "; ";
            break;
        }

        Iteration it(sp, x, s);
        std::string why;
        if (!it.factor(why))
        {
            status = SolveStatus::numerical_failure;
            diag << why << " at iteration " << iter << "; rel gap " << rel_gap << ", pinf " << pinf << ", dinf "
                 << dinf << "; ";
            break;
        }

        const double mu = gap / n_total;

        // predictor
        std::vector<Matrix> rc(nb);
        for (std::size_t j = 0; j < nb; ++j)
            rc[j] = -x[j];
        const Direction aff = it.direction(rp, rd, rc);
        const double ap_aff = max_step(it.x_chol(), aff.dx, 1.0);
        const double ad_aff = max_step(it.s_chol(), aff.ds, 1.0);
        double gap_aff = 0.0;
        for (std::size_t j = 0; j < nb; ++j)
            gap_aff += (x[j] + ap_aff * aff.dx[j]).cwiseProduct(s[j] + ad_aff * aff.ds[j]).sum();
        const double mu_aff = std::max(0.0, gap_aff / n_total);
        const double expon = std::max(1.0, 3.0 * std::pow(std::min(ap_aff, ad_aff), 2));
        const double sigma = std::clamp(std::pow(mu_aff / mu, expon), 0.0, 1.0);

        // corrector
        for (std::size_t j = 0; j < nb; ++j)
            rc[j] = sigma * mu * it.s_inv()[j] - x[j] - aff.dx[j] * aff.ds[j] * it.s_inv()[j];
        const Direction corrector = it.direction(rp, rd, rc);
        Direction d = corrector;

        const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
        const auto boundary_steps = [&](const Direction &dir) {
            return std::pair{
                std::min(1.0, gamma * max_step(it.x_chol(), dir.dx, std::numeric_limits<double>::infinity())),
                std::min(1.0, gamma * max_step(it.s_chol(), dir.ds, std::numeric_limits<double>::infinity()))};
        };
        const auto gap_along = [&](const Direction &dir, double a_p, double a_d) {
            double g = 0.0;
            for (std::size_t j = 0; j < nb; ++j)
                g += (x[j] + a_p * dir.dx[j]).cwiseProduct(s[j] + a_d * dir.ds[j]).sum();
            return g;
        };
        auto gap_at = [&](double a_p, double a_d) { return gap_along(d, a_p, a_d); };

        // Keep <X, S> from growing between accepted iterates. With equal
        // primal and dual steps the gap is quadratic in the step length, so
        // the longest admissible step is a root of that quadratic. Returns
        // -1 when no step along `dir` reduces the gap.
        const double gap_cap = gap * (1.0 + 1e-9);
        const auto admissible = [&](const Direction &dir, double a_p, double a_d) -> std::pair<double, double> {
            if (gap_along(dir, a_p, a_d) <= gap_cap)
                return {a_p, a_d};
            const double g_plus = gap_along(dir, 1.0, 1.0);
            const double g_minus = gap_along(dir, -1.0, -1.0);
            const double lin = 0.5 * (g_plus - g_minus);
            const double quad = 0.5 * (g_plus + g_minus) - gap;
            if (lin >= 0.0)
                return {-1.0, -1.0};
            double a = std::min(a_p, a_d);
            if (quad > 0.0)
                a = std::min(a, -lin / quad);
            while (a > 0.0 && gap_along(dir, a, a) > gap_cap)
                a *= 0.9;
            return {a, a};
        };

        const auto [ap_bound, ad_bound] = boundary_steps(d);
        if (!safeguard)
        {
            std::vector<Matrix> x_new = x, s_new = s;
            const double ap_taken = take_step(x_new, d.dx, ap_bound);
            const double ad_taken = take_step(s_new, d.ds, ad_bound);
            if (ap_taken == 0.0 && ad_taken == 0.0)
            {
                status = SolveStatus::numerical_failure;
                diag << "no positive definite step at iteration " << iter << "; rel gap " << rel_gap << "; ";
                break;
            }
            x = std::move(x_new);
            s = std::move(s_new);
            y += ad_taken * d.dy;
            continue;
        }
        const double ap_full = std::min(ap_bound, ad_bound), ad_full = ap_full;
        auto [ap, ad] = admissible(d, ap_full, ad_full);
        const double reach = std::min(ap_full, ad_full);
        if (ap < 0.1 * reach || reach < 0.2)
        {
            // the second-order correction can make the corrector ascend in
            // the gap; a plain centering direction always descends
            for (std::size_t j = 0; j < nb; ++j)
                rc[j] = 0.5 * mu * it.s_inv()[j] - x[j];
            Direction plain = it.direction(rp, rd, rc);
            const auto [ap_plain, ad_plain] = boundary_steps(plain);
            const auto [ap2, ad2] = admissible(plain, ap_plain, ad_plain);
            if (ap2 > ap)
            {
                d = std::move(plain);
                ap = ap2;
                ad = ad2;
            }
        }
        // No useful gap-reducing step: the iterates are diverging along an
        // infeasibility ray and the full corrector step is taken so the
        // certificate tests can see it.
        bool diverging = false;
        if (ap < 1e-3 * reach || ap < 1e-12)
        {
            diverging = true;
            d = corrector;
            ap = ap_bound;
            ad = ad_bound;
        }
        if (ap < 1e-12 && ad < 1e-12)
        {
            status = SolveStatus::numerical_failure;
            diag << "step length collapsed at iteration " << iter << "; rel gap " << rel_gap << "; ";
            break;
        }

        // rounding can push the smallest eigenvalues of a nearly singular
        // block below zero at the computed step
        std::vector<Matrix> x_new = x, s_new = s;
        double ap_taken = take_step(x_new, d.dx, ap);
        double ad_taken = take_step(s_new, d.ds, ad);
        if (!diverging && gap_at(ap_taken, ad_taken) > gap_cap)
        {
            // shorter steps stay positive definite by convexity; fall back to
            // equal or one-sided steps that keep the gap from growing
            const double a = std::min(ap_taken, ad_taken);
            const std::pair<double, double> options[] = {{a, a}, {0.0, ad_taken}, {ap_taken, 0.0}};
            ap_taken = ad_taken = 0.0;
            for (const auto &[a_p, a_d] : options)
                if (a_p + a_d > 0.0 && gap_at(a_p, a_d) <= gap_cap)
                {
                    ap_taken = a_p;
                    ad_taken = a_d;
                    break;
                }
            for (std::size_t j = 0; j < nb; ++j)
            {
                x_new[j] = x[j] + ap_taken * d.dx[j];
                s_new[j] = s[j] + ad_taken * d.ds[j];
            }
        }
        if (ap_taken == 0.0 && ad_taken == 0.0)
        {
            status = SolveStatus::numerical_failure;
            diag << "no positive definite step at iteration " << iter << "; rel gap " << rel_gap << "; ";
            break;
        }
        short_steps = (!diverging && std::max(ap_taken, ad_taken) < 0.05) ? short_steps + 1 : 0;
        if (short_steps >= options.stall_iterations)
        {
            stalled = true;
            status = SolveStatus::max_iterations;
            diag << "gap safeguard stalled at iteration " << iter << "; rel gap " << rel_gap << "; ";
            break;
        }
        x = std::move(x_new);
        s = std::move(s_new);
        ad = ad_taken;
        y += ad * d.dy;
    }

    // back to the caller's scaling
    sol.x.resize(nb);
    sol.s.resize(nb);
    for (std::size_t j = 0; j < nb; ++j)
    {
        sol.x[j] = sp.b_scale * x[j];
        sol.s[j] = sp.c_scale * s[j];
    }
    sol.y = Vector::Zero(program.num_rows());
    for (Eigen::Index i = 0; i < m; ++i)
        sol.y(rows[static_cast<std::size_t>(i)]) = sp.c_scale * sp.row_scale(i) * y(i);

    sol.iterations = iter;
    sol.status = status;
    sol.primal_objective = frob_dot(program.objective(), sol.x);
    double dobj = 0.0;
    for (int i = 0; i < program.num_rows(); ++i)
        dobj += program.rows()[static_cast<std::size_t>(i)].rhs * sol.y(i);
    sol.dual_objective = dobj;
    sol.gap = frob_dot(sol.x, sol.s);
    sol.relative_gap = sol.gap / (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));

    const KktReport kkt = check_kkt(program, sol);
    double b_orig = 0.0;
    for (const auto &row : program.rows())
        b_orig = std::max(b_orig, std::abs(row.rhs));
    sol.primal_infeasibility = kkt.primal_residual / (1.0 + b_orig);
    sol.dual_infeasibility = kkt.dual_residual / (1.0 + frob_norm(program.objective()));
    diag << "iterations " << iter << ", rel gap " << sol.relative_gap;
    sol.diagnostics = diag.str();
    for (std::size_t i = 1; i < sol.gap_history.size(); ++i)
        if (sol.gap_history[i] > sol.gap_history[i - 1] * (1.0 + 1e-9))
            sol.gap_monotone = false;
    return sol;
}

} // namespace

ConeSolution solve(const ConeProgram &program, const SolverOptions &options)
{
    if (!(options.tolerance > 0.0))
        throw DomainError("solve: tolerance must be positive");
    if (options.stall_iterations < 1)
        throw DomainError("solve: stall_iterations must be positive");
    program.validate();

    bool stalled = false;
    ConeSolution sol = solve_pass(program, options, options.monotone_gap, stalled);
    if (stalled)
    {
        // near-degenerate programs can need a transient gap increase to recenter
        const int spent = sol.iterations;
        const std::string first = sol.diagnostics;
        bool unused = false;
        sol = solve_pass(program, options, false, unused);
        sol.iterations += spent;
        sol.diagnostics = first + " | restarted without gap safeguard: " + sol.diagnostics;
    }
    return sol;
}

KktReport check_kkt(const ConeProgram &program, const ConeSolution &solution)
{
    KktReport r;
    const std::size_t nb = static_cast<std::size_t>(program.num_blocks());
    if (solution.x.size() != nb || solution.s.size() != nb ||
        solution.y.size() != static_cast<Eigen::Index>(program.num_rows()))
        throw StructuralError("check_kkt: solution does not match the program shape");

    for (int i = 0; i < program.num_rows(); ++i)
    {
        const auto &row = program.rows()[static_cast<std::size_t>(i)];
        r.primal_residual = std::max(r.primal_residual, std::abs(apply_row(row, solution.x) - row.rhs));
    }

    std::vector<Matrix> dual_res = program.objective();
    for (int i = 0; i < program.num_rows(); ++i)
        for (const auto &t : program.rows()[static_cast<std::size_t>(i)].terms)
            dual_res[static_cast<std::size_t>(t.block)] -= solution.y(i) * t.coeff;
    for (std::size_t j = 0; j < nb; ++j)
    {
        dual_res[j] -= solution.s[j];
        r.dual_residual = std::max(r.dual_residual, dual_res[j].norm());
        const double c = (solution.x[j] * solution.s[j]).norm();
        r.complementarity.push_back(c);
        r.max_complementarity = std::max(r.max_complementarity, c);
    }
    r.min_eigenvalue_x = min_eigenvalue(solution.x);
    r.min_eigenvalue_s = min_eigenvalue(solution.s);
    return r;
}

} // namespace compswipt::conic
