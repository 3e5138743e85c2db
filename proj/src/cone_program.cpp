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

#include "compswipt/conic.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace compswipt::conic
{

int ConeProgram::add_block(int dim, std::string name)
{
    if (dim < 1)
        throw StructuralError("ConeProgram: block dimension must be at least 1");
    dims_.push_back(dim);
    names_.push_back(std::move(name));
    objective_.push_back(Matrix::Zero(dim, dim));
    return num_blocks() - 1;
}

void ConeProgram::add_objective(int block, const Matrix &c)
{
    if (block < 0 || block >= num_blocks())
        throw StructuralError("ConeProgram: objective references unknown block");
    auto &dst = objective_[static_cast<std::size_t>(block)];
    if (c.rows() != dst.rows() || c.cols() != dst.cols())
        throw StructuralError("ConeProgram: objective coefficient has wrong dimension for block " +
                              std::to_string(block));
    dst += c;
}

int ConeProgram::add_equality(std::vector<BlockTerm> terms, double rhs, std::string label)
{
    for (const auto &t : terms)
    {
        if (t.block < 0 || t.block >= num_blocks())
            throw StructuralError("ConeProgram: constraint references unknown block");
        if (t.coeff.rows() != block_dim(t.block) || t.coeff.cols() != block_dim(t.block))
            throw StructuralError("ConeProgram: coefficient has wrong dimension for block " +
                                  std::to_string(t.block));
    }
    rows_.push_back({std::move(terms), rhs, label});
    const int row = num_rows() - 1;
    if (!label.empty())
        labels_[label] = {row, -1, 1.0};
    return row;
}

LabelEntry ConeProgram::add_inequality(std::vector<BlockTerm> terms, Sense sense, double rhs, std::string label)
{
    const int slack = add_block(1, label.empty() ? std::string("slack") : label + ".slack");
    const double sign = sense == Sense::greater_equal ? -1.0 : 1.0;
    terms.push_back({slack, Matrix::Constant(1, 1, sign)});
    const int row = add_equality(std::move(terms), rhs);
    rows_.back().label = label;
    LabelEntry entry{row, slack, sense == Sense::greater_equal ? 1.0 : -1.0};
    if (!label.empty())
        labels_[label] = entry;
    return entry;
}

void ConeProgram::set_label(const std::string &name, LabelEntry entry)
{
    labels_[name] = entry;
}

const LabelEntry &ConeProgram::label(const std::string &name) const
{
    auto it = labels_.find(name);
    if (it == labels_.end())
        throw StructuralError("ConeProgram: unknown label '" + name + "'");
    return it->second;
}

void ConeProgram::validate() const
{
    auto check = [&](const Matrix &m, int block, const std::string &what) {
        if (m.rows() != block_dim(block) || m.cols() != block_dim(block))
            throw StructuralError(what + ": wrong dimension for block " + std::to_string(block));
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw StructuralError(what + ": coefficient is not symmetric (block " + std::to_string(block) + ")");
        if (!m.allFinite())
            throw StructuralError(what + ": non-finite coefficient");
    };
    for (int j = 0; j < num_blocks(); ++j)
        check(objective_[static_cast<std::size_t>(j)], j, "objective");
    for (const auto &row : rows_)
    {
        if (!std::isfinite(row.rhs))
            throw StructuralError("constraint " + row.label + ": non-finite right-hand side");
        for (const auto &t : row.terms)
            check(t.coeff, t.block, "constraint " + row.label);
    }
}

std::vector<int> ConeProgram::independent_rows(double tol) const
{
    std::vector<Eigen::Index> offset(dims_.size() + 1, 0);
    for (std::size_t j = 0; j < dims_.size(); ++j)
        offset[j + 1] = offset[j] + dims_[j] * (dims_[j] + 1) / 2;
    const Eigen::Index total = offset.back();

    auto vectorize = [&](const ConstraintRow &row) {
        Vector v = Vector::Zero(total);
        for (const auto &t : row.terms)
        {
            Eigen::Index k = offset[static_cast<std::size_t>(t.block)];
            for (Eigen::Index c = 0; c < t.coeff.cols(); ++c)
                for (Eigen::Index r = 0; r <= c; ++r)
                    v(k++) += (r == c ? 1.0 : std::sqrt(2.0)) * t.coeff(r, c);
        }
        return v;
    };

    std::vector<int> kept;
    std::vector<Vector> basis;
    Matrix kept_rows(total, 0);
    for (int i = 0; i < num_rows(); ++i)
    {
        const Vector v = vectorize(rows_[static_cast<std::size_t>(i)]);
        const double norm = v.norm();
        Vector r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto &q : basis)
                r -= q.dot(r) * q;
        if (norm > 0.0 && r.norm() > tol * norm)
        {
            basis.push_back(r / r.norm());
            kept.push_back(i);
            kept_rows.conservativeResize(Eigen::NoChange, kept_rows.cols() + 1);
            kept_rows.col(kept_rows.cols() - 1) = v;
            continue;
        }
        // dependent row: its rhs must follow from the kept rows
        double implied = 0.0;
        if (!kept.empty())
        {
            const Vector coef = kept_rows.colPivHouseholderQr().solve(v);
            for (std::size_t k = 0; k < kept.size(); ++k)
                implied += coef(static_cast<Eigen::Index>(k)) * rows_[static_cast<std::size_t>(kept[k])].rhs;
        }
        const double rhs = rows_[static_cast<std::size_t>(i)].rhs;
        if (std::abs(rhs - implied) > 1e-8 * (1.0 + std::abs(rhs)))
            throw StructuralError("ConeProgram: constraint '" + rows_[static_cast<std::size_t>(i)].label +
                                  "' is dependent with an inconsistent right-hand side");
    }
    return kept;
}

void ConeProgram::write_triplets(std::ostream &os) const
{
    const auto old_precision = os.precision();
    os << std::setprecision(17);
    os << "# compswipt cone program, triplet format v1\n";
    os << "blocks " << num_blocks();
    for (int d : dims_)
        os << ' ' << d;
    os << "\nrows " << num_rows() << '\n';
    auto dump = [&](const Matrix &m, int block) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            for (Eigen::Index r = 0; r <= c; ++r)
                if (m(r, c) != 0.0)
                    os << block << ' ' << r << ' ' << c << ' ' << m(r, c) << '\n';
    };
    os << "objective\n";
    for (int j = 0; j < num_blocks(); ++j)
        dump(objective_[static_cast<std::size_t>(j)], j);
    for (int i = 0; i < num_rows(); ++i)
    {
        const auto &row = rows_[static_cast<std::size_t>(i)];
        os << "constraint " << i << " rhs " << row.rhs;
        if (!row.label.empty())
            os << " label " << row.label;
        os << '\n';
        for (const auto &t : row.terms)
            dump(t.coeff, t.block);
    }
    os << "end\n";
    os.precision(old_precision);
}

double apply_row(const ConstraintRow &row, const std::vector<Matrix> &x)
{
    double v = 0.0;
    for (const auto &t : row.terms)
        v += t.coeff.cwiseProduct(x[static_cast<std::size_t>(t.block)]).sum();
    return v;
}

const char *to_string(SolveStatus status)
{
    switch (status)
    {
    case SolveStatus::optimal:
        return "optimal";
    case SolveStatus::infeasible:
        return "infeasible";
    case SolveStatus::unbounded_below:
        return "unbounded-below";
    case SolveStatus::max_iterations:
        return "max-iterations";
    case SolveStatus::numerical_failure:
        return "numerical-failure";
    }
    return "unknown";
}

double ConeSolution::dual(const ConeProgram &p, const std::string &label) const
{
    const LabelEntry &e = p.label(label);
    if (e.row < 0)
        throw StructuralError("ConeSolution: label '" + label + "' has no constraint row");
    return e.dual_sign * y(e.row);
}

bool KktReport::within(double tol) const
{
    return primal_residual <= tol && dual_residual <= tol && max_complementarity <= tol;
}

} // namespace compswipt::conic
