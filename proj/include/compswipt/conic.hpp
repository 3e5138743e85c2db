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

// Dense block-diagonal semidefinite programming.
//
// A ConeProgram is held in standard primal form
//
//     minimize    sum_j <C_j, X_j>
//     subject to  sum_j <A_ij, X_j> = b_i      for every row i
//                 X_j >= 0 (PSD)               for every block j
//
// with dual
//
//     maximize    b^T y
//     subject to  sum_i y_i A_ij + S_j = C_j,  S_j >= 0.
//
// Blocks of dimension one are nonnegative scalars. Inequalities are stored as
// equalities against an extra dimension-one slack block.

#ifndef COMPSWIPT_CONIC_HPP
#define COMPSWIPT_CONIC_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "compswipt/errors.hpp"

namespace compswipt::conic
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Complex Hermitian matrix. Only the upper triangle is stored, so the
// conjugate symmetry holds by construction.
class HermitianMatrix
{
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(Eigen::Index n);

    // Throws StructuralError when `m` is not square or not Hermitian within `tol`.
    static HermitianMatrix from_dense(const ComplexMatrix &m, double tol = 1e-12);
    // v v^H
    static HermitianMatrix outer(const ComplexVector &v);
    static HermitianMatrix identity(Eigen::Index n);

    Eigen::Index dim() const { return n_; }
    std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const;

    // Sets entry (i, j) and, implicitly, (j, i) to the conjugate. Diagonal
    // entries must be real.
    void set(Eigen::Index i, Eigen::Index j, std::complex<double> value);

    ComplexMatrix dense() const;
    double trace() const;

private:
    std::size_t index(Eigen::Index i, Eigen::Index j) const;

    Eigen::Index n_ = 0;
    std::vector<std::complex<double>> upper_;
};

// [[Re H, -Im H], [Im H, Re H]]. Inner products double:
// <embed(A), embed(B)> = 2 Re <A, B>.
Matrix embed_hermitian(const HermitianMatrix &h);

// Inverse of embed_hermitian. The two copies of the real and imaginary parts
// are averaged, so this is also the projection of an arbitrary symmetric
// 2n x 2n matrix onto the embedded subspace.
HermitianMatrix unembed_hermitian(const Matrix &x);

struct BlockTerm
{
    int block = 0;
    Matrix coeff;
};

struct ConstraintRow
{
    std::vector<BlockTerm> terms;
    double rhs = 0.0;
    std::string label;
};

enum class Sense
{
    greater_equal,
    less_equal
};

// Where a named constraint or variable lives in the standard form.
struct LabelEntry
{
    int row = -1;   // equality row, -1 for pure variable labels
    int block = -1; // slack block for inequalities, variable block otherwise
    double dual_sign = 1.0;
};

class ConeProgram
{
public:
    int add_block(int dim, std::string name = {});

    // Accumulates `c` into the objective of `block`.
    void add_objective(int block, const Matrix &c);

    int add_equality(std::vector<BlockTerm> terms, double rhs, std::string label = {});

    // sum terms (>= or <=) rhs. A fresh 1x1 slack block is appended; the
    // returned entry names the row and slack block.
    LabelEntry add_inequality(std::vector<BlockTerm> terms, Sense sense, double rhs, std::string label = {});

    void set_label(const std::string &name, LabelEntry entry);
    const LabelEntry &label(const std::string &name) const;
    bool has_label(const std::string &name) const { return labels_.count(name) != 0; }
    const std::map<std::string, LabelEntry> &labels() const { return labels_; }

    int num_blocks() const { return static_cast<int>(dims_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    int block_dim(int j) const { return dims_.at(static_cast<std::size_t>(j)); }
    const std::vector<int> &block_dims() const { return dims_; }
    const std::string &block_name(int j) const { return names_.at(static_cast<std::size_t>(j)); }
    const std::vector<Matrix> &objective() const { return objective_; }
    const std::vector<ConstraintRow> &rows() const { return rows_; }

    // Throws StructuralError on asymmetric or mis-sized coefficients.
    void validate() const;

    // Indices of a maximal linearly independent subset of rows, in order.
    // Throws StructuralError when a dependent row has an inconsistent rhs.
    std::vector<int> independent_rows(double tol = 1e-10) const;

    // Plain-text sparse triplet dump: one `block row col value` line per
    // upper-triangular nonzero, grouped by objective and constraint.
    void write_triplets(std::ostream &os) const;

private:
    std::vector<int> dims_;
    std::vector<std::string> names_;
    std::vector<Matrix> objective_;
    std::vector<ConstraintRow> rows_;
    std::map<std::string, LabelEntry> labels_;
};

enum class SolveStatus
{
    optimal,
    infeasible,
    unbounded_below,
    max_iterations,
    numerical_failure
};

const char *to_string(SolveStatus status);

struct SolverOptions
{
    double tolerance = 1e-8; // relative gap and relative infeasibility
    int max_iterations = 200;
    int centering_steps = 5; // taken after convergence
    // Keep <X, S> from growing between accepted iterates. If the safeguard pins
    // the step length for stall_iterations consecutive iterations the solve
    // restarts without it; gap_monotone in the solution reports the outcome.
    bool monotone_gap = true;
    int stall_iterations = 15;
    bool verbose = false;
};

struct ConeSolution
{
    std::vector<Matrix> x;
    Vector y;
    std::vector<Matrix> s;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double gap = 0.0;          // <X, S>
    double relative_gap = 0.0; // gap / (1 + |pobj| + |dobj|)
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    int iterations = 0;
    SolveStatus status = SolveStatus::numerical_failure;
    int removed_rows = 0;
    std::vector<double> gap_history; // <X, S> at every accepted iterate
    bool gap_monotone = true;        // gap_history never grows by more than 1e-9 relative
    std::string diagnostics;

    // Dual multiplier of a labeled constraint, sign-adjusted so that
    // multipliers of satisfied inequalities are nonnegative.
    double dual(const ConeProgram &p, const std::string &label) const;
};

// Infeasible-start primal-dual path-following method with the HKM search
// direction and a Mehrotra predictor-corrector step.
ConeSolution solve(const ConeProgram &program, const SolverOptions &options = {});

struct KktReport
{
    double primal_residual = 0.0;            // ||A(X) - b||_inf
    double dual_residual = 0.0;              // max_j ||C_j - A^T(y)_j - S_j||_F
    std::vector<double> complementarity;     // ||X_j S_j||_F per block
    double max_complementarity = 0.0;
    double min_eigenvalue_x = 0.0;
    double min_eigenvalue_s = 0.0;

    bool within(double tol) const;
};

KktReport check_kkt(const ConeProgram &program, const ConeSolution &solution);

// Value of row i of A(X).
double apply_row(const ConstraintRow &row, const std::vector<Matrix> &x);

} // namespace compswipt::conic

#endif
