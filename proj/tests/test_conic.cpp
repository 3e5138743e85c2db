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

#include "doctest.h"

#include "compswipt/conic.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace compswipt;
using namespace compswipt::conic;

namespace
{

Matrix scalar(double v)
{
    return Matrix::Constant(1, 1, v);
}

// minimize Tr(W) s.t. Tr(h h^H W) >= rhs, W PSD (Hermitian, embedded)
ConeProgram single_user_power_min(const ComplexVector &h, double rhs)
{
    ConeProgram p;
    const int n = static_cast<int>(h.size());
    const int w = p.add_block(2 * n, "W");
    p.add_objective(w, 0.5 * embed_hermitian(HermitianMatrix::identity(n)));
    p.add_inequality({{w, 0.5 * embed_hermitian(HermitianMatrix::outer(h))}}, Sense::greater_equal, rhs, "C1");
    return p;
}

ComplexVector random_channel(std::mt19937_64 &rng, int n)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    ComplexVector h(n);
    for (int i = 0; i < n; ++i)
        h(i) = {nd(rng), nd(rng)};
    return h;
}

// Random feasible and bounded program: a few PSD blocks with PD objective,
// rows sum_j <A_ij, X_j> = <A_ij, X0_j> for a random interior X0.
ConeProgram random_program(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> nblocks(1, 3);
    std::uniform_int_distribution<int> dim(1, 5);
    std::normal_distribution<double> nd;
    ConeProgram p;
    std::vector<Matrix> x0;
    const int nb = nblocks(rng);
    for (int j = 0; j < nb; ++j)
    {
        const int d = dim(rng);
        p.add_block(d);
        Matrix g = Matrix::NullaryExpr(d, d, [&] { return nd(rng); });
        p.add_objective(j, g * g.transpose() + Matrix::Identity(d, d));
        Matrix r = Matrix::NullaryExpr(d, d, [&] { return nd(rng); });
        x0.push_back(r * r.transpose() + 0.5 * Matrix::Identity(d, d));
    }
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < m; ++i)
    {
        std::vector<BlockTerm> terms;
        double rhs = 0.0;
        for (int j = 0; j < nb; ++j)
        {
            const int d = p.block_dim(j);
            Matrix a = Matrix::NullaryExpr(d, d, [&] { return nd(rng); });
            a = 0.5 * (a + a.transpose()).eval();
            rhs += a.cwiseProduct(x0[static_cast<std::size_t>(j)]).sum();
            terms.push_back({j, a});
        }
        p.add_equality(std::move(terms), rhs);
    }
    return p;
}

} // namespace

TEST_CASE("embed_hermitian on a real scalar")
{
    HermitianMatrix h(1);
    h.set(0, 0, 5.0);
    const Matrix e = embed_hermitian(h);
    CHECK(e.rows() == 2);
    CHECK(e(0, 0) == 5.0);
    CHECK(e(1, 1) == 5.0);
    CHECK(e(0, 1) == 0.0);
    CHECK(e(1, 0) == 0.0);
}

TEST_CASE("embed_hermitian doubles eigenvalue multiplicity")
{
    HermitianMatrix h(2);
    h.set(0, 0, 1.0);
    h.set(1, 1, 1.0);
    h.set(0, 1, {0.0, 1.0});
    CHECK(h(1, 0) == std::complex<double>(0.0, -1.0));
    const Matrix e = embed_hermitian(h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(e);
    const Vector ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(ev(1)) < 1e-12);
    CHECK(ev(2) == doctest::Approx(2.0));
    CHECK(ev(3) == doctest::Approx(2.0));
    CHECK(e.trace() == doctest::Approx(2.0 * h.trace()));
}

TEST_CASE("embed_hermitian of identity is identity")
{
    for (int n : {1, 3, 6})
        CHECK(embed_hermitian(HermitianMatrix::identity(n)).isApprox(Matrix::Identity(2 * n, 2 * n)));
}

TEST_CASE("embedding preserves inner products up to a factor of two")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial)
    {
        const auto a = HermitianMatrix::outer(random_channel(rng, 4));
        const auto b = HermitianMatrix::outer(random_channel(rng, 4));
        const double complex_inner = (a.dense().adjoint() * b.dense()).trace().real();
        const double real_inner = embed_hermitian(a).cwiseProduct(embed_hermitian(b)).sum();
        CHECK(real_inner == doctest::Approx(2.0 * complex_inner).epsilon(1e-12));
        const HermitianMatrix back = unembed_hermitian(embed_hermitian(a));
        CHECK((back.dense() - a.dense()).norm() < 1e-14);
    }
}

TEST_CASE("HermitianMatrix rejects malformed input")
{
    HermitianMatrix h(2);
    CHECK_THROWS_AS(h.set(0, 0, {1.0, 0.5}), StructuralError);
    CHECK_THROWS_AS(HermitianMatrix::from_dense(ComplexMatrix::Zero(2, 3)), StructuralError);
    ComplexMatrix m(2, 2);
    m << 1.0, std::complex<double>(0, 1), std::complex<double>(0, 1), 1.0;
    CHECK_THROWS_AS(HermitianMatrix::from_dense(m), StructuralError);
    CHECK_THROWS_AS(unembed_hermitian(Matrix::Identity(3, 3)), StructuralError);
}

TEST_CASE("solve: one-variable LP")
{
    ConeProgram p;
    const int x = p.add_block(1, "x");
    p.add_objective(x, scalar(1.0));
    p.add_inequality({{x, scalar(1.0)}}, Sense::greater_equal, 3.0, "lower");
    const ConeSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.x[0](0, 0) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(s.relative_gap <= 1e-8);
    CHECK(s.dual(p, "lower") == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("solve: single-constraint power minimization is rank one")
{
    ComplexVector h(2);
    h << 1.0, 0.0;
    const ConeProgram p = single_user_power_min(h, 2.0);
    const ConeSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.primal_objective == doctest::Approx(2.0).epsilon(1e-7));
    const ComplexMatrix w = unembed_hermitian(s.x[0]).dense();
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 2.0;
    CHECK((w - expected).norm() < 1e-6);

    const KktReport kkt = check_kkt(p, s);
    CHECK(kkt.primal_residual <= 10 * 1e-8 * 2.0);
    CHECK(kkt.dual_residual <= 1e-7);
    CHECK(kkt.max_complementarity <= 1e-7);
}

TEST_CASE("solve: feasibility problem with unit trace")
{
    ConeProgram p;
    const int w = p.add_block(2);
    p.add_equality({{w, Matrix::Identity(2, 2)}}, 1.0, "trace");
    const ConeSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.x[0].trace() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.relative_gap <= 1e-8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s.x[0]);
    CHECK(es.eigenvalues()(0) >= -1e-8);
}

TEST_CASE("solve: closed-form single-user optimum on random complex channels")
{
    std::mt19937_64 rng(2024);
    const double gamma = 31.622776601683793;
    const double noise = 5.011872336272722e-3;
    for (int trial = 0; trial < 20; ++trial)
    {
        const int n = 1 + trial % 8;
        const ComplexVector h = random_channel(rng, n);
        const ConeSolution s = solve(single_user_power_min(h, gamma * noise));
        REQUIRE(s.status == SolveStatus::optimal);
        const double closed_form = gamma * noise / h.squaredNorm();
        CHECK(std::abs(s.primal_objective - closed_form) <= 1e-6 * closed_form);
        CHECK(s.relative_gap <= 1e-8);
    }
}

TEST_CASE("solve: detects primal infeasibility")
{
    ConeProgram p;
    const int x = p.add_block(1);
    p.add_objective(x, scalar(1.0));
    p.add_inequality({{x, scalar(1.0)}}, Sense::greater_equal, 3.0);
    p.add_inequality({{x, scalar(1.0)}}, Sense::less_equal, 1.0);
    const ConeSolution s = solve(p);
    CHECK(s.status == SolveStatus::infeasible);
}

TEST_CASE("solve: detects an unbounded objective")
{
    ConeProgram p;
    const int x = p.add_block(1);
    const int z = p.add_block(1);
    p.add_objective(x, scalar(-1.0));
    p.add_equality({{z, scalar(1.0)}}, 1.0);
    const ConeSolution s = solve(p);
    CHECK(s.status == SolveStatus::unbounded_below);
}

TEST_CASE("solve: iteration limit reports max-iterations")
{
    ComplexVector h(3);
    h << 1.0, 2.0, 0.5;
    SolverOptions opt;
    opt.max_iterations = 2;
    const ConeSolution s = solve(single_user_power_min(h, 1.0), opt);
    CHECK(s.status == SolveStatus::max_iterations);
    CHECK(s.iterations == 2);
}

TEST_CASE("solve: rejects nonpositive tolerance")
{
    ConeProgram p;
    p.add_block(1);
    SolverOptions opt;
    opt.tolerance = 0.0;
    CHECK_THROWS_AS(solve(p, opt), DomainError);
}

TEST_CASE("presolve drops redundant rows and rejects inconsistent ones")
{
    ConeProgram p;
    const int x = p.add_block(1);
    p.add_objective(x, scalar(1.0));
    p.add_equality({{x, scalar(1.0)}}, 2.0, "a");
    p.add_equality({{x, scalar(2.0)}}, 4.0, "b");
    CHECK(p.independent_rows() == std::vector<int>{0});
    const ConeSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.removed_rows == 1);
    CHECK(s.x[0](0, 0) == doctest::Approx(2.0));

    p.add_equality({{x, scalar(1.0)}}, 3.0, "c");
    CHECK_THROWS_AS(p.independent_rows(), StructuralError);
}

TEST_CASE("ConeProgram validation")
{
    ConeProgram p;
    const int w = p.add_block(2);
    CHECK_THROWS_AS(p.add_objective(w, Matrix::Identity(3, 3)), StructuralError);
    CHECK_THROWS_AS(p.add_equality({{5, scalar(1.0)}}, 1.0), StructuralError);
    CHECK_THROWS_AS(p.add_block(0), StructuralError);
    Matrix asym(2, 2);
    asym << 1, 2, 0, 1;
    p.add_equality({{w, asym}}, 1.0);
    CHECK_THROWS_AS(p.validate(), StructuralError);
}

TEST_CASE("check_kkt flags a perturbed primal")
{
    ComplexVector h(2);
    h << 1.0, 0.0;
    const ConeProgram p = single_user_power_min(h, 2.0);
    ConeSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    s.x[0] += 0.1 * Matrix::Identity(4, 4);
    const KktReport kkt = check_kkt(p, s);
    // one trace constraint touched: Tr(H (0.1 I)) = 0.1 ||h||^2
    CHECK(kkt.primal_residual == doctest::Approx(0.1).epsilon(1e-6));
    CHECK_FALSE(kkt.within(1e-6));
}

TEST_CASE("check_kkt on the zero program")
{
    ConeProgram p;
    p.add_block(3);
    p.add_block(1);
    ConeSolution s;
    s.x = {Matrix::Zero(3, 3), Matrix::Zero(1, 1)};
    s.s = s.x;
    s.y = Vector::Zero(0);
    const KktReport kkt = check_kkt(p, s);
    CHECK(kkt.primal_residual == 0.0);
    CHECK(kkt.dual_residual == 0.0);
    CHECK(kkt.max_complementarity == 0.0);
}

TEST_CASE("random programs: weak duality, KKT, determinism, monotone gap")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial)
    {
        const ConeProgram p = random_program(rng);
        const ConeSolution s = solve(p);
        REQUIRE(s.status == SolveStatus::optimal);
        const double tol = 1e-8;
        CHECK(s.primal_objective >= s.dual_objective - tol * (1.0 + std::abs(s.primal_objective)));
        const KktReport kkt = check_kkt(p, s);
        CHECK(kkt.min_eigenvalue_x >= -tol);
        CHECK(kkt.min_eigenvalue_s >= -tol);
        for (std::size_t k = 1; k < s.gap_history.size(); ++k)
            CHECK(s.gap_history[k] <= s.gap_history[k - 1] * (1.0 + 1e-9));
        CHECK(s.gap_monotone);

        const ConeSolution again = solve(p);
        CHECK(again.iterations == s.iterations);
        CHECK(again.y == s.y);
        for (std::size_t j = 0; j < s.x.size(); ++j)
            CHECK(again.x[j] == s.x[j]);
    }
}

TEST_CASE("solve without the gap safeguard reaches the same optimum")
{
    std::mt19937_64 rng(7);
    SolverOptions plain;
    plain.monotone_gap = false;
    for (int trial = 0; trial < 10; ++trial)
    {
        const ConeProgram p = random_program(rng);
        const ConeSolution a = solve(p);
        const ConeSolution b = solve(p, plain);
        REQUIRE(b.status == SolveStatus::optimal);
        CHECK(b.primal_objective == doctest::Approx(a.primal_objective).epsilon(1e-6));
    }
    SolverOptions bad;
    bad.stall_iterations = 0;
    CHECK_THROWS_AS(solve(random_program(rng), bad), DomainError);
}

TEST_CASE("triplet dump lists upper-triangular nonzeros")
{
    ConeProgram p;
    const int w = p.add_block(2);
    Matrix a(2, 2);
    a << 1.0, 0.5, 0.5, 0.0;
    p.add_objective(w, Matrix::Identity(2, 2));
    p.add_equality({{w, a}}, 3.0, "row");
    std::ostringstream os;
    p.write_triplets(os);
    const std::string out = os.str();
    CHECK(out.find("blocks 1 2") != std::string::npos);
    CHECK(out.find("constraint 0 rhs 3 label row") != std::string::npos);
    CHECK(out.find("0 0 1 0.5") != std::string::npos);
    CHECK(out.find("0 1 0 ") == std::string::npos);
}
