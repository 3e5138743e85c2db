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

namespace compswipt::conic
{

HermitianMatrix::HermitianMatrix(Eigen::Index n)
    : n_(n), upper_(static_cast<std::size_t>(n * (n + 1) / 2))
{
    if (n < 0)
        throw StructuralError("HermitianMatrix: negative dimension");
}

std::size_t HermitianMatrix::index(Eigen::Index i, Eigen::Index j) const
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw StructuralError("HermitianMatrix: index out of range");
    // column-major packed upper triangle, i <= j
    return static_cast<std::size_t>(j * (j + 1) / 2 + i);
}

std::complex<double> HermitianMatrix::operator()(Eigen::Index i, Eigen::Index j) const
{
    if (i <= j)
        return upper_[index(i, j)];
    return std::conj(upper_[index(j, i)]);
}

void HermitianMatrix::set(Eigen::Index i, Eigen::Index j, std::complex<double> value)
{
    if (i == j)
    {
        if (value.imag() != 0.0)
            throw StructuralError("HermitianMatrix: diagonal entries must be real");
        upper_[index(i, i)] = value;
    }
    else if (i < j)
        upper_[index(i, j)] = value;
    else
        upper_[index(j, i)] = std::conj(value);
}

HermitianMatrix HermitianMatrix::from_dense(const ComplexMatrix &m, double tol)
{
    if (m.rows() != m.cols())
        throw StructuralError("HermitianMatrix: input is not square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    HermitianMatrix h(m.rows());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
        if (std::abs(m(j, j).imag()) > tol * scale)
            throw StructuralError("HermitianMatrix: diagonal has an imaginary part");
        h.upper_[h.index(j, j)] = m(j, j).real();
        for (Eigen::Index i = 0; i < j; ++i)
        {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale)
                throw StructuralError("HermitianMatrix: input is not Hermitian");
            h.upper_[h.index(i, j)] = 0.5 * (m(i, j) + std::conj(m(j, i)));
        }
    }
    return h;
}

HermitianMatrix HermitianMatrix::outer(const ComplexVector &v)
{
    HermitianMatrix h(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j)
    {
        h.upper_[h.index(j, j)] = std::norm(v(j));
        for (Eigen::Index i = 0; i < j; ++i)
            h.upper_[h.index(i, j)] = v(i) * std::conj(v(j));
    }
    return h;
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n)
{
    HermitianMatrix h(n);
    for (Eigen::Index i = 0; i < n; ++i)
        h.upper_[h.index(i, i)] = 1.0;
    return h;
}

ComplexMatrix HermitianMatrix::dense() const
{
    ComplexMatrix m(n_, n_);
    for (Eigen::Index j = 0; j < n_; ++j)
        for (Eigen::Index i = 0; i < n_; ++i)
            m(i, j) = (*this)(i, j);
    return m;
}

double HermitianMatrix::trace() const
{
    double t = 0.0;
    for (Eigen::Index i = 0; i < n_; ++i)
        t += upper_[index(i, i)].real();
    return t;
}

Matrix embed_hermitian(const HermitianMatrix &h)
{
    const Eigen::Index n = h.dim();
    Matrix x(2 * n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const std::complex<double> v = h(i, j);
            x(i, j) = v.real();
            x(i + n, j + n) = v.real();
            x(i + n, j) = v.imag();
            x(i, j + n) = -v.imag();
        }
    return x;
}

HermitianMatrix unembed_hermitian(const Matrix &x)
{
    if (x.rows() != x.cols() || x.rows() % 2 != 0)
        throw StructuralError("unembed_hermitian: expected a square matrix of even dimension");
    const Eigen::Index n = x.rows() / 2;
    HermitianMatrix h(n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        h.set(j, j, 0.5 * (x(j, j) + x(j + n, j + n)));
        for (Eigen::Index i = 0; i < j; ++i)
        {
            // average over the four copies of each real and imaginary part
            const double re = 0.25 * (x(i, j) + x(j, i) + x(i + n, j + n) + x(j + n, i + n));
            const double im = 0.25 * (x(i + n, j) - x(j + n, i) - x(i, j + n) + x(j, i + n));
            h.set(i, j, {re, im});
        }
    }
    return h;
}

} // namespace compswipt::conic
