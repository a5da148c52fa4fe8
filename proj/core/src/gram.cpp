/*
 * Copyright 2026 The gpsc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "gpsc/gram.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gpsc/error.hpp"

namespace gpsc {

GramMatrix::GramMatrix(const Kernel &kernel, std::span<const double> points, double jitter) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw std::invalid_argument("gram: empty point set");
    if (jitter < 0.0) throw std::invalid_argument("gram: jitter must be nonnegative");
    matrix_.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) {
            const double v = kernel(points[i], points[j]);
            matrix_(i, j) = v;
            matrix_(j, i) = v;
        }
    }
    if (jitter > 0.0) matrix_.diagonal().array() += jitter;
    llt_.compute(matrix_);
    if (llt_.info() != Eigen::Success) {
        throw NumericalError("gram: Cholesky factorization failed for kernel " + kernel.describe() + " on " +
                             std::to_string(n) + " points (numerically singular)");
    }
    // Duplicate points leave a pivot at rounding level rather than exactly 0.
    const auto d = llt_.matrixLLT().diagonal();
    const double eps = 8.0 * std::numeric_limits<double>::epsilon();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!std::isfinite(d(i)) || !(d(i) * d(i) > eps * matrix_(i, i))) {
            throw NumericalError("gram: Cholesky pivot " + std::to_string(i) + " vanishes for kernel " +
                                 kernel.describe() + " (numerically singular)");
        }
    }
}

double GramMatrix::quad_form(std::span<const double> f) const {
    if (f.size() != size()) throw std::invalid_argument("gram: value vector has wrong length");
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
    llt_.matrixL().solveInPlace(w);
    return w.squaredNorm();
}

Eigen::MatrixXd GramMatrix::inverse() const {
    return llt_.solve(Eigen::MatrixXd::Identity(matrix_.rows(), matrix_.cols()));
}

Eigen::VectorXd GramMatrix::correlate(std::span<const double> z) const {
    if (z.size() != size()) throw std::invalid_argument("gram: noise vector has wrong length");
    const Eigen::Map<const Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
    return llt_.matrixL() * zv;
}

GramMatrix gram(const Kernel &kernel, const Partition &p, double jitter) {
    return GramMatrix(kernel, p.points(), jitter);
}

Eigen::MatrixXd SymmetricTridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diagonal[i];
        if (i + 1 < n) {
            m(i, i + 1) = off_diagonal[i];
            m(i + 1, i) = off_diagonal[i];
        }
    }
    return m;
}

Eigen::MatrixXd SymmetricTridiagonal::multiply(const Eigen::MatrixXd &rhs) const {
    const auto n = static_cast<Eigen::Index>(size());
    if (rhs.rows() != n) throw std::invalid_argument("tridiagonal: dimension mismatch");
    Eigen::MatrixXd out(n, rhs.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.row(i) = diagonal[i] * rhs.row(i);
        if (i > 0) out.row(i) += off_diagonal[i - 1] * rhs.row(i - 1);
        if (i + 1 < n) out.row(i) += off_diagonal[i] * rhs.row(i + 1);
    }
    return out;
}

double SymmetricTridiagonal::quad_form(std::span<const double> f) const {
    if (f.size() != size()) throw std::invalid_argument("tridiagonal: value vector has wrong length");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc += diagonal[i] * f[i] * f[i];
        if (i + 1 < f.size()) acc += 2.0 * off_diagonal[i] * f[i] * f[i + 1];
    }
    return acc;
}

SymmetricTridiagonal bm_gram_inverse_tridiagonal(const Partition &p) {
    const std::size_t n = p.size();
    SymmetricTridiagonal t;
    t.diagonal.resize(n);
    t.off_diagonal.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 1; i < n; ++i) {
        t.diagonal[i - 1] = (p.x(i + 1) - p.x(i - 1)) / ((p.x(i - 1) - p.x(i)) * (p.x(i) - p.x(i + 1)));
        t.off_diagonal[i - 1] = 1.0 / (p.x(i) - p.x(i + 1));
    }
    t.diagonal[n - 1] = -1.0 / (p.x(n - 1) - p.x(n));
    return t;
}

} // namespace gpsc
