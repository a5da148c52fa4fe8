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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gpsc/kernel.hpp"
#include "gpsc/partition.hpp"

namespace gpsc {

/// Dense Gram matrix K[i][j] = k(x_i, x_j) with its Cholesky factor.
///
/// Factorization failure throws NumericalError. A positive `jitter` is added
/// to the diagonal before factorizing; it is off unless a caller asks for it.
class GramMatrix {
public:
    GramMatrix(const Kernel &kernel, std::span<const double> points, double jitter = 0.0);

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd &matrix() const noexcept { return matrix_; }
    [[nodiscard]] Eigen::MatrixXd lower() const { return llt_.matrixL(); }
    [[nodiscard]] const Eigen::LLT<Eigen::MatrixXd> &llt() const noexcept { return llt_; }

    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd &rhs) const { return llt_.solve(rhs); }
    /// fᵀ K⁻¹ f via one triangular solve.
    [[nodiscard]] double quad_form(std::span<const double> f) const;
    [[nodiscard]] Eigen::MatrixXd inverse() const;
    /// L·z, the exact N(0, K) draw for standard-normal z.
    [[nodiscard]] Eigen::VectorXd correlate(std::span<const double> z) const;

private:
    Eigen::MatrixXd matrix_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

[[nodiscard]] GramMatrix gram(const Kernel &kernel, const Partition &p, double jitter = 0.0);

/// Symmetric tridiagonal matrix: diagonal b_1..b_N, off-diagonal c_1..c_{N-1}.
struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    [[nodiscard]] std::size_t size() const noexcept { return diagonal.size(); }
    [[nodiscard]] Eigen::MatrixXd dense() const;
    [[nodiscard]] Eigen::MatrixXd multiply(const Eigen::MatrixXd &rhs) const;
    [[nodiscard]] double quad_form(std::span<const double> f) const;
};

/// Inverse of the Brownian-motion Gram matrix min(x_i, x_j), band form:
///   b_i = (x_{i+1} - x_{i-1}) / ((x_{i-1} - x_i)(x_i - x_{i+1})), x_0 = 0,
///   b_N = 1 / (x_N - x_{N-1}),   c_i = 1 / (x_i - x_{i+1}).
[[nodiscard]] SymmetricTridiagonal bm_gram_inverse_tridiagonal(const Partition &p);

} // namespace gpsc
