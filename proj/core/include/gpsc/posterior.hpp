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

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gpsc/gram.hpp"
#include "gpsc/kernel.hpp"
#include "gpsc/partition.hpp"
#include "gpsc/sampling.hpp"

namespace gpsc {

/// GP interpolation posterior (m_N, σ²·k_N) under a zero prior mean.
///
/// The Brownian-motion backend evaluates the piecewise closed forms in O(log N)
/// per query; the generic backend solves against one cached Cholesky factor.
/// Queries outside [0, T] throw std::invalid_argument.
class Posterior {
public:
    enum class Backend { BrownianMotionClosedForm, Generic };

    /// Brownian-motion closed form.
    Posterior(Partition partition, std::vector<double> values, double sigma2 = 1.0);
    /// Generic Gram-solve backend for any kernel (including BM).
    Posterior(const Kernel &kernel, Partition partition, std::vector<double> values, double sigma2 = 1.0);

    [[nodiscard]] static Posterior closed_form(const PathSample &sample, double sigma2 = 1.0);
    [[nodiscard]] static Posterior generic(const Kernel &kernel, const PathSample &sample, double sigma2 = 1.0);

    [[nodiscard]] double mean(double x) const;
    /// σ²·k_N(x, x), clamped at zero.
    [[nodiscard]] double variance(double x) const;
    [[nodiscard]] double sd(double x) const;

    [[nodiscard]] Backend backend() const noexcept { return backend_; }
    [[nodiscard]] double sigma2() const noexcept { return sigma2_; }
    [[nodiscard]] const Partition &partition() const noexcept { return partition_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    /// Same fit with a different scale; the factorization is shared.
    [[nodiscard]] Posterior with_scale(double sigma2) const;

private:
    struct Generic {
        Kernel kernel;
        std::shared_ptr<const GramMatrix> gram;
        Eigen::VectorXd alpha;  // K⁻¹ f
    };

    void check_query(double x) const;
    [[nodiscard]] std::size_t cell(double x) const;

    Backend backend_;
    Partition partition_;
    std::vector<double> values_;
    double sigma2_;
    std::shared_ptr<const Generic> generic_;
};

/// Leave-one-out prediction at x_n from the other N - 1 points.
struct LooPrediction {
    double mean;
    double variance;
};

/// Brownian-motion closed form, 1 ≤ n ≤ N, N ≥ 2.
[[nodiscard]] LooPrediction loo_mean_var(const Partition &p, std::span<const double> values, std::size_t n);

} // namespace gpsc
