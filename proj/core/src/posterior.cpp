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

#include "gpsc/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gpsc {

namespace {

void check_values(const Partition &p, const std::vector<double> &values) {
    if (values.size() != p.size()) {
        throw std::invalid_argument("posterior: " + std::to_string(values.size()) + " values for " +
                                    std::to_string(p.size()) + " points");
    }
}

void check_scale(double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("posterior: scale must be positive");
}

} // namespace

Posterior::Posterior(Partition partition, std::vector<double> values, double sigma2)
    : backend_(Backend::BrownianMotionClosedForm),
      partition_(std::move(partition)),
      values_(std::move(values)),
      sigma2_(sigma2) {
    check_values(partition_, values_);
    check_scale(sigma2_);
}

Posterior::Posterior(const Kernel &kernel, Partition partition, std::vector<double> values, double sigma2)
    : backend_(Backend::Generic), partition_(std::move(partition)), values_(std::move(values)), sigma2_(sigma2) {
    check_values(partition_, values_);
    check_scale(sigma2_);
    auto g = std::make_shared<const GramMatrix>(kernel, partition_.points());
    Eigen::VectorXd alpha = g->solve(Eigen::Map<const Eigen::VectorXd>(values_.data(),
                                                                       static_cast<Eigen::Index>(values_.size())));
    generic_ = std::make_shared<const Generic>(Generic{kernel, std::move(g), std::move(alpha)});
}

Posterior Posterior::closed_form(const PathSample &sample, double sigma2) {
    return Posterior(sample.partition, sample.values, sigma2);
}

Posterior Posterior::generic(const Kernel &kernel, const PathSample &sample, double sigma2) {
    return Posterior(kernel, sample.partition, sample.values, sigma2);
}

Posterior Posterior::with_scale(double sigma2) const {
    check_scale(sigma2);
    Posterior out = *this;
    out.sigma2_ = sigma2;
    return out;
}

void Posterior::check_query(double x) const {
    if (!(x >= 0.0 && x <= partition_.domain_length())) {
        throw std::invalid_argument("posterior: query " + std::to_string(x) + " outside [0, " +
                                    std::to_string(partition_.domain_length()) + "]");
    }
}

// Smallest n ≥ 1 with x ≤ x_n, or N + 1 beyond the last point.
std::size_t Posterior::cell(double x) const {
    const auto pts = partition_.points();
    return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), x) - pts.begin()) + 1;
}

double Posterior::mean(double x) const {
    check_query(x);
    if (generic_) {
        double m = 0.0;
        for (std::size_t i = 0; i < partition_.size(); ++i) {
            m += generic_->kernel(x, partition_[i]) * generic_->alpha(static_cast<Eigen::Index>(i));
        }
        return m;
    }
    const std::size_t n = cell(x);
    const std::size_t N = partition_.size();
    if (n > N) return values_.back();
    const double a = partition_.x(n - 1);
    const double b = partition_.x(n);
    const double fa = n == 1 ? 0.0 : values_[n - 2];
    const double fb = values_[n - 1];
    if (x == b) return fb;
    return fa + (fb - fa) * ((x - a) / (b - a));
}

double Posterior::variance(double x) const {
    check_query(x);
    if (generic_) {
        const std::size_t N = partition_.size();
        Eigen::VectorXd kx(static_cast<Eigen::Index>(N));
        for (std::size_t i = 0; i < N; ++i) kx(static_cast<Eigen::Index>(i)) = generic_->kernel(x, partition_[i]);
        generic_->gram->llt().matrixL().solveInPlace(kx);
        return sigma2_ * std::max(0.0, generic_->kernel(x, x) - kx.squaredNorm());
    }
    const std::size_t n = cell(x);
    if (n > partition_.size()) return sigma2_ * (x - partition_.endpoint());
    const double a = partition_.x(n - 1);
    const double b = partition_.x(n);
    return sigma2_ * std::max(0.0, (b - x) * (x - a) / (b - a));
}

double Posterior::sd(double x) const { return std::sqrt(variance(x)); }

LooPrediction loo_mean_var(const Partition &p, std::span<const double> values, std::size_t n) {
    const std::size_t N = p.size();
    if (N < 2) throw std::invalid_argument("loo_mean_var: need N >= 2");
    if (values.size() != N) throw std::invalid_argument("loo_mean_var: value count does not match the partition");
    if (n < 1 || n > N) throw std::invalid_argument("loo_mean_var: index out of range");
    auto f = [&](std::size_t i) { return i == 0 ? 0.0 : values[i - 1]; };
    if (n == N) return {f(N - 1), p.x(N) - p.x(N - 1)};
    const double xl = p.x(n - 1);
    const double xn = p.x(n);
    const double xr = p.x(n + 1);
    const double mean = ((xn - xr) * f(n - 1) + (xl - xn) * f(n + 1)) / (xl - xr);
    const double var = (xn - xr) * (xn - xl) / (xl - xr);
    return {mean, var};
}

} // namespace gpsc
