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

#include "gpsc/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "gpsc/csv.hpp"
#include "gpsc/gram.hpp"

namespace gpsc {

namespace {

void check_values(const Partition &p, std::span<const double> values) {
    if (values.size() != p.size()) throw std::invalid_argument("estimator: value count does not match the partition");
}

// Standardized squared LOO residual at x_n from neighbours a < n < b.
double interior_term(double xa, double fa, double xn, double fn, double xb, double fb) {
    const double dl = xn - xa;
    const double dr = xb - xn;
    const double r = dl * (fb - fn) - dr * (fn - fa);
    return r * r / ((dl + dr) * dl * dr);
}

} // namespace

ScaleEstimate sigma_ml_bm(const Partition &p, std::span<const double> values) {
    check_values(p, values);
    const std::size_t N = p.size();
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double d = values[n - 1] - prev;
        acc += d * d / p.gap(n - 1);
        prev = values[n - 1];
    }
    return {EstimatorKind::ML, 0, acc / static_cast<double>(N), N, std::nullopt};
}

ScaleEstimate sigma_cv_bm(const Partition &p, std::span<const double> values) {
    check_values(p, values);
    const std::size_t N = p.size();
    if (N < 2) throw std::invalid_argument("sigma_cv_bm: need N >= 2");
    auto f = [&](std::size_t i) { return i == 0 ? 0.0 : values[i - 1]; };
    const double inv_n = 1.0 / static_cast<double>(N);

    const double x1 = p.x(1);
    const double x2 = p.x(2);
    const double num = x2 * f(1) - x1 * f(2);
    const double b1 = inv_n * num * num / (x1 * x2 * (x2 - x1));

    double interior = 0.0;
    for (std::size_t n = 2; n < N; ++n) {
        interior += interior_term(p.x(n - 1), f(n - 1), p.x(n), f(n), p.x(n + 1), f(n + 1));
    }
    interior *= inv_n;

    const double d = f(N) - f(N - 1);
    const double b2 = inv_n * d * d / p.gap(N - 1);

    CvDecomposition dec{b1, interior, b2};
    return {EstimatorKind::CV, 0, dec.total(), N, dec};
}

ScaleEstimate sigma_icv_bm(const Partition &p, std::span<const double> values, IcvOptions options) {
    check_values(p, values);
    const std::size_t N = p.size();
    if (N < 3) throw std::invalid_argument("sigma_icv_bm: need N >= 3");
    if (options.trim < 1 || 2 * options.trim >= N) {
        throw std::invalid_argument("sigma_icv_bm: trim must satisfy 1 <= trim and 2*trim < N");
    }
    auto f = [&](std::size_t i) { return i == 0 ? 0.0 : values[i - 1]; };
    double acc = 0.0;
    for (std::size_t n = options.trim + 1; n + options.trim <= N; ++n) {
        acc += interior_term(p.x(n - 1), f(n - 1), p.x(n), f(n), p.x(n + 1), f(n + 1));
    }
    const std::size_t terms = N - 2 * options.trim;
    const double denom = static_cast<double>(options.normalize_by_terms ? terms : N);
    return {EstimatorKind::ICV, 0, acc * (1.0 / denom), N, std::nullopt};
}

ScaleEstimate sigma_ml_bm(const PathSample &s) { return sigma_ml_bm(s.partition, s.values); }
ScaleEstimate sigma_cv_bm(const PathSample &s) { return sigma_cv_bm(s.partition, s.values); }
ScaleEstimate sigma_icv_bm(const PathSample &s, IcvOptions options) {
    return sigma_icv_bm(s.partition, s.values, options);
}
ScaleEstimate sigma_lpo(const PathSample &s, std::size_t holdout, LpoOptions options) {
    return sigma_lpo(s.partition, s.values, holdout, options);
}

ScaleEstimate sigma_ml_generic(const Kernel &kernel, const Partition &p, std::span<const double> values) {
    check_values(p, values);
    const GramMatrix g(kernel, p.points());
    return {EstimatorKind::ML, 0, g.quad_form(values) / static_cast<double>(p.size()), p.size(), std::nullopt};
}

namespace {

// Per-point standardized LOO residuals [K⁻¹f]_n² / [K⁻¹]_nn.
Eigen::VectorXd generic_loo_terms(const Kernel &kernel, const Partition &p, std::span<const double> values) {
    check_values(p, values);
    if (p.size() < 2) throw std::invalid_argument("cross-validation: need N >= 2");
    const GramMatrix g(kernel, p.points());
    const Eigen::MatrixXd inv = g.inverse();
    const Eigen::VectorXd alpha =
        g.solve(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
    return alpha.array().square() / inv.diagonal().array();
}

} // namespace

ScaleEstimate sigma_cv_generic(const Kernel &kernel, const Partition &p, std::span<const double> values) {
    const Eigen::VectorXd t = generic_loo_terms(kernel, p, values);
    const auto N = t.size();
    const double inv_n = 1.0 / static_cast<double>(N);
    CvDecomposition dec{inv_n * t(0), inv_n * t.segment(1, N - 2).sum(), inv_n * t(N - 1)};
    return {EstimatorKind::CV, 0, dec.total(), static_cast<std::size_t>(N), dec};
}

ScaleEstimate sigma_icv_generic(const Kernel &kernel, const Partition &p, std::span<const double> values,
                                IcvOptions options) {
    const std::size_t N = p.size();
    if (N < 3) throw std::invalid_argument("sigma_icv: need N >= 3");
    if (options.trim < 1 || 2 * options.trim >= N) {
        throw std::invalid_argument("sigma_icv: trim must satisfy 1 <= trim and 2*trim < N");
    }
    const Eigen::VectorXd t = generic_loo_terms(kernel, p, values);
    const std::size_t terms = N - 2 * options.trim;
    const double acc = t.segment(static_cast<Eigen::Index>(options.trim), static_cast<Eigen::Index>(terms)).sum();
    const double denom = static_cast<double>(options.normalize_by_terms ? terms : N);
    return {EstimatorKind::ICV, 0, acc / denom, N, std::nullopt};
}

std::string to_string(EstimatorKind kind) {
    switch (kind) {
    case EstimatorKind::ML: return "ml";
    case EstimatorKind::CV: return "cv";
    case EstimatorKind::ICV: return "icv";
    case EstimatorKind::LPO: return "lpo";
    }
    return "?";
}

EstimatorSpec parse_estimator(std::string_view spec) {
    spec = trim(spec);
    if (spec == "ml") return {EstimatorKind::ML};
    if (spec == "cv") return {EstimatorKind::CV};
    if (spec == "icv") return {EstimatorKind::ICV};
    if (spec.starts_with("lpo:")) {
        const auto p = parse_int(spec.substr(4));
        if (p < 1) throw std::invalid_argument("estimator: lpo needs p >= 1");
        return {EstimatorKind::LPO, static_cast<std::size_t>(p)};
    }
    throw std::invalid_argument("unknown estimator '" + std::string(spec) + "' (expected ml, cv, icv or lpo:p)");
}

std::string describe(const EstimatorSpec &spec) {
    if (spec.kind == EstimatorKind::LPO) return "lpo:" + std::to_string(spec.p);
    return to_string(spec.kind);
}

ScaleEstimate estimate(const EstimatorSpec &spec, const Kernel &model, const Partition &p,
                       std::span<const double> values) {
    if (model.is_brownian_motion() && model.scale() == 1.0) {
        switch (spec.kind) {
        case EstimatorKind::ML: return sigma_ml_bm(p, values);
        case EstimatorKind::CV: return sigma_cv_bm(p, values);
        case EstimatorKind::ICV: return sigma_icv_bm(p, values, spec.icv);
        case EstimatorKind::LPO: return sigma_lpo(p, values, spec.p);
        }
    }
    switch (spec.kind) {
    case EstimatorKind::ML: return sigma_ml_generic(model, p, values);
    case EstimatorKind::CV: return sigma_cv_generic(model, p, values);
    case EstimatorKind::ICV: return sigma_icv_generic(model, p, values, spec.icv);
    case EstimatorKind::LPO: return sigma_lpo_bruteforce(model, p, values, spec.p);
    }
    throw std::logic_error("estimate: unhandled estimator kind");
}

} // namespace gpsc
