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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Core>

#include "gpsc/analysis.hpp"
#include "gpsc/rng.hpp"

namespace gpsc {

namespace {

// x^q - y^q for x > y ≥ 0 without cancellation when x - y ≪ y.
double pow_diff(double x, double y, double q) {
    if (y <= 0.0) return std::pow(x, q);
    return std::pow(y, q) * std::expm1(q * std::log1p((x - y) / y));
}

void check_process(const FractionalProcess &process) {
    if (process.l != 0 && process.l != 1) throw std::invalid_argument("fractional process: l must be 0 or 1");
    if (!(process.hurst > 0.0 && process.hurst < 1.0)) {
        throw std::invalid_argument("fractional process: Hurst parameter must lie in (0, 1)");
    }
    if (!(process.scale > 0.0)) throw std::invalid_argument("fractional process: scale must be positive");
}

double c_h(double hurst) { return 2.0 * (hurst + 1.0) * (2.0 * hurst + 1.0); }

// E[(f(hi) - f(lo))²] / (hi - lo) for 0 ≤ lo < hi.
double increment_ratio(const FractionalProcess &pr, double lo, double hi) {
    const double d = hi - lo;
    if (pr.l == 0) return pr.scale * std::pow(d, 2.0 * pr.hurst - 1.0);
    const double q = 2.0 * pr.hurst + 1.0;
    return pr.scale * (pow_diff(hi, lo, q) - std::pow(d, q) / (2.0 * (pr.hurst + 1.0))) / q;
}

// E[r²] / k for the linear-interpolation residual at a point with left and
// right distances dl, dr to its neighbours.
double bracket_ratio(const FractionalProcess &pr, double dl, double dr) {
    if (pr.l == 0) {
        const double e = 2.0 * pr.hurst - 1.0;
        return pr.scale * (std::pow(dl, e) + std::pow(dr, e) - std::pow(dl + dr, e));
    }
    const double q = 2.0 * pr.hurst + 1.0;
    return pr.scale * (std::pow(dl + dr, q) - std::pow(dl, q) - std::pow(dr, q)) / c_h(pr.hurst);
}

// Covariance with the f(0) = 0 convention applied to index 0.
double cov0(const Kernel &k, double x, double y) { return (x <= 0.0 || y <= 0.0) ? 0.0 : k(x, y); }

// Var[Σ w_i f(x_i)] for up to three points.
double stencil_variance(const Kernel &k, std::span<const double> x, std::span<const double> w) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) v += w[i] * w[j] * cov0(k, x[i], x[j]);
    }
    return v;
}

} // namespace

std::optional<FractionalProcess> as_fractional(const Kernel &kernel) {
    const double s = kernel.scale();
    if (std::holds_alternative<BrownianMotion>(kernel.kind())) return FractionalProcess{0, 0.5, s};
    if (const auto *f = std::get_if<FractionalBM>(&kernel.kind())) return FractionalProcess{0, f->hurst, s};
    if (const auto *f = std::get_if<IntegratedFBM>(&kernel.kind())) return FractionalProcess{1, f->hurst, s};
    return std::nullopt;
}

std::vector<double> expected_loo_terms(const FractionalProcess &process, const Partition &p) {
    check_process(process);
    const std::size_t N = p.size();
    if (N < 2) throw std::invalid_argument("expected_loo_terms: need N >= 2");
    std::vector<double> t(N);
    for (std::size_t n = 1; n < N; ++n) t[n - 1] = bracket_ratio(process, p.gap(n - 1), p.gap(n));
    t[N - 1] = increment_ratio(process, p.x(N - 1), p.x(N));
    return t;
}

std::vector<double> expected_ml_terms(const FractionalProcess &process, const Partition &p) {
    check_process(process);
    std::vector<double> t(p.size());
    for (std::size_t n = 1; n <= p.size(); ++n) t[n - 1] = increment_ratio(process, p.x(n - 1), p.x(n));
    return t;
}

std::vector<double> expected_loo_terms(const Kernel &truth, const Partition &p) {
    const std::size_t N = p.size();
    if (N < 2) throw std::invalid_argument("expected_loo_terms: need N >= 2");
    std::vector<double> t(N);
    for (std::size_t n = 1; n < N; ++n) {
        const double dl = p.gap(n - 1);
        const double dr = p.gap(n);
        const double x[3] = {p.x(n - 1), p.x(n), p.x(n + 1)};
        const double w[3] = {dr, -(dl + dr), dl};
        t[n - 1] = stencil_variance(truth, x, w) / ((dl + dr) * dl * dr);
    }
    const double x[2] = {p.x(N - 1), p.x(N)};
    const double w[2] = {-1.0, 1.0};
    t[N - 1] = stencil_variance(truth, x, w) / p.gap(N - 1);
    return t;
}

std::vector<double> expected_ml_terms(const Kernel &truth, const Partition &p) {
    std::vector<double> t(p.size());
    const double w[2] = {-1.0, 1.0};
    for (std::size_t n = 1; n <= p.size(); ++n) {
        const double x[2] = {p.x(n - 1), p.x(n)};
        t[n - 1] = stencil_variance(truth, x, w) / p.gap(n - 1);
    }
    return t;
}

namespace {

CvDecomposition cv_from_terms(const std::vector<double> &t) {
    const std::size_t N = t.size();
    const double inv_n = 1.0 / static_cast<double>(N);
    double interior = 0.0;
    for (std::size_t i = 1; i + 1 < N; ++i) interior += t[i];
    return {inv_n * t.front(), inv_n * interior, inv_n * t.back()};
}

double icv_from_terms(const std::vector<double> &t, const IcvOptions &o) {
    const std::size_t N = t.size();
    if (N < 3 || o.trim < 1 || 2 * o.trim >= N) throw std::invalid_argument("icv: need 1 <= trim and 2*trim < N");
    double acc = 0.0;
    for (std::size_t i = o.trim; i + o.trim < N; ++i) acc += t[i];
    const std::size_t terms = N - 2 * o.trim;
    return acc / static_cast<double>(o.normalize_by_terms ? terms : N);
}

double mean_of(const std::vector<double> &t) {
    double acc = 0.0;
    for (double v : t) acc += v;
    return acc / static_cast<double>(t.size());
}

} // namespace

CvDecomposition expected_sigma_cv_analytic(const FractionalProcess &process, const Partition &p) {
    return cv_from_terms(expected_loo_terms(process, p));
}

double expected_sigma_ml_analytic(const FractionalProcess &process, const Partition &p) {
    return mean_of(expected_ml_terms(process, p));
}

double expected_sigma_icv_analytic(const FractionalProcess &process, const Partition &p) {
    return icv_from_terms(expected_loo_terms(process, p), IcvOptions{});
}

double expected_estimate(const Kernel &truth, const EstimatorSpec &estimator, const Partition &p) {
    const auto frac = as_fractional(truth);
    switch (estimator.kind) {
    case EstimatorKind::ML:
        return mean_of(frac ? expected_ml_terms(*frac, p) : expected_ml_terms(truth, p));
    case EstimatorKind::CV:
        return cv_from_terms(frac ? expected_loo_terms(*frac, p) : expected_loo_terms(truth, p)).total();
    case EstimatorKind::ICV:
        return icv_from_terms(frac ? expected_loo_terms(*frac, p) : expected_loo_terms(truth, p), estimator.icv);
    case EstimatorKind::LPO: break;
    }
    throw std::invalid_argument("expected_estimate: no expectation available for leave-p-out");
}

PointwiseRatio expected_pointwise_ratio(const FractionalProcess &process, const Partition &p, double x) {
    check_process(process);
    if (!(x >= 0.0 && x <= p.domain_length())) throw std::invalid_argument("expected_pointwise_ratio: x outside [0, T]");
    const auto pts = p.points();
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    if (x == 0.0 || (it != pts.end() && *it == x)) return {0.0, true};
    if (it == pts.end()) return {increment_ratio(process, p.endpoint(), x), false};
    const double right = *it;
    const double left = it == pts.begin() ? 0.0 : *(it - 1);
    return {bracket_ratio(process, x - left, right - x), false};
}

double expected_squared_error(const Kernel &truth, const Partition &p, double x) {
    if (!(x >= 0.0 && x <= p.domain_length())) throw std::invalid_argument("expected_squared_error: x outside [0, T]");
    const auto pts = p.points();
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    if (it == pts.end()) {
        const double xs[2] = {p.endpoint(), x};
        const double w[2] = {-1.0, 1.0};
        return stencil_variance(truth, xs, w);
    }
    const double right = *it;
    const double left = it == pts.begin() ? 0.0 : *(it - 1);
    const double t = (x - left) / (right - left);
    const double xs[3] = {left, x, right};
    const double w[3] = {-(1.0 - t), 1.0, -t};
    return std::max(0.0, stencil_variance(truth, xs, w));
}

std::optional<double> ExpectationReport::z_score() const {
    if (!analytic) return std::nullopt;
    if (mc_se == 0.0) return *analytic == mc_mean ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(*analytic - mc_mean) / mc_se;
}

ExpectationReport expectation_report(const ProcessSpec &process, const Partition &p, const EstimatorSpec &estimator,
                                     std::size_t replications, std::uint64_t seed, std::size_t jobs,
                                     SamplerOptions sampler) {
    if (replications < 2) throw std::invalid_argument("expectation_report: need at least two replications");
    ExpectationReport rep;
    rep.estimator = describe(estimator);
    rep.replications = replications;
    if (const auto *gp = std::get_if<GaussianProcess>(&process); gp && estimator.kind != EstimatorKind::LPO) {
        rep.analytic = expected_estimate(gp->kernel, estimator, p);
    }
    const Sampler s(process, p, sampler);
    const Kernel bm = Kernel::brownian_motion();
    std::vector<double> values(replications);
    parallel_for(replications, jobs, [&](std::size_t r) {
        const auto path = s.draw(derive_seed(seed, p.size(), r));
        values[r] = estimate(estimator, bm, p, path.values).value;
    });
    const auto ms = mean_se(values);
    rep.mc_mean = ms.mean;
    rep.mc_se = ms.se;
    return rep;
}

} // namespace gpsc
