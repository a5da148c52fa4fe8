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
#include <stdexcept>

#include <Eigen/Core>

#include "gpsc/analysis.hpp"
#include "gpsc/gram.hpp"
#include "gpsc/posterior.hpp"
#include "gpsc/rng.hpp"

namespace gpsc {

std::vector<double> calibration_grid(const Partition &p, std::size_t per_cell) {
    if (per_cell == 0) throw std::invalid_argument("calibration_grid: need at least one point per cell");
    std::vector<double> grid;
    grid.reserve(p.size() * per_cell);
    const double denom = static_cast<double>(per_cell + 1);
    for (std::size_t n = 1; n <= p.size(); ++n) {
        const double a = p.x(n - 1);
        const double h = p.x(n) - a;
        for (std::size_t j = 1; j <= per_cell; ++j) grid.push_back(a + h * (static_cast<double>(j) / denom));
    }
    return grid;
}

namespace {

void locate_sup(CalibrationReport &r) {
    const auto it = std::max_element(r.ratio.begin(), r.ratio.end());
    r.sup = *it;
    r.sup_x = r.grid[static_cast<std::size_t>(it - r.ratio.begin())];
}

const char *source_of(const Kernel &truth) { return as_fractional(truth) ? "closed-form" : "stencil"; }

} // namespace

CalibrationReport calibration_report(const Kernel &truth, const Partition &p, const EstimatorSpec &estimator,
                                     std::size_t per_cell) {
    CalibrationReport r;
    r.n = p.size();
    r.estimator = describe(estimator);
    r.source = source_of(truth);
    r.grid = calibration_grid(p, per_cell);
    r.expected_sigma2 = expected_estimate(truth, estimator, p);
    const auto frac = as_fractional(truth);
    const Posterior post(p, std::vector<double>(p.size(), 0.0));
    r.numerator.reserve(r.grid.size());
    for (double x : r.grid) {
        const double kn = post.variance(x);
        const double num = frac ? expected_pointwise_ratio(*frac, p, x).value * kn : expected_squared_error(truth, p, x);
        const double den = r.expected_sigma2 * kn;
        r.numerator.push_back(num);
        r.denominator.push_back(den);
        r.ratio.push_back(num / den);
    }
    locate_sup(r);
    return r;
}

CalibrationReport calibration_report_mc(const Kernel &truth, const Partition &p, const EstimatorSpec &estimator,
                                        std::size_t per_cell, std::size_t replications, std::uint64_t seed,
                                        std::size_t jobs) {
    if (replications < 2) throw std::invalid_argument("calibration_report_mc: need at least two replications");
    CalibrationReport r;
    r.n = p.size();
    r.estimator = describe(estimator);
    r.source = "monte-carlo";
    r.grid = calibration_grid(p, per_cell);

    // Joint points: per cell, the grid points followed by the cell's right end.
    const std::size_t N = p.size();
    const std::size_t G = r.grid.size();
    std::vector<double> joint;
    joint.reserve(N + G);
    std::vector<std::size_t> data_index(N);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t j = 0; j < per_cell; ++j) joint.push_back(r.grid[n * per_cell + j]);
        data_index[n] = joint.size();
        joint.push_back(p[n]);
    }
    const GramMatrix gm(truth, joint);
    const Kernel bm = Kernel::brownian_motion();

    std::vector<double> sq(replications * G);
    std::vector<double> sig(replications);
    parallel_for(replications, jobs, [&](std::size_t rep) {
        std::vector<double> z(joint.size());
        Rng rng(derive_seed(seed, N, rep));
        rng.fill_normal(z);
        const Eigen::VectorXd f = gm.correlate(z);
        std::vector<double> vals(N);
        for (std::size_t n = 0; n < N; ++n) vals[n] = f(static_cast<Eigen::Index>(data_index[n]));
        sig[rep] = estimate(estimator, bm, p, vals).value;
        for (std::size_t n = 0; n < N; ++n) {
            const double a = p.x(n);
            const double b = p.x(n + 1);
            const double fa = n == 0 ? 0.0 : vals[n - 1];
            for (std::size_t j = 0; j < per_cell; ++j) {
                const std::size_t gi = n * per_cell + j;
                const double x = r.grid[gi];
                const double m = fa + (vals[n] - fa) * (x - a) / (b - a);
                const double e = f(static_cast<Eigen::Index>(data_index[n] - per_cell + j)) - m;
                sq[rep * G + gi] = e * e;
            }
        }
    });

    const auto sig_ms = mean_se(sig);
    r.expected_sigma2 = sig_ms.mean;
    const Posterior post(p, std::vector<double>(N, 0.0));
    std::vector<double> col(replications);
    for (std::size_t gi = 0; gi < G; ++gi) {
        for (std::size_t rep = 0; rep < replications; ++rep) col[rep] = sq[rep * G + gi];
        const double kn = post.variance(r.grid[gi]);
        const double num = mean_se(col).mean;
        r.numerator.push_back(num);
        r.denominator.push_back(r.expected_sigma2 * kn);
        r.ratio.push_back(num / (r.expected_sigma2 * kn));
    }
    locate_sup(r);

    // Delta-method standard error of A/B at the sup, A = mean sq, B = mean σ̂².
    const std::size_t gs = static_cast<std::size_t>(
        std::find(r.grid.begin(), r.grid.end(), r.sup_x) - r.grid.begin());
    const double kn = post.variance(r.sup_x);
    for (std::size_t rep = 0; rep < replications; ++rep) col[rep] = sq[rep * G + gs] / kn;
    const auto a = mean_se(col);
    const double B = sig_ms.mean;
    double cov = 0.0;
    for (std::size_t rep = 0; rep < replications; ++rep) cov += (col[rep] - a.mean) * (sig[rep] - B);
    cov /= static_cast<double>(replications - 1) * static_cast<double>(replications);
    const double A = a.mean;
    const double var = a.se * a.se / (B * B) + A * A * sig_ms.se * sig_ms.se / (B * B * B * B) - 2.0 * A * cov / (B * B * B);
    r.sup_se = std::sqrt(std::max(0.0, var));
    return r;
}

CalibrationSweep calibration_sweep(const CalibrationConfig &config) {
    if (config.ns.empty()) throw std::invalid_argument("calibration_sweep: empty N grid");
    if (config.estimators.empty()) throw std::invalid_argument("calibration_sweep: no estimators");
    CalibrationSweep out;
    const std::size_t E = config.estimators.size();
    out.reports.resize(config.ns.size() * E);
    for (std::size_t g = 0; g < config.ns.size(); ++g) {
        const Partition p = make_partition(config.partition, config.ns[g]);
        for (std::size_t e = 0; e < E; ++e) {
            out.reports[g * E + e] =
                config.replications == 0
                    ? calibration_report(config.truth, p, config.estimators[e], config.per_cell)
                    : calibration_report_mc(config.truth, p, config.estimators[e], config.per_cell,
                                            config.replications, config.seed, config.jobs);
        }
    }
    for (std::size_t e = 0; e < E; ++e) {
        std::vector<double> sups;
        for (std::size_t g = 0; g < config.ns.size(); ++g) sups.push_back(out.reports[g * E + e].sup);
        QuantityFit qf{describe(config.estimators[e]), std::nullopt, {}};
        try {
            qf.fit = fit_rate(config.ns, sups, config.drop_smallest, SummaryStatistic::Mean);
        } catch (const std::exception &ex) {
            qf.note = ex.what();
        }
        out.fits.push_back(std::move(qf));
    }
    return out;
}

} // namespace gpsc
