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

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gpsc/error.hpp"
#include "gpsc/estimators.hpp"

namespace gpsc {

namespace {

constexpr std::size_t kBruteforceLimit = 14;
constexpr std::size_t kIdentityLimit = 12;

double log_choose(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

void check_holdout(std::size_t N, std::size_t holdout) {
    if (holdout < 1 || holdout > N) {
        throw std::invalid_argument("leave-p-out: p = " + std::to_string(holdout) + " outside [1, " +
                                    std::to_string(N) + "]");
    }
}

// Advances a sorted k-subset of {0..n-1} to its lexicographic successor.
bool next_subset(std::vector<std::size_t> &idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

} // namespace

// Each held-out x_n is predicted from its nearest retained neighbours
// x_a < x_n < x_b (x_0 = 0 stands in when nothing below is retained).
// Summing over subsets reduces to counting, for every bracket (a, b), the
// subsets that hold out a+1..b-1 while retaining a and b.
ScaleEstimate sigma_lpo(const Partition &p, std::span<const double> values, std::size_t holdout,
                        LpoOptions options) {
    const std::size_t N = p.size();
    if (values.size() != N) throw std::invalid_argument("leave-p-out: value count does not match the partition");
    check_holdout(N, holdout);
    if (options.mode == LpoMode::Bruteforce) {
        return sigma_lpo_bruteforce(Kernel::brownian_motion(), p, values, holdout, options.allow_large);
    }
    auto f = [&](std::size_t i) { return i == 0 ? 0.0 : values[i - 1]; };
    const double log_total = log_choose(N, holdout);
    double acc = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double xn = p.x(n);
        const double fn = f(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = n + 1; b <= N + 1; ++b) {
                const std::size_t gap = b - a - 1;
                if (gap > holdout) break;
                const std::size_t retained = (a >= 1 ? 1 : 0) + (b <= N ? 1 : 0);
                if (gap + retained > N) continue;
                const std::size_t free = N - gap - retained;
                const std::size_t rest = holdout - gap;
                if (rest > free) continue;
                const double weight = std::exp(log_choose(free, rest) - log_total);
                double term;
                if (b <= N) {
                    const double dl = xn - p.x(a);
                    const double dr = p.x(b) - xn;
                    const double r = dl * (f(b) - fn) - dr * (fn - f(a));
                    term = r * r / ((dl + dr) * dl * dr);
                } else {
                    const double d = fn - f(a);
                    term = d * d / (xn - p.x(a));
                }
                acc += weight * term;
            }
        }
    }
    return {EstimatorKind::LPO, holdout, acc / static_cast<double>(holdout), N, std::nullopt};
}

ScaleEstimate sigma_lpo_bruteforce(const Kernel &kernel, const Partition &p, std::span<const double> values,
                                   std::size_t holdout, bool allow_large) {
    const std::size_t N = p.size();
    if (values.size() != N) throw std::invalid_argument("leave-p-out: value count does not match the partition");
    check_holdout(N, holdout);
    if (N > kBruteforceLimit && !allow_large) {
        throw std::invalid_argument("leave-p-out: bruteforce enumeration refuses N = " + std::to_string(N) + " > " +
                                    std::to_string(kBruteforceLimit) + " without an override");
    }
    std::vector<std::size_t> out(holdout);
    std::iota(out.begin(), out.end(), std::size_t{0});
    std::vector<char> held(N);
    std::vector<std::size_t> keep;
    keep.reserve(N);
    double total = 0.0;
    std::size_t subsets = 0;
    do {
        std::fill(held.begin(), held.end(), 0);
        for (auto i : out) held[i] = 1;
        keep.clear();
        for (std::size_t i = 0; i < N; ++i) {
            if (!held[i]) keep.push_back(i);
        }
        const auto r = static_cast<Eigen::Index>(keep.size());
        Eigen::MatrixXd K(r, r);
        Eigen::VectorXd y(r);
        for (Eigen::Index i = 0; i < r; ++i) {
            y(i) = values[keep[static_cast<std::size_t>(i)]];
            for (Eigen::Index j = 0; j < r; ++j) {
                K(i, j) = kernel(p[keep[static_cast<std::size_t>(i)]], p[keep[static_cast<std::size_t>(j)]]);
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt;
        Eigen::VectorXd alpha;
        if (r > 0) {
            llt.compute(K);
            if (llt.info() != Eigen::Success) throw NumericalError("leave-p-out: retained Gram matrix is singular");
            alpha = llt.solve(y);
        }
        double inner = 0.0;
        for (auto h : out) {
            const double xh = p[h];
            double mean = 0.0;
            double var = kernel(xh, xh);
            if (r > 0) {
                Eigen::VectorXd kx(r);
                for (Eigen::Index i = 0; i < r; ++i) kx(i) = kernel(xh, p[keep[static_cast<std::size_t>(i)]]);
                mean = kx.dot(alpha);
                llt.matrixL().solveInPlace(kx);
                var -= kx.squaredNorm();
            }
            if (!(var > 0.0)) throw NumericalError("leave-p-out: non-positive predictive variance");
            const double res = values[h] - mean;
            inner += res * res / var;
        }
        total += inner / static_cast<double>(holdout);
        ++subsets;
    } while (next_subset(out, N));
    return {EstimatorKind::LPO, holdout, total / static_cast<double>(subsets), N, std::nullopt};
}

double verify_ml_lpo_identity(const Kernel &kernel, const Partition &p, std::span<const double> values) {
    const std::size_t N = p.size();
    if (N > kIdentityLimit) {
        throw std::invalid_argument("verify_ml_lpo_identity: N = " + std::to_string(N) + " exceeds " +
                                    std::to_string(kIdentityLimit));
    }
    const double ml = sigma_ml_generic(kernel, p, values).value;
    double avg = 0.0;
    for (std::size_t q = 1; q <= N; ++q) avg += sigma_lpo_bruteforce(kernel, p, values, q).value;
    avg /= static_cast<double>(N);
    return std::abs(ml - avg);
}

double verify_ml_lpo_identity(const PathSample &s) {
    return verify_ml_lpo_identity(Kernel::brownian_motion(), s.partition, s.values);
}

} // namespace gpsc
