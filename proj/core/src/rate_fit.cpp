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
#include <numeric>
#include <stdexcept>

#include "gpsc/analysis.hpp"
#include "gpsc/error.hpp"

namespace gpsc {

std::string to_string(SummaryStatistic s) { return s == SummaryStatistic::Median ? "median" : "mean"; }

std::optional<double> reference_rate_exponent(EstimatorKind kind, const Smoothness &smoothness) {
    if (smoothness.l < 0 || smoothness.l > 1) return std::nullopt;
    const double s = 2.0 * (smoothness.l + smoothness.alpha);
    switch (kind) {
    case EstimatorKind::ML: return 1.0 - std::min(s, 2.0);
    case EstimatorKind::CV: return 1.0 - std::min(s, 3.0);
    case EstimatorKind::ICV: return 1.0 - std::min(s, 4.0);
    case EstimatorKind::LPO: break;
    }
    return std::nullopt;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of an empty set");
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

MeanSe mean_se(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean of an empty set");
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

RateFit fit_rate(std::span<const std::size_t> ns, std::span<const double> values, std::size_t drop_smallest,
                 SummaryStatistic statistic) {
    if (ns.size() != values.size()) throw std::invalid_argument("fit_rate: length mismatch");
    std::vector<std::size_t> order(ns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ns[a] < ns[b]; });
    if (order.size() < drop_smallest + 2) {
        throw std::invalid_argument("fit_rate: need at least two N values after dropping the smallest");
    }
    order.erase(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(drop_smallest));

    RateFit fit;
    fit.statistic = statistic;
    std::vector<double> lx;
    std::vector<double> ly;
    for (auto i : order) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw NumericalError("fit_rate: non-positive value at N = " + std::to_string(ns[i]));
        }
        fit.ns.push_back(ns[i]);
        lx.push_back(std::log(static_cast<double>(ns[i])));
        ly.push_back(std::log(values[i]));
    }
    const double m = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: all N values coincide");
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

} // namespace gpsc
