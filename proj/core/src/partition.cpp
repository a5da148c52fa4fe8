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

#include "gpsc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gpsc/rng.hpp"

namespace gpsc {

Partition::Partition(double domain_length, std::vector<double> points)
    : Partition(domain_length, std::move(points), true) {}

Partition Partition::unanchored(double domain_length, std::vector<double> points) {
    return Partition(domain_length, std::move(points), false);
}

Partition::Partition(double domain_length, std::vector<double> points, bool anchored)
    : domain_length_(domain_length), points_(std::move(points)), anchored_(anchored) {
    if (!(domain_length_ > 0.0) || !std::isfinite(domain_length_)) {
        throw std::invalid_argument("partition: domain length T must be positive");
    }
    if (points_.empty()) {
        throw std::invalid_argument("partition: need at least one point");
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i] > prev) || !std::isfinite(points_[i])) {
            throw std::invalid_argument("partition: points must satisfy 0 < x_1 < ... < x_N (violated at index " +
                                        std::to_string(i + 1) + ")");
        }
        prev = points_[i];
    }
    if (points_.back() > domain_length_) {
        throw std::invalid_argument("partition: last point exceeds T");
    }
    if (anchored_ && points_.back() != domain_length_) {
        throw std::invalid_argument("partition: last point must equal T");
    }
}

std::vector<double> Partition::gaps() const {
    std::vector<double> out(points_.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        out[i] = points_[i] - prev;
        prev = points_[i];
    }
    return out;
}

double Partition::mesh() const {
    const auto g = gaps();
    return *std::max_element(g.begin(), g.end());
}

Partition equispaced(std::size_t n, double domain_length) {
    if (n == 0) throw std::invalid_argument("equispaced: N must be >= 1");
    if (!(domain_length > 0.0)) throw std::invalid_argument("equispaced: T must be positive");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = static_cast<double>(i + 1) * domain_length / static_cast<double>(n);
    }
    pts.back() = domain_length;
    return Partition(domain_length, std::move(pts));
}

Partition quasi_uniform_random(std::size_t n, double domain_length, double c_qu, std::uint64_t seed) {
    if (!(c_qu >= 1.0)) throw std::invalid_argument("quasi_uniform_random: c_qu must be >= 1");
    if (n == 0) throw std::invalid_argument("quasi_uniform_random: N must be >= 1");
    if (!(domain_length > 0.0)) throw std::invalid_argument("quasi_uniform_random: T must be positive");
    if (c_qu == 1.0) return equispaced(n, domain_length);

    Rng rng(seed);
    std::vector<double> w(n);
    double total = 0.0;
    for (auto &v : w) {
        v = rng.uniform(1.0, c_qu);
        total += v;
    }
    std::vector<double> pts(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i];
        pts[i] = domain_length * (acc / total);
    }
    pts.back() = domain_length;
    return Partition(domain_length, std::move(pts));
}

double quasi_uniformity_ratio(const Partition &p) {
    const auto g = p.gaps();
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    return *hi / *lo;
}

Partition sub_partition_stride2(const Partition &p, Parity parity) {
    if (p.size() < 2) throw std::invalid_argument("sub_partition_stride2: N must be >= 2");
    std::vector<double> pts;
    pts.reserve(p.size() / 2 + 1);
    // 1-based index n = first, first + 2, ...
    for (std::size_t n = (parity == Parity::Odd ? 1 : 2); n <= p.size(); n += 2) {
        pts.push_back(p.x(n));
    }
    return Partition::unanchored(p.domain_length(), std::move(pts));
}

} // namespace gpsc
