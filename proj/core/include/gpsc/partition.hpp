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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gpsc {

/// Ordered sample locations 0 < x_1 < ... < x_N on [0, T].
///
/// The origin x_0 = 0 is implicit and never stored. Ordinary partitions
/// end exactly at T; stride-2 sub-partitions may stop short of T and record
/// their own endpoint instead.
class Partition {
public:
    /// Validates strict ordering and positivity; requires points.back() == T.
    Partition(double domain_length, std::vector<double> points);

    /// Sub-partition constructor: the last point may be below T.
    static Partition unanchored(double domain_length, std::vector<double> points);

    [[nodiscard]] double domain_length() const noexcept { return domain_length_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] double operator[](std::size_t i) const { return points_[i]; }
    /// Point x_n with the 1-based convention, x_0 = 0.
    [[nodiscard]] double x(std::size_t n) const { return n == 0 ? 0.0 : points_[n - 1]; }
    [[nodiscard]] double endpoint() const noexcept { return points_.back(); }
    [[nodiscard]] bool anchored() const noexcept { return anchored_; }

    /// Gaps Δx_n = x_{n+1} - x_n for n = 0..N-1 (first gap is x_1 - 0).
    [[nodiscard]] std::vector<double> gaps() const;
    [[nodiscard]] double gap(std::size_t n) const { return x(n + 1) - x(n); }

    /// Mesh size: the longest gap.
    [[nodiscard]] double mesh() const;

    [[nodiscard]] bool operator==(const Partition &) const = default;

private:
    Partition(double domain_length, std::vector<double> points, bool anchored);

    double domain_length_;
    std::vector<double> points_;
    bool anchored_;
};

enum class Parity { Even, Odd };

/// x_n = nT/N.
[[nodiscard]] Partition equispaced(std::size_t n, double domain_length);

/// Gap weights drawn uniformly from [1, c_qu] and normalized to sum T, so
/// the max/min gap ratio is at most c_qu. Deterministic given `seed`.
[[nodiscard]] Partition quasi_uniform_random(std::size_t n, double domain_length, double c_qu,
                                             std::uint64_t seed);

/// max_n Δx_n / min_n Δx_n over the N gaps (including the first one from 0).
[[nodiscard]] double quasi_uniformity_ratio(const Partition &p);

/// Odd-index points (x_1, x_3, ...) or even-index points (x_2, x_4, ...).
[[nodiscard]] Partition sub_partition_stride2(const Partition &p, Parity parity);

} // namespace gpsc
