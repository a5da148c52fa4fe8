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
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gpsc/kernel.hpp"
#include "gpsc/partition.hpp"
#include "gpsc/sampling.hpp"

namespace gpsc {

enum class EstimatorKind { ML, CV, ICV, LPO };

/// Boundary/interior split of the LOO-CV estimator.
struct CvDecomposition {
    double b1;        // held-out first point
    double interior;  // held-out x_2 .. x_{N-1}
    double b2;        // held-out last point
    [[nodiscard]] double total() const noexcept { return b1 + interior + b2; }
};

struct ScaleEstimate {
    EstimatorKind kind;
    std::size_t p = 0;  // LPO only
    double value = 0.0;
    std::size_t n = 0;
    std::optional<CvDecomposition> decomposition;
};

struct IcvOptions {
    /// Points dropped from each end; 1 gives the standard interior estimator.
    std::size_t trim = 1;
    /// Divide by the number of retained terms instead of N.
    bool normalize_by_terms = false;
};

enum class LpoMode { Bruteforce, Explicit };

struct LpoOptions {
    LpoMode mode = LpoMode::Explicit;
    /// Bruteforce enumeration refuses N > 14 unless this is set.
    bool allow_large = false;
};

// Brownian-motion closed forms, O(N). f_0 = 0 at x_0 = 0.

[[nodiscard]] ScaleEstimate sigma_ml_bm(const Partition &p, std::span<const double> values);
[[nodiscard]] ScaleEstimate sigma_cv_bm(const Partition &p, std::span<const double> values);
[[nodiscard]] ScaleEstimate sigma_icv_bm(const Partition &p, std::span<const double> values,
                                         IcvOptions options = {});
[[nodiscard]] ScaleEstimate sigma_lpo(const Partition &p, std::span<const double> values, std::size_t holdout,
                                      LpoOptions options = {});

[[nodiscard]] ScaleEstimate sigma_ml_bm(const PathSample &s);
[[nodiscard]] ScaleEstimate sigma_cv_bm(const PathSample &s);
[[nodiscard]] ScaleEstimate sigma_icv_bm(const PathSample &s, IcvOptions options = {});
[[nodiscard]] ScaleEstimate sigma_lpo(const PathSample &s, std::size_t holdout, LpoOptions options = {});

/// Leave-p-out by enumerating every held-out subset with a dense refit per
/// subset. Works for any kernel.
[[nodiscard]] ScaleEstimate sigma_lpo_bruteforce(const Kernel &kernel, const Partition &p,
                                                 std::span<const double> values, std::size_t holdout,
                                                 bool allow_large = false);

/// |σ̂²_ML - (1/N) Σ_p σ̂²_LPO(p)| with every LPO term enumerated; N ≤ 12.
[[nodiscard]] double verify_ml_lpo_identity(const Kernel &kernel, const Partition &p, std::span<const double> values);
[[nodiscard]] double verify_ml_lpo_identity(const PathSample &s);

// Generic kernels via one Cholesky factorization.

[[nodiscard]] ScaleEstimate sigma_ml_generic(const Kernel &kernel, const Partition &p, std::span<const double> values);
/// LOO residuals from [K⁻¹f]_n / [K⁻¹]_nn.
[[nodiscard]] ScaleEstimate sigma_cv_generic(const Kernel &kernel, const Partition &p, std::span<const double> values);
[[nodiscard]] ScaleEstimate sigma_icv_generic(const Kernel &kernel, const Partition &p, std::span<const double> values,
                                              IcvOptions options = {});

/// Estimator selector for the CLI and sweeps: "ml", "cv", "icv", "lpo:p".
struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::CV;
    std::size_t p = 0;
    IcvOptions icv{};
};

[[nodiscard]] EstimatorSpec parse_estimator(std::string_view spec);
[[nodiscard]] std::string describe(const EstimatorSpec &spec);
[[nodiscard]] std::string to_string(EstimatorKind kind);

/// Dispatches to the closed forms when `model` is the unit Brownian-motion
/// kernel and to the generic path otherwise. Generic LPO uses bruteforce.
[[nodiscard]] ScaleEstimate estimate(const EstimatorSpec &spec, const Kernel &model, const Partition &p,
                                     std::span<const double> values);

} // namespace gpsc
