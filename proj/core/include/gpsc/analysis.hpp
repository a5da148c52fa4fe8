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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpsc/estimators.hpp"
#include "gpsc/kernel.hpp"
#include "gpsc/partition.hpp"
#include "gpsc/sampling.hpp"

namespace gpsc {

// Quadratic variation ----------------------------------------------------------

/// Σ_{n=0}^{N-1} (f_{n+1} - f_n)² with f_0 = 0.
[[nodiscard]] double quadratic_variation(std::span<const double> values) noexcept;
[[nodiscard]] double quadratic_variation(const PathSample &s) noexcept;

/// Stride-2 sums along the even points (x_2, x_4, ...) and odd points
/// (x_1, x_3, ...); neither includes the origin.
struct ParityVariation {
    double even;
    double odd;
};

[[nodiscard]] ParityVariation quadratic_variation_parity(std::span<const double> values);
[[nodiscard]] ParityVariation quadratic_variation_parity(const PathSample &s);

// Expectations under a Gaussian truth, Brownian-motion model -------------------

/// FBM (l = 0) or integrated FBM (l = 1) with Hurst parameter H and scale σ₀².
struct FractionalProcess {
    int l;
    double hurst;
    double scale = 1.0;
};

/// BM, FBM and iFBM kernels map to a FractionalProcess; everything else to nullopt.
[[nodiscard]] std::optional<FractionalProcess> as_fractional(const Kernel &kernel);

/// E[(f_n - m_{∖n}(x_n))²] / k_{∖n}(x_n) for n = 1..N (not divided by N).
[[nodiscard]] std::vector<double> expected_loo_terms(const FractionalProcess &process, const Partition &p);
/// E[(f_n - f_{n-1})²] / Δx_{n-1} for n = 1..N.
[[nodiscard]] std::vector<double> expected_ml_terms(const FractionalProcess &process, const Partition &p);

/// Same quantities for an arbitrary true kernel, from the covariances of the
/// two or three points entering each residual.
[[nodiscard]] std::vector<double> expected_loo_terms(const Kernel &truth, const Partition &p);
[[nodiscard]] std::vector<double> expected_ml_terms(const Kernel &truth, const Partition &p);

/// E σ̂²_CV split like the estimator.
[[nodiscard]] CvDecomposition expected_sigma_cv_analytic(const FractionalProcess &process, const Partition &p);
[[nodiscard]] double expected_sigma_ml_analytic(const FractionalProcess &process, const Partition &p);
/// Standard interior estimator: trim 1, 1/N normalization.
[[nodiscard]] double expected_sigma_icv_analytic(const FractionalProcess &process, const Partition &p);

/// E σ̂² for ML, CV or ICV (any trim/normalization). Closed forms for
/// fractional kernels, covariance stencils otherwise; LPO is rejected.
[[nodiscard]] double expected_estimate(const Kernel &truth, const EstimatorSpec &estimator, const Partition &p);

struct PointwiseRatio {
    double value;
    /// x coincides with a data point; value is the continuous extension 0.
    bool at_data_point;
};

/// E[f(x) - m_N(x)]² / k_N(x) under the BM posterior.
[[nodiscard]] PointwiseRatio expected_pointwise_ratio(const FractionalProcess &process, const Partition &p, double x);
/// E[f(x) - m_N(x)]² for an arbitrary true kernel.
[[nodiscard]] double expected_squared_error(const Kernel &truth, const Partition &p, double x);

/// Analytic (when known) against Monte-Carlo mean of one estimator.
struct ExpectationReport {
    std::string estimator;
    std::optional<double> analytic;
    double mc_mean = 0.0;
    double mc_se = 0.0;
    std::size_t replications = 0;

    /// |analytic - mc_mean| / mc_se; nullopt without an analytic value.
    [[nodiscard]] std::optional<double> z_score() const;
};

[[nodiscard]] ExpectationReport expectation_report(const ProcessSpec &process, const Partition &p,
                                                   const EstimatorSpec &estimator, std::size_t replications,
                                                   std::uint64_t seed, std::size_t jobs = 0,
                                                   SamplerOptions sampler = {});

// Rate fitting -----------------------------------------------------------------

enum class SummaryStatistic { Median, Mean };

[[nodiscard]] std::string to_string(SummaryStatistic s);

/// log(value) = intercept + exponent · log(N), least squares.
struct RateFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::size_t> ns;  // N values actually used
    SummaryStatistic statistic = SummaryStatistic::Median;
};

/// Drops the `drop_smallest` smallest N before fitting; needs two points left
/// and strictly positive values.
[[nodiscard]] RateFit fit_rate(std::span<const std::size_t> ns, std::span<const double> values,
                               std::size_t drop_smallest = 1, SummaryStatistic statistic = SummaryStatistic::Median);

/// Asymptotic exponent of E σ̂² against N for FBM (l = 0) and iFBM (l = 1):
/// 1 - min(2(l+H), c) with c = 2 (ML), 3 (CV), 4 (ICV). nullopt for l > 1
/// or leave-p-out.
[[nodiscard]] std::optional<double> reference_rate_exponent(EstimatorKind kind, const Smoothness &smoothness);

[[nodiscard]] double median(std::vector<double> v);
struct MeanSe {
    double mean;
    double se;
};
[[nodiscard]] MeanSe mean_se(std::span<const double> v);

// Sweeps -----------------------------------------------------------------------

enum class PartitionKind { Equispaced, QuasiUniform };

struct PartitionSpec {
    PartitionKind kind = PartitionKind::Equispaced;
    double domain_length = 1.0;
    double c_qu = 2.0;
    std::uint64_t seed = 0;
};

/// Quasi-uniform partitions draw from derive_seed(seed, N).
[[nodiscard]] Partition make_partition(const PartitionSpec &spec, std::size_t n);

struct SweepConfig {
    ProcessSpec process = GaussianProcess{Kernel::brownian_motion()};
    Kernel model = Kernel::brownian_motion();
    std::vector<EstimatorSpec> estimators{{EstimatorKind::CV}, {EstimatorKind::ML}};
    bool quadratic_variation = false;
    std::vector<std::size_t> ns;
    std::size_t replications = 100;
    std::uint64_t seed = 0;
    PartitionSpec partition{};
    SamplerOptions sampler{};
    std::size_t jobs = 0;  // 0: hardware concurrency
    std::size_t drop_smallest = 1;
    SummaryStatistic statistic = SummaryStatistic::Median;
};

struct SweepRow {
    std::size_t n;
    std::size_t replication;
    std::string quantity;  // estimator name or "qv"
    double value;
};

struct SweepSummary {
    std::string quantity;
    std::size_t n;
    double median;
    double mean;
    double se;
    std::size_t count;
};

struct QuantityFit {
    std::string quantity;
    std::optional<RateFit> fit;  // empty when the series cannot be fitted
    std::string note;
};

struct SweepResult {
    std::vector<SweepRow> raw;
    std::vector<SweepSummary> summary;
    std::vector<QuantityFit> fits;
};

/// Replication r at size N draws from derive_seed(seed, N, r), so results do
/// not depend on `jobs`.
[[nodiscard]] SweepResult rate_sweep(const SweepConfig &config);

// Calibration ------------------------------------------------------------------

/// Fractions j/(G+1), j = 1..G, of every cell. Passing 2G+1 refines the grid
/// while keeping every old point.
[[nodiscard]] std::vector<double> calibration_grid(const Partition &p, std::size_t per_cell);

struct CalibrationReport {
    std::size_t n = 0;
    std::string estimator;
    std::string source;  // "closed-form", "stencil" or "monte-carlo"
    std::vector<double> grid;
    std::vector<double> numerator;    // E[f(x) - m_N(x)]²
    std::vector<double> denominator;  // E σ̂² · k_N(x)
    std::vector<double> ratio;
    double expected_sigma2 = 0.0;
    double sup = 0.0;
    double sup_x = 0.0;
    /// Monte-Carlo standard error of the ratio at sup_x (monte-carlo source only).
    std::optional<double> sup_se;
};

[[nodiscard]] CalibrationReport calibration_report(const Kernel &truth, const Partition &p,
                                                   const EstimatorSpec &estimator, std::size_t per_cell = 3);

/// Monte-Carlo version: samples the truth jointly at the partition and grid.
[[nodiscard]] CalibrationReport calibration_report_mc(const Kernel &truth, const Partition &p,
                                                      const EstimatorSpec &estimator, std::size_t per_cell,
                                                      std::size_t replications, std::uint64_t seed,
                                                      std::size_t jobs = 0);

struct CalibrationConfig {
    Kernel truth = Kernel::brownian_motion();
    std::vector<EstimatorSpec> estimators{{EstimatorKind::CV}, {EstimatorKind::ML}};
    std::vector<std::size_t> ns;
    PartitionSpec partition{};
    std::size_t per_cell = 3;
    /// 0 uses the exact expectations; otherwise Monte-Carlo with this many paths.
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    std::size_t drop_smallest = 1;
};

struct CalibrationSweep {
    std::vector<CalibrationReport> reports;
    std::vector<QuantityFit> fits;  // exponent of sup_x R^E against N
};

[[nodiscard]] CalibrationSweep calibration_sweep(const CalibrationConfig &config);

/// Runs `count` independent tasks on up to `jobs` threads (0: hardware).
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)> &task);

} // namespace gpsc
