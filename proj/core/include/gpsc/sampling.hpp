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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpsc/gram.hpp"
#include "gpsc/kernel.hpp"
#include "gpsc/partition.hpp"

namespace gpsc {

/// Hölder smoothness label f ∈ C^{l, α}.
struct Smoothness {
    int l;
    double alpha;
};

struct Provenance {
    std::string process;  // process spec string, e.g. "ifbm:0.25"
    std::uint64_t seed = 0;
    std::optional<Smoothness> smoothness;
};

/// Function values f_1..f_N at the partition points; f(0) = 0 is implicit.
struct PathSample {
    Partition partition;
    std::vector<double> values;
    Provenance provenance;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    /// f_n with the 1-based convention, f_0 = 0.
    [[nodiscard]] double f(std::size_t n) const { return n == 0 ? 0.0 : values[n - 1]; }
};

/// Builds a sample from raw data; validates the lengths agree.
[[nodiscard]] PathSample make_sample(Partition partition, std::vector<double> values, Provenance provenance = {});

// Test-function generators ------------------------------------------------

/// Zero-mean GP with the given kernel (BM, OU, FBM, iFBM, Matérn).
struct GaussianProcess {
    Kernel kernel;
};

/// Twice-integrated FBM: iFBM sampled exactly on an R-fold refinement of the
/// partition, then integrated once more with the cumulative trapezoid rule.
struct TwiceIntegratedFbm {
    double hurst;
    std::size_t refinement = 16;
};

/// sin(10x) + [x > x0] with x0 ~ Uniform[0, 1]; T must be 1.
struct SineStep {};

/// f = Σ_i α_i k_ν(·, z_i): the posterior mean of a unit Matérn(ν) GP
/// conditioned on `terms` points (z_i, y_i) drawn uniformly from [0, 1]².
struct MaternCombination {
    double nu;
    double length_scale = 1.0;
    std::size_t terms = 10;
};

using ProcessSpec = std::variant<GaussianProcess, TwiceIntegratedFbm, SineStep, MaternCombination>;

/// Accepts every kernel spec plus "iifbm:H[:R]", "sine-step" and
/// "matern-comb:ν[:ρ[:m]]".
[[nodiscard]] ProcessSpec parse_process(std::string_view spec);
[[nodiscard]] std::string describe(const ProcessSpec &process);
/// Almost-sure smoothness of the paths when it is known.
[[nodiscard]] std::optional<Smoothness> smoothness(const ProcessSpec &process);

struct SamplerOptions {
    /// Largest Gram matrix the Cholesky backend will factorize.
    std::size_t max_cholesky = 4096;
    /// Use circulant embedding for FBM/BM on equispaced partitions.
    bool circulant = false;
};

/// Draws replications of one process on one partition. Factorizations are
/// computed once at construction and shared by every draw, so `draw` is
/// const and safe to call concurrently.
class Sampler {
public:
    Sampler(ProcessSpec process, Partition partition, SamplerOptions options = {});

    [[nodiscard]] PathSample draw(std::uint64_t seed) const;
    [[nodiscard]] const ProcessSpec &process() const noexcept { return process_; }
    [[nodiscard]] const Partition &partition() const noexcept { return partition_; }
    [[nodiscard]] bool uses_circulant() const noexcept { return circulant_ != nullptr; }

private:
    struct Circulant;

    ProcessSpec process_;
    Partition partition_;
    std::vector<double> fine_grid_;  // refined grid for twice-integrated FBM
    std::shared_ptr<const GramMatrix> factor_;
    std::shared_ptr<const Circulant> circulant_;
};

/// values = L·z with L the Cholesky factor of k(x, x) and z ~ N(0, I) from `seed`.
[[nodiscard]] PathSample sample_gp(const Kernel &kernel, const Partition &p, std::uint64_t seed);

[[nodiscard]] PathSample sample_iifbm(double hurst, const Partition &p, std::size_t refinement, std::uint64_t seed);

[[nodiscard]] PathSample sample_sine_step(const Partition &p, std::uint64_t seed);
/// Same function with a fixed jump location (test hook).
[[nodiscard]] PathSample sine_step_with_jump(const Partition &p, double jump);
[[nodiscard]] double sine_step_jump(std::uint64_t seed);

[[nodiscard]] PathSample sample_matern_combination(const MaternCombination &spec, const Partition &p,
                                                   std::uint64_t seed);

/// One-shot convenience wrapper around Sampler.
[[nodiscard]] PathSample sample(const ProcessSpec &process, const Partition &p, std::uint64_t seed,
                                SamplerOptions options = {});

/// Exact FBM(H) values at nΔ, n = 1..N, via circulant embedding of the
/// fractional Gaussian noise autocovariance (Davies-Harte).
[[nodiscard]] std::vector<double> sample_fbm_circulant(double hurst, std::size_t n, double domain_length,
                                                       std::uint64_t seed);

/// Each cell [x_{n-1}, x_n] split into `refinement` equal subcells; the
/// returned grid excludes 0 and contains every partition point.
[[nodiscard]] std::vector<double> refined_grid(const Partition &p, std::size_t refinement);

/// Cumulative trapezoid integral of g on (0, grid...), g(0) = 0, sampled
/// back at every `stride`-th grid point.
[[nodiscard]] std::vector<double> cumulative_trapezoid(std::span<const double> grid, std::span<const double> g,
                                                       std::size_t stride = 1);

} // namespace gpsc
