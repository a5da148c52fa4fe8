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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "gpsc/analysis.hpp"
#include "gpsc/rng.hpp"
#include "gpsc/sampling.hpp"

using namespace gpsc;

namespace {

// Entrywise empirical covariance over M draws compared at `nse` standard errors.
void check_covariance(const ProcessSpec &process, const Kernel &k, const Partition &p, std::size_t M, double nse,
                      SamplerOptions opts = {}) {
    const Sampler s(process, p, opts);
    const auto N = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t r = 0; r < M; ++r) {
        const auto path = s.draw(derive_seed(77, r));
        const Eigen::Map<const Eigen::VectorXd> v(path.values.data(), N);
        acc += v * v.transpose();
    }
    acc /= static_cast<double>(M);
    const Eigen::MatrixXd K = oracle::dense_gram(k, p.points());
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            const double se = std::sqrt((K(i, i) * K(j, j) + K(i, j) * K(i, j)) / static_cast<double>(M));
            CAPTURE(i);
            CAPTURE(j);
            REQUIRE(std::abs(acc(i, j) - K(i, j)) <= nse * se);
        }
    }
}

} // namespace

TEST_SUITE("sampling") {

TEST_CASE("same seed gives bit-identical paths") {
    const auto p = fixture::random_partition(40, 2);
    for (const char *spec : {"bm", "fbm:0.2", "ifbm:0.75", "ou:0.2", "matern:1.5", "iifbm:0.5:4", "sine-step",
                             "matern-comb:1"}) {
        const auto proc = parse_process(spec);
        const auto a = sample(proc, p, 99);
        const auto b = sample(proc, p, 99);
        CHECK(a.values == b.values);
        CHECK(a.provenance.seed == 99);
        CHECK(a.provenance.process == describe(proc));
        CHECK_FALSE(sample(proc, p, 100).values == a.values);
    }
}

TEST_CASE("FBM with H = 1/2 reproduces the Brownian-motion draw") {
    const auto p = fixture::random_partition(30, 8);
    const auto a = sample_gp(Kernel::fbm(0.5), p, 5);
    const auto b = sample_gp(Kernel::brownian_motion(), p, 5);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
}

TEST_CASE("marginal variances") {
    SUBCASE("Brownian motion, N = 16") {
        const auto p = equispaced(16, 1.0);
        const Sampler s(GaussianProcess{Kernel::brownian_motion()}, p);
        std::vector<double> ss(16, 0.0);
        const std::size_t M = 5000;
        for (std::size_t r = 0; r < M; ++r) {
            const auto path = s.draw(derive_seed(3, r));
            for (std::size_t i = 0; i < 16; ++i) ss[i] += path.values[i] * path.values[i];
        }
        for (std::size_t i = 0; i < 16; ++i) CHECK(ss[i] / M == doctest::Approx(p[i]).epsilon(0.05));
    }
    SUBCASE("Ornstein-Uhlenbeck at T = 1") {
        const auto p = equispaced(8, 1.0);
        const Sampler s(GaussianProcess{Kernel::ornstein_uhlenbeck(0.2)}, p);
        double ss = 0.0;
        const std::size_t M = 5000;
        for (std::size_t r = 0; r < M; ++r) {
            const double v = s.draw(derive_seed(4, r)).values.back();
            ss += v * v;
        }
        CHECK(ss / M == doctest::Approx((1.0 - std::exp(-0.4)) / 4.0).epsilon(0.05));
    }
}

TEST_CASE("empirical covariance matches the Gram matrix") {
    const auto p = fixture::random_partition(8, 21);
    const Kernel kernels[] = {Kernel::brownian_motion(), Kernel::fbm(0.2), Kernel::fbm(0.8),
                              Kernel::integrated_fbm(0.25), Kernel::integrated_fbm(0.75),
                              Kernel::ornstein_uhlenbeck(0.2), Kernel::matern(0.5), Kernel::matern(2.5)};
    for (const auto &k : kernels) {
        CAPTURE(k.describe());
        check_covariance(GaussianProcess{k}, k, p, 5000, 4.0);
    }
}

TEST_CASE("integrated FBM agrees with trapezoid-integrated FBM") {
    const auto p = equispaced(1, 1.0);
    for (double h : {0.25, 0.5, 0.75}) {
        const auto grid = refined_grid(p, 64);
        // Variance of the trapezoid functional of an exact FBM path.
        Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
        double prev = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double d = grid[j] - prev;
            w(static_cast<Eigen::Index>(j)) += 0.5 * d;
            if (j > 0) w(static_cast<Eigen::Index>(j - 1)) += 0.5 * d;
            prev = grid[j];
        }
        const Eigen::MatrixXd K = oracle::dense_gram(Kernel::fbm(h), grid);
        const double trap = w.dot(K * w);
        CHECK(Kernel::integrated_fbm(h)(1.0, 1.0) == doctest::Approx(trap).epsilon(0.02));
    }
}

TEST_CASE("iterated integration") {
    SUBCASE("zero at the origin and monotone for nonnegative integrands") {
        const auto p = equispaced(5, 1.0);
        const auto grid = refined_grid(p, 8);
        REQUIRE(grid.size() == 40);
        CHECK(grid[7] == doctest::Approx(p[0]));
        CHECK(grid.back() == 1.0);
        const auto g = sample_gp(Kernel::integrated_fbm(0.5), Partition::unanchored(1.0, grid), 3).values;
        std::vector<double> absg(g.size());
        std::transform(g.begin(), g.end(), absg.begin(), [](double v) { return std::abs(v); });
        const auto fine = cumulative_trapezoid(grid, absg, 1);
        CHECK(fine.front() == doctest::Approx(0.5 * grid[0] * absg[0]));
        CHECK(std::is_sorted(fine.begin(), fine.end()));
        const auto coarse = cumulative_trapezoid(grid, absg, 8);
        REQUIRE(coarse.size() == 5);
        CHECK(coarse.back() == fine.back());

        const auto tiny = sample_iifbm(0.5, equispaced(64, 1e-6), 4, 9);
        CHECK(std::abs(tiny.values.front()) < 1e-15);
    }
    SUBCASE("refinement bias decays at second order or faster") {
        const auto p = equispaced(8, 1.0);
        const std::size_t R0 = 4;
        for (double h : {0.5, 0.75}) {
            const auto grid = refined_grid(p, 4 * R0);
            const GramMatrix g(Kernel::integrated_fbm(h), grid);
            double d1 = 0.0;
            double d2 = 0.0;
            for (std::uint64_t s = 0; s < 20; ++s) {
                std::vector<double> z(grid.size());
                Rng rng(derive_seed(55, s));
                rng.fill_normal(z);
                const Eigen::VectorXd gv = g.correlate(z);
                auto at_stride = [&](std::size_t k) {
                    std::vector<double> sx;
                    std::vector<double> sg;
                    for (std::size_t j = k - 1; j < grid.size(); j += k) {
                        sx.push_back(grid[j]);
                        sg.push_back(gv(static_cast<Eigen::Index>(j)));
                    }
                    return cumulative_trapezoid(sx, sg, 4 * R0 / k);
                };
                const auto a = at_stride(4);  // R0
                const auto b = at_stride(2);  // 2 R0
                const auto c = at_stride(1);  // 4 R0
                for (std::size_t n = 0; n < p.size(); ++n) {
                    d1 += (a[n] - b[n]) * (a[n] - b[n]);
                    d2 += (b[n] - c[n]) * (b[n] - c[n]);
                }
            }
            const double order = 0.5 * std::log2(d1 / d2);
            CAPTURE(h);
            CHECK(order >= 1.8);
        }
    }
}

TEST_CASE("sine-step function") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const double x0 = sine_step_jump(s);
        REQUIRE(x0 >= 0.0);
        REQUIRE(x0 <= 1.0);
    }
    const Partition p = Partition::unanchored(1.0, {0.4, 0.6});
    const auto f = sine_step_with_jump(p, 0.5);
    CHECK(f.values[1] - f.values[0] == doctest::Approx(std::sin(6.0) - std::sin(4.0) + 1.0).epsilon(1e-14));
    CHECK(quadratic_variation(sample_sine_step(equispaced(4096, 1.0), 3)) == doctest::Approx(1.0).epsilon(0.02));
    CHECK_THROWS_AS((void)sample_sine_step(equispaced(4, 2.0), 1), std::invalid_argument);
}

TEST_CASE("Matérn combination interpolates its centres") {
    const MaternCombination spec{0.5, 1.0, 10};
    const auto ref = sample_matern_combination(spec, equispaced(16, 1.0), 4);
    CHECK(ref.values.size() == 16);
    // Rebuild the centres from the same stream and evaluate there.
    Rng rng(4);
    std::vector<std::pair<double, double>> zy(10);
    for (auto &c : zy) {
        c.first = rng.uniform();
        c.second = rng.uniform();
    }
    std::sort(zy.begin(), zy.end());
    std::vector<double> zs;
    for (auto &c : zy) zs.push_back(c.first);
    const auto at = sample_matern_combination(spec, Partition::unanchored(1.0, zs), 4);
    for (std::size_t i = 0; i < zs.size(); ++i) CHECK(at.values[i] == doctest::Approx(zy[i].second).epsilon(1e-8));
}

TEST_CASE("circulant embedding matches Cholesky in law") {
    const auto p = equispaced(8, 1.0);
    for (double h : {0.2, 0.5, 0.8}) {
        CAPTURE(h);
        check_covariance(GaussianProcess{Kernel::fbm(h)}, Kernel::fbm(h), p, 5000, 4.0, {4096, true});
    }
    SUBCASE("endpoint variance at N = 2048") {
        const Sampler s(GaussianProcess{Kernel::fbm(0.3)}, equispaced(2048, 1.0), {4096, true});
        REQUIRE(s.uses_circulant());
        std::vector<double> v(2000);
        for (std::size_t r = 0; r < v.size(); ++r) v[r] = std::pow(s.draw(derive_seed(12, r)).values.back(), 2);
        const auto ms = mean_se(v);
        CHECK(std::abs(ms.mean - 1.0) <= 4.0 * ms.se);
    }
    CHECK_THROWS_AS(Sampler(GaussianProcess{Kernel::ornstein_uhlenbeck(1.0)}, p, {4096, true}), std::invalid_argument);
    CHECK_THROWS_AS(Sampler(GaussianProcess{Kernel::fbm(0.3)}, fixture::random_partition(8, 1), {4096, true}),
                    std::invalid_argument);
}

TEST_CASE("process specs and smoothness labels") {
    CHECK(smoothness(parse_process("fbm:0.3"))->l == 0);
    CHECK(smoothness(parse_process("ifbm:0.3"))->l == 1);
    CHECK(smoothness(parse_process("iifbm:0.3"))->l == 2);
    CHECK(smoothness(parse_process("bm"))->alpha == 0.5);
    CHECK_FALSE(smoothness(parse_process("sine-step")).has_value());
    CHECK(describe(parse_process("iifbm:0.25:8")) == "iifbm:0.25:8");
    CHECK_THROWS_AS((void)parse_process("iifbm:1.5"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_process("sine-step:2"), std::invalid_argument);
    CHECK_THROWS_AS(Sampler(GaussianProcess{Kernel::brownian_motion()}, equispaced(20, 1.0), {10, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)make_sample(equispaced(3, 1.0), {1.0, 2.0}), std::invalid_argument);
}

}
