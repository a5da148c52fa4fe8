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

#include <cmath>
#include <stdexcept>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "gpsc/posterior.hpp"
#include "gpsc/rng.hpp"

using namespace gpsc;

TEST_SUITE("gp") {

TEST_CASE("reference values") {
    const Partition p(2.0, {1.0, 2.0});
    const Posterior post(p, {1.0, 3.0});
    CHECK(post.mean(1.5) == doctest::Approx(2.0));
    CHECK(post.variance(1.5) == doctest::Approx(0.25));
    CHECK(post.variance(1.0) == 0.0);
    CHECK(post.variance(2.0) == 0.0);
    CHECK(post.mean(0.5) == doctest::Approx(0.5));
    CHECK(post.variance(0.0) == 0.0);

    const Partition q = Partition::unanchored(4.0, {1.0, 2.0});
    const Posterior tail(q, {1.0, 3.0});
    CHECK(tail.mean(3.0) == 3.0);
    CHECK(tail.with_scale(2.0).variance(3.0) == doctest::Approx(2.0));
    CHECK(tail.mean(4.0) == 3.0);
}

TEST_CASE("closed form equals the dense Gram solve") {
    Rng rng(31);
    for (std::size_t n : {1u, 2u, 7u, 33u}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto p0 = fixture::random_partition(n, s + 10 * n, 2.0);
            const Partition p = s % 2 ? Partition::unanchored(3.0, std::vector<double>(p0.points().begin(), p0.points().end())) : p0;
            const auto f = fixture::random_values(n, s);
            const Posterior cf(p, f);
            const Posterior gen(Kernel::brownian_motion(), p, f);
            for (int t = 0; t < 100; ++t) {
                const double x = rng.uniform(0.0, p.domain_length());
                const auto ref = oracle::dense_posterior(Kernel::brownian_motion(), p.points(), f, x);
                REQUIRE(std::abs(cf.mean(x) - ref.mean) <= 1e-9);
                REQUIRE(std::abs(cf.variance(x) - ref.var) <= 1e-9);
                REQUIRE(std::abs(cf.mean(x) - gen.mean(x)) <= 1e-9);
                REQUIRE(std::abs(cf.variance(x) - gen.variance(x)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("interpolation at data points for every kernel") {
    const auto p = fixture::random_partition(12, 4);
    const auto f = fixture::random_values(12, 4);
    const Kernel kernels[] = {Kernel::brownian_motion(), Kernel::fbm(0.3), Kernel::integrated_fbm(0.6),
                              Kernel::ornstein_uhlenbeck(2.0), Kernel::matern(1.5, 0.5)};
    for (const auto &k : kernels) {
        const Posterior post(k, p, f);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(post.mean(p[i]) == doctest::Approx(f[i]).epsilon(1e-7));
            CHECK(post.variance(p[i]) <= 1e-9);
        }
    }
    const Posterior cf(p, f);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(cf.mean(p[i]) == f[i]);
        CHECK(cf.variance(p[i]) == 0.0);
    }
}

TEST_CASE("scale changes the variance only") {
    const auto p = fixture::random_partition(9, 6);
    const auto f = fixture::random_values(9, 6);
    for (bool generic : {false, true}) {
        const Posterior a = generic ? Posterior(Kernel::fbm(0.4), p, f) : Posterior(p, f);
        const Posterior b = a.with_scale(3.5);
        Rng rng(8);
        for (int t = 0; t < 50; ++t) {
            const double x = rng.uniform(0.0, 1.0);
            CHECK(b.mean(x) == a.mean(x));
            CHECK(b.variance(x) == doctest::Approx(3.5 * a.variance(x)).epsilon(1e-14));
            CHECK(a.variance(x) >= 0.0);
        }
    }
}

TEST_CASE("query domain") {
    const Posterior post(equispaced(4, 1.0), {1, 2, 3, 4});
    CHECK_THROWS_AS((void)post.mean(-0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)post.variance(1.1), std::invalid_argument);
    CHECK_THROWS_AS(Posterior(equispaced(4, 1.0), {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Posterior(equispaced(4, 1.0), {1, 2, 3, 4}, 0.0), std::invalid_argument);
}

TEST_CASE("leave-one-out closed form") {
    SUBCASE("equal gaps") {
        const auto p = equispaced(6, 1.5);
        const std::vector<double> f{1, 2, 3, 4, 5, 6};
        for (std::size_t n = 1; n < 6; ++n) CHECK(loo_mean_var(p, f, n).variance == doctest::Approx(0.125));
        const auto last = loo_mean_var(p, f, 6);
        CHECK(last.mean == 5.0);
        CHECK(last.variance == doctest::Approx(0.25));
    }
    SUBCASE("matches refits on the remaining points") {
        for (std::uint64_t s = 0; s < 30; ++s) {
            const std::size_t N = 2 + s % 15;
            const auto p = fixture::random_partition(N, s);
            const auto f = fixture::random_values(N, s);
            for (std::size_t n = 1; n <= N; ++n) {
                std::vector<double> xs;
                std::vector<double> fs;
                for (std::size_t i = 0; i < N; ++i) {
                    if (i + 1 == n) continue;
                    xs.push_back(p[i]);
                    fs.push_back(f[i]);
                }
                const auto ref = oracle::dense_posterior(Kernel::brownian_motion(), xs, fs, p.x(n));
                const auto got = loo_mean_var(p, f, n);
                REQUIRE(std::abs(got.mean - ref.mean) <= 1e-9);
                REQUIRE(std::abs(got.variance - ref.var) <= 1e-9);
            }
        }
    }
    CHECK_THROWS_AS((void)loo_mean_var(equispaced(1, 1.0), std::vector<double>{1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)loo_mean_var(equispaced(3, 1.0), std::vector<double>{1, 2, 3}, 0), std::invalid_argument);
}

}
