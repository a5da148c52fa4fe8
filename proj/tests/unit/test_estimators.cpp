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
#include "gpsc/estimators.hpp"

using namespace gpsc;

namespace {

std::vector<double> scaled(std::vector<double> v, double c) {
    for (auto &x : v) x *= c;
    return v;
}

} // namespace

TEST_SUITE("estimators") {

TEST_CASE("maximum likelihood") {
    const Partition one(1.0, {1.0});
    CHECK(sigma_ml_bm(one, std::vector<double>{2.0}).value == 4.0);

    for (std::uint64_t s = 0; s < 500; ++s) {
        const std::size_t N = 1 + s % 64;
        const auto p = fixture::random_partition(N, s, 1.0 + static_cast<double>(s % 3));
        const auto f = fixture::random_values(N, s);
        const double ref = oracle::dense_ml(Kernel::brownian_motion(), p.points(), f);
        REQUIRE(std::abs(sigma_ml_bm(p, f).value - ref) <= 1e-9 * std::max(1.0, ref));
    }
}

TEST_CASE("leave-one-out closed form against refits") {
    for (std::uint64_t s = 0; s < 500; ++s) {
        const std::size_t N = 2 + s % 31;
        const auto p = fixture::random_partition(N, 7000 + s);
        const auto f = fixture::random_values(N, s);
        const auto cv = sigma_cv_bm(p, f);
        const double ref = oracle::refit_loo_cv(Kernel::brownian_motion(), p.points(), f);
        REQUIRE(std::abs(cv.value - ref) <= 1e-9 * std::max(1.0, ref));
        REQUIRE(cv.decomposition.has_value());
        REQUIRE(std::abs(cv.decomposition->total() - cv.value) <= 1e-10 * std::max(1.0, cv.value));
        REQUIRE(cv.value >= 0.0);
    }
}

TEST_CASE("linear and quadratic data") {
    for (std::size_t N : {3u, 8u, 50u}) {
        const auto p = equispaced(N, 1.0);
        const double d = 1.0 / static_cast<double>(N);
        std::vector<double> lin(N);
        std::vector<double> quad(N);
        for (std::size_t i = 0; i < N; ++i) {
            lin[i] = p[i];
            quad[i] = p[i] * p[i];
        }
        const auto cv = sigma_cv_bm(p, lin);
        CHECK(cv.decomposition->interior == doctest::Approx(0.0).scale(1.0));
        CHECK(cv.decomposition->b1 == doctest::Approx(0.0).scale(1.0));
        CHECK(cv.value == doctest::Approx(1.0 / static_cast<double>(N * N)).epsilon(1e-12));

        // Every interior second difference is 2Δ², giving a term of 2Δ³.
        const double expected = static_cast<double>(N - 2) * 2.0 * d * d * d / static_cast<double>(N);
        const double icv = sigma_icv_bm(p, quad).value;
        CHECK(icv == doctest::Approx(expected).epsilon(1e-10));
        CHECK(icv == sigma_cv_bm(p, quad).decomposition->interior);
    }
}

TEST_CASE("interior estimator") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t N = 3 + s % 20;
        const auto p = fixture::random_partition(N, s);
        const auto f = fixture::random_values(N, s);
        CHECK(sigma_icv_bm(p, f).value == sigma_cv_bm(p, f).decomposition->interior);
        const auto normalized = sigma_icv_bm(p, f, {1, true}).value;
        CHECK(normalized == doctest::Approx(sigma_icv_bm(p, f).value * static_cast<double>(N) /
                                            static_cast<double>(N - 2)));
        CHECK(sigma_icv_generic(Kernel::brownian_motion(), p, f).value ==
              doctest::Approx(sigma_icv_bm(p, f).value).epsilon(1e-9));
    }
    SUBCASE("trimming drops points from both ends") {
        const auto p = fixture::random_partition(11, 2);
        const auto f = fixture::random_values(11, 2);
        const auto t1 = sigma_icv_bm(p, f, {1, true}).value * 9.0;
        const auto t2 = sigma_icv_bm(p, f, {2, true}).value * 7.0;
        const auto t3 = sigma_icv_bm(p, f, {3, true}).value * 5.0;
        CHECK(t1 >= t2);
        CHECK(t2 >= t3);
        CHECK(sigma_icv_generic(Kernel::brownian_motion(), p, f, {3, false}).value ==
              doctest::Approx(sigma_icv_bm(p, f, {3, false}).value).epsilon(1e-9));
        CHECK_THROWS_AS((void)sigma_icv_bm(p, f, {6, false}), std::invalid_argument);
        CHECK_THROWS_AS((void)sigma_icv_bm(p, f, {0, false}), std::invalid_argument);
    }
}

TEST_CASE("leave-p-out") {
    SUBCASE("p = 1 is leave-one-out") {
        for (std::uint64_t s = 0; s < 40; ++s) {
            const std::size_t N = 2 + s % 20;
            const auto p = fixture::random_partition(N, s);
            const auto f = fixture::random_values(N, s);
            CHECK(sigma_lpo(p, f, 1).value == doctest::Approx(sigma_cv_bm(p, f).value).epsilon(1e-12));
        }
    }
    SUBCASE("explicit equals bruteforce for every p") {
        for (std::size_t N = 1; N <= 10; ++N) {
            for (std::uint64_t s = 0; s < 3; ++s) {
                const auto p = fixture::random_partition(N, 40 * N + s);
                const auto f = fixture::random_values(N, s + 1);
                for (std::size_t q = 1; q <= N; ++q) {
                    const double e = sigma_lpo(p, f, q).value;
                    const double b = sigma_lpo(p, f, q, {LpoMode::Bruteforce}).value;
                    CAPTURE(N);
                    CAPTURE(q);
                    REQUIRE(std::abs(e - b) <= 1e-9 * std::max(1.0, b));
                }
            }
        }
    }
    SUBCASE("p = N predicts from the prior") {
        for (std::size_t N : {1u, 4u, 9u}) {
            const auto p = fixture::random_partition(N, N);
            const auto f = fixture::random_values(N, N);
            double ref = 0.0;
            for (std::size_t i = 0; i < N; ++i) ref += f[i] * f[i] / p[i];
            ref /= static_cast<double>(N);
            CHECK(sigma_lpo(p, f, N).value == doctest::Approx(ref).epsilon(1e-12));
            CHECK(sigma_lpo(p, f, N, {LpoMode::Bruteforce}).value == doctest::Approx(ref).epsilon(1e-10));
        }
    }
    SUBCASE("guards") {
        const auto p = equispaced(15, 1.0);
        const auto f = fixture::random_values(15, 1);
        CHECK_THROWS_AS((void)sigma_lpo(p, f, 2, {LpoMode::Bruteforce}), std::invalid_argument);
        CHECK_NOTHROW((void)sigma_lpo(p, f, 1, {LpoMode::Bruteforce, true}));
        CHECK_THROWS_AS((void)sigma_lpo(p, f, 0), std::invalid_argument);
        CHECK_THROWS_AS((void)sigma_lpo(p, f, 16), std::invalid_argument);
        CHECK_THROWS_AS((void)verify_ml_lpo_identity(Kernel::brownian_motion(), equispaced(13, 1.0),
                                                     fixture::random_values(13, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("maximum likelihood is the average of leave-p-out estimators") {
    for (std::size_t N = 2; N <= 12; ++N) {
        const auto p = fixture::random_partition(N, 3 * N);
        const auto f = fixture::random_values(N, N);
        const PathSample s = make_sample(p, f);
        const double ml = sigma_ml_bm(s).value;
        REQUIRE(verify_ml_lpo_identity(s) <= 1e-9 * std::max(1.0, ml));
        double avg = 0.0;
        for (std::size_t q = 1; q <= N; ++q) avg += sigma_lpo(p, f, q).value;
        REQUIRE(std::abs(avg / static_cast<double>(N) - ml) <= 1e-9 * std::max(1.0, ml));
    }
    SUBCASE("two points by hand") {
        const Partition p(1.0, {0.4, 1.0});
        const std::vector<double> f{0.7, -0.2};
        CHECK(verify_ml_lpo_identity(Kernel::brownian_motion(), p, f) <= 1e-12);
    }
    SUBCASE("any kernel") {
        const Kernel k = Kernel::fbm(0.3);
        for (std::size_t N : {3u, 6u, 9u}) {
            const auto p = fixture::random_partition(N, N + 100);
            const auto f = fixture::random_values(N, N + 100);
            CHECK(verify_ml_lpo_identity(k, p, f) <= 1e-9 * std::max(1.0, sigma_ml_generic(k, p, f).value));
        }
    }
}

TEST_CASE("generic kernels") {
    SUBCASE("Brownian motion reproduces the closed forms") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const std::size_t N = 2 + s % 31;
            const auto p = fixture::random_partition(N, s);
            const auto f = fixture::random_values(N, s);
            const auto bm = Kernel::brownian_motion();
            CHECK(sigma_ml_generic(bm, p, f).value == doctest::Approx(sigma_ml_bm(p, f).value).epsilon(1e-9));
            const auto g = sigma_cv_generic(bm, p, f);
            const auto c = sigma_cv_bm(p, f);
            CHECK(g.value == doctest::Approx(c.value).epsilon(1e-9));
            CHECK(g.decomposition->b1 == doctest::Approx(c.decomposition->b1).epsilon(1e-9).scale(1e-12));
            CHECK(g.decomposition->b2 == doctest::Approx(c.decomposition->b2).epsilon(1e-9).scale(1e-12));
        }
    }
    SUBCASE("LOO shortcut against explicit refits") {
        const Kernel kernels[] = {Kernel::fbm(0.3), Kernel::integrated_fbm(0.5), Kernel::ornstein_uhlenbeck(1.0),
                                  Kernel::matern(0.5), Kernel::matern(1.0), Kernel::matern(2.5, 0.3)};
        for (const auto &k : kernels) {
            for (std::uint64_t s = 0; s < 5; ++s) {
                const auto p = fixture::random_partition(6 + 3 * s, s);
                const auto f = fixture::random_values(p.size(), s);
                const double ref = oracle::refit_loo_cv(k, p.points(), f);
                CAPTURE(k.describe());
                CHECK(sigma_cv_generic(k, p, f).value == doctest::Approx(ref).epsilon(1e-7));
            }
        }
    }
    SUBCASE("Matérn 1/2 by hand") {
        const Partition p(1.0, {0.1, 0.35, 0.5, 0.8, 1.0});
        const std::vector<double> f{0.3, -0.1, 0.4, 0.9, 0.2};
        Eigen::MatrixXd K(5, 5);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) K(i, j) = std::exp(-std::abs(p[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(j)]));
        }
        const Eigen::Map<const Eigen::VectorXd> fv(f.data(), 5);
        const Eigen::MatrixXd inv = K.inverse();
        const double ml = fv.dot(inv * fv) / 5.0;
        const Eigen::VectorXd a = inv * fv;
        double cv = 0.0;
        for (int i = 0; i < 5; ++i) cv += a(i) * a(i) / inv(i, i);
        cv /= 5.0;
        CHECK(sigma_ml_generic(Kernel::matern(0.5), p, f).value == doctest::Approx(ml).epsilon(1e-10));
        CHECK(sigma_cv_generic(Kernel::matern(0.5), p, f).value == doctest::Approx(cv).epsilon(1e-10));
    }
    SUBCASE("scaled kernel divides the estimate") {
        const auto p = fixture::random_partition(10, 4);
        const auto f = fixture::random_values(10, 4);
        const Kernel k = Kernel::matern(1.5);
        CHECK(sigma_ml_generic(k.scaled(4.0), p, f).value ==
              doctest::Approx(sigma_ml_generic(k, p, f).value / 4.0).epsilon(1e-12));
        CHECK(sigma_cv_generic(k.scaled(4.0), p, f).value ==
              doctest::Approx(sigma_cv_generic(k, p, f).value / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("quadratic scale equivariance") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const std::size_t N = 3 + s % 9;
        const auto p = fixture::random_partition(N, s);
        const auto f = fixture::random_values(N, s);
        const double c = 0.3 + static_cast<double>(s);
        const auto g = scaled(f, c);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
        CHECK(rel(sigma_ml_bm(p, g).value, c * c * sigma_ml_bm(p, f).value) <= 1e-12);
        CHECK(rel(sigma_cv_bm(p, g).value, c * c * sigma_cv_bm(p, f).value) <= 1e-12);
        CHECK(rel(sigma_icv_bm(p, g).value, c * c * sigma_icv_bm(p, f).value) <= 1e-12);
        for (std::size_t q = 1; q <= N; ++q) CHECK(rel(sigma_lpo(p, g, q).value, c * c * sigma_lpo(p, f, q).value) <= 1e-12);
    }
}

TEST_CASE("argument checks and specs") {
    CHECK_THROWS_AS((void)sigma_cv_bm(equispaced(1, 1.0), std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)sigma_icv_bm(equispaced(2, 1.0), std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)sigma_ml_bm(equispaced(3, 1.0), std::vector<double>{1.0}), std::invalid_argument);
    CHECK(parse_estimator("lpo:3").p == 3);
    CHECK(describe(parse_estimator("icv")) == "icv");
    CHECK(describe(parse_estimator("lpo:2")) == "lpo:2");
    CHECK_THROWS_AS((void)parse_estimator("mle"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_estimator("lpo:0"), std::invalid_argument);

    const auto p = fixture::random_partition(7, 1);
    const auto f = fixture::random_values(7, 1);
    CHECK(estimate({EstimatorKind::CV}, Kernel::brownian_motion(), p, f).value == sigma_cv_bm(p, f).value);
    CHECK(estimate({EstimatorKind::ML}, Kernel::fbm(0.3), p, f).value == sigma_ml_generic(Kernel::fbm(0.3), p, f).value);
}

}
