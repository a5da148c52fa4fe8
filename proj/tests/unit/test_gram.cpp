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

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "gpsc/error.hpp"
#include "gpsc/gram.hpp"

using namespace gpsc;

TEST_SUITE("kernels") {

TEST_CASE("Brownian-motion Gram on (1, 2, 3)") {
    const Partition p(3.0, {1.0, 2.0, 3.0});
    const auto g = gram(Kernel::brownian_motion(), p);
    Eigen::Matrix3d expected;
    expected << 1, 1, 1, 1, 2, 2, 1, 2, 3;
    CHECK((g.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.lower() * g.lower().transpose() - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("FBM Gram diagonal") {
    const auto p = fixture::random_partition(9, 3);
    const auto g = gram(Kernel::fbm(0.35), p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(g.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) ==
              doctest::Approx(std::pow(p[i], 0.7)).epsilon(1e-14));
    }
}

TEST_CASE("tridiagonal inverse of the Brownian-motion Gram") {
    SUBCASE("unit spacing") {
        const auto t = bm_gram_inverse_tridiagonal(equispaced(3, 3.0));
        REQUIRE(t.off_diagonal.size() == 2);
        CHECK(t.off_diagonal[0] == doctest::Approx(-1.0));
        CHECK(t.off_diagonal[1] == doctest::Approx(-1.0));
    }
    SUBCASE("product with the Gram is the identity") {
        for (std::size_t n = 1; n <= 64; ++n) {
            const auto p = fixture::random_partition(n, 100 + n, 2.0);
            const auto t = bm_gram_inverse_tridiagonal(p);
            const Eigen::MatrixXd K = oracle::dense_gram(Kernel::brownian_motion(), p.points());
            const Eigen::MatrixXd I = t.multiply(K);
            REQUIRE((I - Eigen::MatrixXd::Identity(I.rows(), I.cols())).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
    SUBCASE("matches the dense Cholesky inverse") {
        for (std::size_t n : {2u, 5u, 17u}) {
            for (std::uint64_t s = 0; s < 5; ++s) {
                const auto p = fixture::random_partition(n, s * 31 + n);
                const auto t = bm_gram_inverse_tridiagonal(p);
                const Eigen::MatrixXd inv = gram(Kernel::brownian_motion(), p).inverse();
                REQUIRE((t.dense() - inv).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, inv.cwiseAbs().maxCoeff()));
            }
        }
    }
    SUBCASE("quadratic form telescopes") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto p = fixture::random_partition(3 + s, s);
            const auto f = fixture::random_values(p.size(), s);
            double sum = 0.0;
            double prev = 0.0;
            for (std::size_t n = 1; n <= p.size(); ++n) {
                sum += (f[n - 1] - prev) * (f[n - 1] - prev) / (p.x(n) - p.x(n - 1));
                prev = f[n - 1];
            }
            CHECK(bm_gram_inverse_tridiagonal(p).quad_form(f) == doctest::Approx(sum).epsilon(1e-12));
            CHECK(gram(Kernel::brownian_motion(), p).quad_form(f) == doctest::Approx(sum).epsilon(1e-9));
        }
    }
}

TEST_CASE("singular Gram is an error") {
    CHECK_THROWS_AS(GramMatrix(Kernel::brownian_motion(), std::vector<double>{0.5, 0.5}), NumericalError);
    CHECK_THROWS_AS(GramMatrix(Kernel::brownian_motion(), std::vector<double>{0.0, 0.5}), NumericalError);
    CHECK_NOTHROW(GramMatrix(Kernel::brownian_motion(), std::vector<double>{0.5, 0.5}, 1e-6));
}

}
