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

#include <stdexcept>

#include "gpsc/partition.hpp"

using namespace gpsc;

TEST_SUITE("partitions") {

TEST_CASE("equispaced grid") {
    const auto p = equispaced(4, 1.0);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == 0.25);
    CHECK(p[1] == 0.5);
    CHECK(p[2] == 0.75);
    CHECK(p[3] == 1.0);
    CHECK(p.anchored());
    CHECK(p.x(0) == 0.0);

    const auto single = equispaced(1, 2.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 2.0);

    CHECK(quasi_uniformity_ratio(equispaced(10, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quasi_uniformity_ratio(equispaced(8, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equispaced mesh times N recovers T") {
    for (std::size_t n : {1u, 3u, 7u, 100u, 4096u}) {
        const auto p = equispaced(n, 3.0);
        CHECK(p.mesh() * static_cast<double>(n) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(p.endpoint() == 3.0);
    }
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS((void)equispaced(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)equispaced(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)equispaced(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Partition(1.0, {0.5, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(1.0, {0.0, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(1.0, {0.2, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Partition(1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)quasi_uniform_random(10, 1.0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("gap arithmetic") {
    const Partition p(1.0, {0.1, 0.3, 1.0});
    CHECK(quasi_uniformity_ratio(p) == doctest::Approx(7.0));
    const auto g = p.gaps();
    REQUIRE(g.size() == 3);
    CHECK(g[0] == doctest::Approx(0.1));
    CHECK(g[1] == doctest::Approx(0.2));
    CHECK(g[2] == doctest::Approx(0.7));
    CHECK(p.mesh() == doctest::Approx(0.7));
}

TEST_CASE("quasi-uniform random partitions") {
    SUBCASE("ratio bound over many seeds") {
        for (std::uint64_t s = 0; s < 1000; ++s) {
            const auto p = quasi_uniform_random(50, 1.0, 2.0, s);
            const double r = quasi_uniformity_ratio(p);
            REQUIRE(r >= 1.0);
            REQUIRE(r <= 2.0 * (1.0 + 1e-12));
            REQUIRE(p.endpoint() == 1.0);
        }
    }
    SUBCASE("fixed seeds from the reference list") {
        CHECK(quasi_uniformity_ratio(quasi_uniform_random(100, 1.0, 2.0, 7)) <= 2.0 * (1.0 + 1e-12));
        const auto p = quasi_uniform_random(100, 1.0, 3.0, 7);
        CHECK(p.mesh() >= 1.0 / 300.0);
        CHECK(p.mesh() <= 3.0 / 100.0);
    }
    SUBCASE("c_qu = 1 gives the uniform grid") {
        const auto p = quasi_uniform_random(5, 1.0, 1.0, 0);
        const auto e = equispaced(5, 1.0);
        for (std::size_t i = 0; i < 5; ++i) CHECK(p[i] == doctest::Approx(e[i]).epsilon(1e-14));
    }
    SUBCASE("deterministic in the seed") {
        CHECK(quasi_uniform_random(30, 2.0, 3.0, 11) == quasi_uniform_random(30, 2.0, 3.0, 11));
        CHECK_FALSE(quasi_uniform_random(30, 2.0, 3.0, 11) == quasi_uniform_random(30, 2.0, 3.0, 12));
    }
}

TEST_CASE("stride-2 sub-partitions") {
    const auto p = equispaced(6, 1.0);
    const auto odd = sub_partition_stride2(p, Parity::Odd);
    REQUIRE(odd.size() == 3);
    CHECK(odd[0] == doctest::Approx(1.0 / 6.0));
    CHECK(odd[1] == doctest::Approx(3.0 / 6.0));
    CHECK(odd[2] == doctest::Approx(5.0 / 6.0));
    CHECK_FALSE(odd.anchored());
    CHECK(odd.domain_length() == 1.0);

    const auto even = sub_partition_stride2(p, Parity::Even);
    REQUIRE(even.size() == 3);
    CHECK(even[0] == doctest::Approx(2.0 / 6.0));
    CHECK(even[1] == doctest::Approx(4.0 / 6.0));
    CHECK(even[2] == 1.0);

    CHECK_THROWS_AS((void)sub_partition_stride2(equispaced(1, 1.0), Parity::Odd), std::invalid_argument);
}

TEST_CASE("odd sub-partition ratio at most twice the parent ratio") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto p = quasi_uniform_random(40 + s % 7, 1.0, 1.0 + static_cast<double>(s % 5), s);
        const double parent = quasi_uniformity_ratio(p);
        const auto odd = sub_partition_stride2(p, Parity::Odd);
        REQUIRE(quasi_uniformity_ratio(odd) <= 2.0 * parent * (1.0 + 1e-12));
    }
}

}
