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
#include <vector>

#include "gpsc/partition.hpp"
#include "gpsc/rng.hpp"

namespace gpsc::fixture {

/// Quasi-uniform partition of [0, T] with a seed-dependent ratio up to 4.
inline Partition random_partition(std::size_t n, std::uint64_t seed, double T = 1.0) {
    Rng rng(derive_seed(seed, 991));
    return quasi_uniform_random(n, T, 1.0 + 3.0 * rng.uniform(), seed);
}

inline std::vector<double> random_values(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    Rng rng(derive_seed(seed, 17));
    std::vector<double> v(n);
    for (auto &x : v) x = scale * rng.normal();
    return v;
}

} // namespace gpsc::fixture
