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

#include <stdexcept>

#include "gpsc/analysis.hpp"

namespace gpsc {

double quadratic_variation(std::span<const double> values) noexcept {
    double acc = 0.0;
    double prev = 0.0;
    for (double v : values) {
        const double d = v - prev;
        acc += d * d;
        prev = v;
    }
    return acc;
}

double quadratic_variation(const PathSample &s) noexcept { return quadratic_variation(s.values); }

ParityVariation quadratic_variation_parity(std::span<const double> values) {
    const std::size_t N = values.size();
    if (N < 3) throw std::invalid_argument("quadratic_variation_parity: need N >= 3");
    auto f = [&](std::size_t n) { return values[n - 1]; };
    ParityVariation out{0.0, 0.0};
    for (std::size_t n = 1; 2 * n + 2 <= N; ++n) {
        const double d = f(2 * n + 2) - f(2 * n);
        out.even += d * d;
    }
    for (std::size_t n = 1; 2 * n + 1 <= N; ++n) {
        const double d = f(2 * n + 1) - f(2 * n - 1);
        out.odd += d * d;
    }
    return out;
}

ParityVariation quadratic_variation_parity(const PathSample &s) { return quadratic_variation_parity(s.values); }

} // namespace gpsc
