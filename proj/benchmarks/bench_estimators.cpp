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

#include <benchmark/benchmark.h>

#include "gpsc/analysis.hpp"
#include "gpsc/estimators.hpp"
#include "gpsc/sampling.hpp"

namespace {

using namespace gpsc;

// fbm:0.5 through circulant embedding is Brownian motion without the O(N³) factorization.
PathSample bm_path(std::size_t n) {
    return make_sample(equispaced(n, 1.0), sample_fbm_circulant(0.5, n, 1.0, 1));
}

void BM_SigmaCvClosedForm(benchmark::State &state) {
    const auto s = bm_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sigma_cv_bm(s).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SigmaCvClosedForm)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oN);

void BM_SigmaMlClosedForm(benchmark::State &state) {
    const auto s = bm_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sigma_ml_bm(s).value);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SigmaMlClosedForm)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oN);

void BM_SigmaCvGeneric(benchmark::State &state) {
    const auto s = bm_path(static_cast<std::size_t>(state.range(0)));
    const auto k = Kernel::brownian_motion();
    for (auto _ : state) benchmark::DoNotOptimize(sigma_cv_generic(k, s.partition, s.values).value);
}
BENCHMARK(BM_SigmaCvGeneric)->RangeMultiplier(2)->Range(64, 1024);

void BM_LpoExplicit(benchmark::State &state) {
    const auto s = bm_path(static_cast<std::size_t>(state.range(0)));
    const auto p = static_cast<std::size_t>(state.range(0) / 4);
    for (auto _ : state) benchmark::DoNotOptimize(sigma_lpo(s, p).value);
}
BENCHMARK(BM_LpoExplicit)->RangeMultiplier(2)->Range(64, 512);

void BM_LpoBruteforce(benchmark::State &state) {
    const auto s = bm_path(static_cast<std::size_t>(state.range(0)));
    const auto k = Kernel::brownian_motion();
    for (auto _ : state) benchmark::DoNotOptimize(sigma_lpo_bruteforce(k, s.partition, s.values, 3).value);
}
BENCHMARK(BM_LpoBruteforce)->DenseRange(6, 12, 3);

void BM_ExpectedCvAnalytic(benchmark::State &state) {
    const auto p = equispaced(static_cast<std::size_t>(state.range(0)), 1.0);
    const FractionalProcess fp{1, 0.75};
    for (auto _ : state) benchmark::DoNotOptimize(expected_sigma_cv_analytic(fp, p).total());
}
BENCHMARK(BM_ExpectedCvAnalytic)->RangeMultiplier(4)->Range(64, 1 << 14);

} // namespace
