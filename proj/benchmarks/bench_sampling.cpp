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

#include "gpsc/sampling.hpp"

namespace {

using namespace gpsc;

// Factorization plus one draw.
void BM_SampleFbmCholesky(benchmark::State &state) {
    const auto p = equispaced(static_cast<std::size_t>(state.range(0)), 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_gp(Kernel::fbm(0.3), p, ++seed).values.data());
}
BENCHMARK(BM_SampleFbmCholesky)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);

// Draws from a prepared sampler, the per-replication cost in a sweep.
void BM_SamplerDrawCholesky(benchmark::State &state) {
    const Sampler sampler(GaussianProcess{Kernel::fbm(0.3)}, equispaced(static_cast<std::size_t>(state.range(0)), 1.0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(++seed).values.data());
}
BENCHMARK(BM_SamplerDrawCholesky)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMicrosecond);

void BM_SampleFbmCirculant(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_fbm_circulant(0.3, n, 1.0, ++seed).data());
}
BENCHMARK(BM_SampleFbmCirculant)->RangeMultiplier(4)->Range(128, 1 << 16)->Unit(benchmark::kMicrosecond);

void BM_SampleIifbm(benchmark::State &state) {
    const auto p = equispaced(static_cast<std::size_t>(state.range(0)), 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_iifbm(0.5, p, 16, ++seed).values.data());
}
BENCHMARK(BM_SampleIifbm)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

} // namespace
