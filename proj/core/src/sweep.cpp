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

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "gpsc/analysis.hpp"
#include "gpsc/rng.hpp"

namespace gpsc {

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)> &task) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

Partition make_partition(const PartitionSpec &spec, std::size_t n) {
    if (spec.kind == PartitionKind::Equispaced) return equispaced(n, spec.domain_length);
    return quasi_uniform_random(n, spec.domain_length, spec.c_qu, derive_seed(spec.seed, n));
}

SweepResult rate_sweep(const SweepConfig &config) {
    if (config.ns.empty()) throw std::invalid_argument("rate_sweep: empty N grid");
    if (config.replications == 0) throw std::invalid_argument("rate_sweep: need at least one replication");
    if (config.estimators.empty() && !config.quadratic_variation) {
        throw std::invalid_argument("rate_sweep: nothing to compute");
    }
    std::vector<std::string> names;
    for (const auto &e : config.estimators) names.push_back(describe(e));
    if (config.quadratic_variation) names.emplace_back("qv");
    const std::size_t Q = names.size();
    const std::size_t G = config.ns.size();
    const std::size_t M = config.replications;

    std::vector<std::unique_ptr<Sampler>> samplers(G);
    parallel_for(G, config.jobs, [&](std::size_t g) {
        samplers[g] = std::make_unique<Sampler>(config.process, make_partition(config.partition, config.ns[g]),
                                                config.sampler);
    });

    std::vector<double> values(G * M * Q);
    parallel_for(G * M, config.jobs, [&](std::size_t task) {
        const std::size_t g = task / M;
        const std::size_t r = task % M;
        const auto &s = *samplers[g];
        const auto path = s.draw(derive_seed(config.seed, config.ns[g], r));
        double *out = &values[task * Q];
        for (std::size_t e = 0; e < config.estimators.size(); ++e) {
            out[e] = estimate(config.estimators[e], config.model, s.partition(), path.values).value;
        }
        if (config.quadratic_variation) out[Q - 1] = quadratic_variation(path.values);
    });

    SweepResult result;
    result.raw.reserve(values.size());
    for (std::size_t g = 0; g < G; ++g) {
        for (std::size_t r = 0; r < M; ++r) {
            for (std::size_t q = 0; q < Q; ++q) {
                result.raw.push_back({config.ns[g], r, names[q], values[(g * M + r) * Q + q]});
            }
        }
    }
    for (std::size_t q = 0; q < Q; ++q) {
        std::vector<double> stat(G);
        for (std::size_t g = 0; g < G; ++g) {
            std::vector<double> col(M);
            for (std::size_t r = 0; r < M; ++r) col[r] = values[(g * M + r) * Q + q];
            const auto ms = mean_se(col);
            const double med = median(col);
            result.summary.push_back({names[q], config.ns[g], med, ms.mean, ms.se, M});
            stat[g] = config.statistic == SummaryStatistic::Median ? med : ms.mean;
        }
        QuantityFit qf{names[q], std::nullopt, {}};
        try {
            qf.fit = fit_rate(config.ns, stat, config.drop_smallest, config.statistic);
        } catch (const std::exception &e) {
            qf.note = e.what();
        }
        result.fits.push_back(std::move(qf));
    }
    return result;
}

} // namespace gpsc
