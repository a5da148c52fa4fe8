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

#include "experiment_config.hpp"

#include <cstdlib>
#include <stdexcept>

#include "gpsc/csv.hpp"

namespace gpsc::cli {

namespace {

const std::vector<std::string> kPartitionKeys{"partition", "c_qu", "partition_seed", "T"};

PartitionSpec partition_from(const FlatConfig &cfg) {
    PartitionSpec spec;
    spec.kind = parse_partition_kind(cfg.get_string("partition", "equispaced"));
    spec.domain_length = cfg.get_double("T", 1.0);
    spec.c_qu = cfg.get_double("c_qu", 2.0);
    spec.seed = cfg.get_uint("partition_seed", 0);
    if (!(spec.domain_length > 0.0)) throw std::invalid_argument("config: T must be positive");
    if (!(spec.c_qu >= 1.0)) throw std::invalid_argument("config: c_qu must be >= 1");
    return spec;
}

std::vector<std::size_t> ns_from(const FlatConfig &cfg) {
    std::vector<std::size_t> ns;
    for (auto n : cfg.get_ints("ns")) {
        if (n < 2) throw std::invalid_argument("config: every entry of ns must be >= 2");
        ns.push_back(static_cast<std::size_t>(n));
    }
    if (ns.empty()) throw std::invalid_argument("config: 'ns' must list at least one N");
    return ns;
}

std::vector<EstimatorSpec> estimators_from(const FlatConfig &cfg) {
    std::vector<EstimatorSpec> out;
    for (const auto &s : cfg.get_strings("estimators", {"cv", "ml"})) {
        auto spec = parse_estimator(s);
        spec.icv.trim = static_cast<std::size_t>(cfg.get_uint("icv_trim", spec.icv.trim));
        out.push_back(spec);
    }
    return out;
}

std::vector<std::string> with_partition_keys(std::vector<std::string> keys) {
    keys.insert(keys.end(), kPartitionKeys.begin(), kPartitionKeys.end());
    return keys;
}

} // namespace

PartitionKind parse_partition_kind(const std::string &name) {
    if (name == "equispaced") return PartitionKind::Equispaced;
    if (name == "quasi-uniform") return PartitionKind::QuasiUniform;
    throw std::invalid_argument("partition must be 'equispaced' or 'quasi-uniform', got '" + name + "'");
}

std::string to_string(PartitionKind kind) {
    return kind == PartitionKind::Equispaced ? "equispaced" : "quasi-uniform";
}

std::optional<std::uint64_t> seed_from_environment() {
    const char *env = std::getenv("GPSC_SEED");
    if (env == nullptr || *env == '\0') return std::nullopt;
    const auto v = parse_int(env);
    if (v < 0) throw std::invalid_argument("GPSC_SEED must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

ExperimentConfig experiment_from_config(FlatConfig cfg, std::optional<std::uint64_t> seed_override) {
    cfg.check_keys(with_partition_keys({"name", "process", "model", "estimators", "quadratic_variation", "ns",
                                        "replications", "seed", "drop_smallest", "statistic", "circulant",
                                        "max_cholesky", "icv_trim"}));
    if (seed_override) cfg.set("seed", static_cast<double>(*seed_override));
    ExperimentConfig out;
    out.name = cfg.get_string("name", "experiment");
    auto &s = out.sweep;
    const auto process = cfg.get_string("process");
    if (!process) throw std::invalid_argument("config: 'process' is required");
    s.process = parse_process(*process);
    s.model = parse_kernel(cfg.get_string("model", "bm"));
    s.estimators = estimators_from(cfg);
    s.quadratic_variation = cfg.get_bool("quadratic_variation", false);
    s.ns = ns_from(cfg);
    s.replications = static_cast<std::size_t>(cfg.get_uint("replications", 100));
    if (s.replications == 0) throw std::invalid_argument("config: replications must be >= 1");
    s.seed = cfg.get_uint("seed", 0);
    s.partition = partition_from(cfg);
    s.sampler.circulant = cfg.get_bool("circulant", false);
    s.sampler.max_cholesky = static_cast<std::size_t>(cfg.get_uint("max_cholesky", s.sampler.max_cholesky));
    s.drop_smallest = static_cast<std::size_t>(cfg.get_uint("drop_smallest", 1));
    const auto stat = cfg.get_string("statistic", "median");
    if (stat == "median") {
        s.statistic = SummaryStatistic::Median;
    } else if (stat == "mean") {
        s.statistic = SummaryStatistic::Mean;
    } else {
        throw std::invalid_argument("config: statistic must be 'median' or 'mean'");
    }
    out.source = std::move(cfg);
    return out;
}

CalibrationSetup calibration_from_config(FlatConfig cfg, std::optional<std::uint64_t> seed_override) {
    cfg.check_keys(with_partition_keys(
        {"name", "truth", "estimators", "ns", "per_cell", "replications", "seed", "drop_smallest", "icv_trim"}));
    if (seed_override) cfg.set("seed", static_cast<double>(*seed_override));
    CalibrationSetup out;
    out.name = cfg.get_string("name", "calibration");
    auto &c = out.calibration;
    const auto truth = cfg.get_string("truth");
    if (!truth) throw std::invalid_argument("config: 'truth' is required");
    c.truth = parse_kernel(*truth);
    c.estimators = estimators_from(cfg);
    c.ns = ns_from(cfg);
    c.partition = partition_from(cfg);
    c.per_cell = static_cast<std::size_t>(cfg.get_uint("per_cell", 3));
    if (c.per_cell == 0) throw std::invalid_argument("config: per_cell must be >= 1");
    c.replications = static_cast<std::size_t>(cfg.get_uint("replications", 0));
    c.seed = cfg.get_uint("seed", 0);
    c.drop_smallest = static_cast<std::size_t>(cfg.get_uint("drop_smallest", 1));
    out.source = std::move(cfg);
    return out;
}

} // namespace gpsc::cli
