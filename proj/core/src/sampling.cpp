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

#include "gpsc/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "gpsc/csv.hpp"
#include "gpsc/error.hpp"
#include "gpsc/rng.hpp"

namespace gpsc {

struct Sampler::Circulant {
    double hurst;
    std::size_t n;
    double domain_length;
};

PathSample make_sample(Partition partition, std::vector<double> values, Provenance provenance) {
    if (values.size() != partition.size()) {
        throw std::invalid_argument("sample: " + std::to_string(values.size()) + " values for " +
                                    std::to_string(partition.size()) + " partition points");
    }
    return PathSample{std::move(partition), std::move(values), std::move(provenance)};
}

ProcessSpec parse_process(std::string_view spec) {
    spec = trim(spec);
    const auto parts = split(spec, ':');
    const std::string_view name = parts.at(0);
    if (name == "sine-step") {
        if (parts.size() != 1) throw std::invalid_argument("process 'sine-step' takes no parameters");
        return SineStep{};
    }
    if (name == "iifbm") {
        if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("process spec 'iifbm:H[:R]' expected");
        TwiceIntegratedFbm p{parse_double(parts[1])};
        if (parts.size() == 3) {
            const auto r = parse_int(parts[2]);
            if (r < 1) throw std::invalid_argument("iifbm: refinement must be >= 1");
            p.refinement = static_cast<std::size_t>(r);
        }
        if (!(p.hurst > 0.0 && p.hurst < 1.0)) throw std::invalid_argument("iifbm: Hurst parameter must lie in (0, 1)");
        return p;
    }
    if (name == "matern-comb") {
        if (parts.size() < 2 || parts.size() > 4) {
            throw std::invalid_argument("process spec 'matern-comb:nu[:rho[:terms]]' expected");
        }
        MaternCombination m{parse_double(parts[1])};
        if (parts.size() > 2) m.length_scale = parse_double(parts[2]);
        if (parts.size() > 3) {
            const auto t = parse_int(parts[3]);
            if (t < 1) throw std::invalid_argument("matern-comb: need at least one term");
            m.terms = static_cast<std::size_t>(t);
        }
        (void)Kernel::matern(m.nu, m.length_scale);  // validates
        return m;
    }
    return GaussianProcess{parse_kernel(spec)};
}

std::string describe(const ProcessSpec &process) {
    return std::visit(
        [](const auto &p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianProcess>) {
                return p.kernel.describe();
            } else if constexpr (std::is_same_v<T, TwiceIntegratedFbm>) {
                return "iifbm:" + format_shortest(p.hurst) + ":" + std::to_string(p.refinement);
            } else if constexpr (std::is_same_v<T, SineStep>) {
                return "sine-step";
            } else {
                return "matern-comb:" + format_shortest(p.nu) + ":" + format_shortest(p.length_scale) + ":" +
                       std::to_string(p.terms);
            }
        },
        process);
}

std::optional<Smoothness> smoothness(const ProcessSpec &process) {
    if (const auto *gp = std::get_if<GaussianProcess>(&process)) {
        return std::visit(
            [](const auto &k) -> std::optional<Smoothness> {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, BrownianMotion> || std::is_same_v<T, OrnsteinUhlenbeck>) {
                    return Smoothness{0, 0.5};
                } else if constexpr (std::is_same_v<T, FractionalBM>) {
                    return Smoothness{0, k.hurst};
                } else if constexpr (std::is_same_v<T, IntegratedFBM>) {
                    return Smoothness{1, k.hurst};
                } else {
                    return std::nullopt;
                }
            },
            gp->kernel.kind());
    }
    if (const auto *ii = std::get_if<TwiceIntegratedFbm>(&process)) return Smoothness{2, ii->hurst};
    return std::nullopt;
}

std::vector<double> refined_grid(const Partition &p, std::size_t refinement) {
    if (refinement == 0) throw std::invalid_argument("refined_grid: refinement must be >= 1");
    std::vector<double> grid;
    grid.reserve(p.size() * refinement);
    for (std::size_t n = 1; n <= p.size(); ++n) {
        const double a = p.x(n - 1);
        const double h = (p.x(n) - a) / static_cast<double>(refinement);
        for (std::size_t j = 1; j < refinement; ++j) grid.push_back(a + static_cast<double>(j) * h);
        grid.push_back(p.x(n));
    }
    return grid;
}

std::vector<double> cumulative_trapezoid(std::span<const double> grid, std::span<const double> g,
                                         std::size_t stride) {
    if (grid.size() != g.size()) throw std::invalid_argument("cumulative_trapezoid: length mismatch");
    if (stride == 0 || grid.size() % stride != 0) {
        throw std::invalid_argument("cumulative_trapezoid: stride must divide the grid size");
    }
    std::vector<double> out;
    out.reserve(grid.size() / stride);
    double acc = 0.0;
    double prev_x = 0.0;
    double prev_g = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        acc += 0.5 * (grid[j] - prev_x) * (prev_g + g[j]);
        prev_x = grid[j];
        prev_g = g[j];
        if ((j + 1) % stride == 0) out.push_back(acc);
    }
    return out;
}

double sine_step_jump(std::uint64_t seed) {
    Rng rng(seed);
    return rng.uniform();
}

PathSample sine_step_with_jump(const Partition &p, double jump) {
    std::vector<double> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        v[i] = std::sin(10.0 * p[i]) + (p[i] > jump ? 1.0 : 0.0);
    }
    return make_sample(p, std::move(v), Provenance{"sine-step", 0, std::nullopt});
}

PathSample sample_sine_step(const Partition &p, std::uint64_t seed) {
    if (p.domain_length() != 1.0) throw std::invalid_argument("sine-step: defined on [0, 1] only");
    auto s = sine_step_with_jump(p, sine_step_jump(seed));
    s.provenance.seed = seed;
    return s;
}

PathSample sample_matern_combination(const MaternCombination &spec, const Partition &p, std::uint64_t seed) {
    const Kernel k = Kernel::matern(spec.nu, spec.length_scale);
    Rng rng(seed);
    std::vector<double> centres(spec.terms);
    Eigen::VectorXd y(static_cast<Eigen::Index>(spec.terms));
    for (std::size_t i = 0; i < spec.terms; ++i) {
        centres[i] = rng.uniform();
        y(static_cast<Eigen::Index>(i)) = rng.uniform();
    }
    const GramMatrix g(k, centres);
    const Eigen::VectorXd alpha = g.solve(y);
    std::vector<double> v(p.size(), 0.0);
    for (std::size_t n = 0; n < p.size(); ++n) {
        for (std::size_t i = 0; i < spec.terms; ++i) v[n] += alpha(static_cast<Eigen::Index>(i)) * k(p[n], centres[i]);
    }
    return make_sample(p, std::move(v), Provenance{describe(ProcessSpec{spec}), seed, std::nullopt});
}

namespace {

bool is_equispaced(const Partition &p) {
    const double h = p.domain_length() / static_cast<double>(p.size());
    for (std::size_t n = 1; n <= p.size(); ++n) {
        if (std::abs(p.x(n) - static_cast<double>(n) * h) > 1e-12 * p.domain_length()) return false;
    }
    return p.anchored();
}

std::optional<double> fbm_hurst(const ProcessSpec &process) {
    if (const auto *gp = std::get_if<GaussianProcess>(&process)) {
        if (gp->kernel.scale() != 1.0) return std::nullopt;
        if (std::holds_alternative<BrownianMotion>(gp->kernel.kind())) return 0.5;
        if (const auto *f = std::get_if<FractionalBM>(&gp->kernel.kind())) return f->hurst;
    }
    return std::nullopt;
}

void check_size(std::size_t n, const SamplerOptions &options) {
    if (n > options.max_cholesky) {
        throw std::invalid_argument("sampler: " + std::to_string(n) + " points exceed the Cholesky limit of " +
                                    std::to_string(options.max_cholesky) +
                                    " (raise max_cholesky or use the circulant sampler)");
    }
}

} // namespace

Sampler::Sampler(ProcessSpec process, Partition partition, SamplerOptions options)
    : process_(std::move(process)), partition_(std::move(partition)) {
    if (const auto *gp = std::get_if<GaussianProcess>(&process_)) {
        const auto hurst = fbm_hurst(process_);
        if (options.circulant) {
            if (!hurst || !is_equispaced(partition_)) {
                throw std::invalid_argument("sampler: circulant embedding needs FBM/BM on an equispaced partition");
            }
            circulant_ = std::make_shared<const Circulant>(Circulant{*hurst, partition_.size(), partition_.domain_length()});
            return;
        }
        check_size(partition_.size(), options);
        factor_ = std::make_shared<const GramMatrix>(gp->kernel, partition_.points());
    } else if (const auto *ii = std::get_if<TwiceIntegratedFbm>(&process_)) {
        fine_grid_ = refined_grid(partition_, ii->refinement);
        check_size(fine_grid_.size(), options);
        factor_ = std::make_shared<const GramMatrix>(Kernel::integrated_fbm(ii->hurst), fine_grid_);
    } else if (std::holds_alternative<SineStep>(process_)) {
        if (partition_.domain_length() != 1.0) throw std::invalid_argument("sine-step: defined on [0, 1] only");
    }
}

PathSample Sampler::draw(std::uint64_t seed) const {
    Provenance prov{describe(process_), seed, smoothness(process_)};
    if (circulant_) {
        auto v = sample_fbm_circulant(circulant_->hurst, circulant_->n, circulant_->domain_length, seed);
        return make_sample(partition_, std::move(v), std::move(prov));
    }
    if (std::holds_alternative<GaussianProcess>(process_)) {
        std::vector<double> z(partition_.size());
        Rng rng(seed);
        rng.fill_normal(z);
        const Eigen::VectorXd v = factor_->correlate(z);
        return make_sample(partition_, std::vector<double>(v.data(), v.data() + v.size()), std::move(prov));
    }
    if (const auto *ii = std::get_if<TwiceIntegratedFbm>(&process_)) {
        std::vector<double> z(fine_grid_.size());
        Rng rng(seed);
        rng.fill_normal(z);
        const Eigen::VectorXd g = factor_->correlate(z);
        auto v = cumulative_trapezoid(fine_grid_, std::span<const double>(g.data(), static_cast<std::size_t>(g.size())),
                                      ii->refinement);
        return make_sample(partition_, std::move(v), std::move(prov));
    }
    if (std::holds_alternative<SineStep>(process_)) {
        auto s = sine_step_with_jump(partition_, sine_step_jump(seed));
        s.provenance = std::move(prov);
        return s;
    }
    auto s = sample_matern_combination(std::get<MaternCombination>(process_), partition_, seed);
    s.provenance = std::move(prov);
    return s;
}

PathSample sample_gp(const Kernel &kernel, const Partition &p, std::uint64_t seed) {
    return Sampler(GaussianProcess{kernel}, p).draw(seed);
}

PathSample sample_iifbm(double hurst, const Partition &p, std::size_t refinement, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("iifbm: Hurst parameter must lie in (0, 1)");
    if (refinement == 0) throw std::invalid_argument("iifbm: refinement must be >= 1");
    return Sampler(TwiceIntegratedFbm{hurst, refinement}, p).draw(seed);
}

PathSample sample(const ProcessSpec &process, const Partition &p, std::uint64_t seed, SamplerOptions options) {
    return Sampler(process, p, options).draw(seed);
}

} // namespace gpsc
