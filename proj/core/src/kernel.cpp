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

#include "gpsc/kernel.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gpsc/csv.hpp"

namespace gpsc {

namespace {

void validate(const KernelKind &kind) {
    std::visit(
        [](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, FractionalBM> || std::is_same_v<T, IntegratedFBM>) {
                if (!(k.hurst > 0.0 && k.hurst < 1.0)) {
                    throw std::invalid_argument("kernel: Hurst parameter must lie in (0, 1)");
                }
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                if (!(k.lambda > 0.0)) throw std::invalid_argument("kernel: OU rate must be positive");
            } else if constexpr (std::is_same_v<T, Matern>) {
                if (!(k.nu > 0.0)) throw std::invalid_argument("kernel: Matern order must be positive");
                if (!(k.length_scale > 0.0)) {
                    throw std::invalid_argument("kernel: Matern length-scale must be positive");
                }
            }
        },
        kind);
}

double fbm_cov(double h, double x, double y) {
    const double p = 2.0 * h;
    return 0.5 * (std::pow(std::abs(x), p) + std::pow(std::abs(y), p) - std::pow(std::abs(x - y), p));
}

double ifbm_cov(double h, double x, double y) {
    const double q = 2.0 * h + 1.0;
    const double r = 2.0 * h + 2.0;
    const double cross = y * std::pow(x, q) + x * std::pow(y, q);
    const double tail = (std::pow(x, r) + std::pow(y, r) - std::pow(std::abs(x - y), r)) / (2.0 * (h + 1.0));
    return (cross - tail) / (2.0 * q);
}

double ou_cov(double lambda, double x, double y) {
    return (std::exp(-lambda * std::abs(x - y)) - std::exp(-lambda * (x + y))) / 4.0;
}

bool is_half_integer(double nu, int &p) {
    const double twice = 2.0 * nu;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12 || static_cast<long>(rounded) % 2 == 0 || rounded > 41.0) return false;
    p = static_cast<int>((rounded - 1.0) / 2.0);
    return true;
}

std::string fmt_number(double v) {
    return format_shortest(v);
}

} // namespace

double matern_correlation(double nu, double length_scale, double r) noexcept {
    r = std::abs(r);
    if (r == 0.0) return 1.0;
    const double s = std::sqrt(2.0 * nu) * r / length_scale;
    int p = 0;
    if (is_half_integer(nu, p)) {
        // exp(-s) * p!/(2p)! * sum_i (p+i)!/(i!(p-i)!) (2s)^{p-i}
        double sum = 0.0;
        for (int i = 0; i <= p; ++i) {
            const double c = std::exp(std::lgamma(p + i + 1.0) - std::lgamma(i + 1.0) - std::lgamma(p - i + 1.0));
            sum += c * std::pow(2.0 * s, p - i);
        }
        return std::exp(-s + std::lgamma(p + 1.0) - std::lgamma(2.0 * p + 1.0)) * sum;
    }
    if (s > 700.0) return 0.0;
    return std::exp((1.0 - nu) * std::log(2.0) - std::lgamma(nu) + nu * std::log(s)) * std::cyl_bessel_k(nu, s);
}

Kernel::Kernel(KernelKind kind, double scale) : kind_(kind), scale_(scale) {
    validate(kind_);
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw std::invalid_argument("kernel: scale must be positive");
}

Kernel Kernel::scaled(double sigma2) const {
    return Kernel(kind_, scale_ * sigma2);
}

bool Kernel::is_brownian_motion() const noexcept {
    return std::holds_alternative<BrownianMotion>(kind_);
}

double Kernel::operator()(double x, double y) const noexcept {
    const double base = std::visit(
        [x, y](const auto &k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, BrownianMotion>) {
                return std::min(x, y);
            } else if constexpr (std::is_same_v<T, FractionalBM>) {
                return fbm_cov(k.hurst, x, y);
            } else if constexpr (std::is_same_v<T, IntegratedFBM>) {
                return ifbm_cov(k.hurst, x, y);
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return ou_cov(k.lambda, x, y);
            } else {
                return matern_correlation(k.nu, k.length_scale, x - y);
            }
        },
        kind_);
    return scale_ * base;
}

std::string Kernel::describe() const {
    std::string body = std::visit(
        [](const auto &k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, BrownianMotion>) {
                return "bm";
            } else if constexpr (std::is_same_v<T, FractionalBM>) {
                return "fbm:" + fmt_number(k.hurst);
            } else if constexpr (std::is_same_v<T, IntegratedFBM>) {
                return "ifbm:" + fmt_number(k.hurst);
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return "ou:" + fmt_number(k.lambda);
            } else {
                return "matern:" + fmt_number(k.nu) + ":" + fmt_number(k.length_scale);
            }
        },
        kind_);
    if (scale_ != 1.0) return fmt_number(scale_) + "*" + body;
    return body;
}

Kernel parse_kernel(std::string_view spec) {
    double scale = 1.0;
    if (const auto star = spec.find('*'); star != std::string_view::npos) {
        scale = parse_double(spec.substr(0, star));
        spec.remove_prefix(star + 1);
    }
    const auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("kernel spec is empty");
    const std::string_view name = parts[0];
    auto arg = [&](std::size_t i) {
        if (i >= parts.size()) throw std::invalid_argument("kernel spec '" + std::string(spec) + "' is missing a parameter");
        return parse_double(parts[i]);
    };
    auto expect_args = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
            throw std::invalid_argument("kernel spec '" + std::string(spec) + "' has the wrong number of parameters");
        }
    };
    KernelKind kind;
    if (name == "bm") {
        expect_args(0, 0);
        kind = BrownianMotion{};
    } else if (name == "fbm") {
        expect_args(1, 1);
        kind = FractionalBM{arg(1)};
    } else if (name == "ifbm") {
        expect_args(1, 1);
        kind = IntegratedFBM{arg(1)};
    } else if (name == "ou") {
        expect_args(1, 1);
        kind = OrnsteinUhlenbeck{arg(1)};
    } else if (name == "matern") {
        expect_args(1, 2);
        kind = Matern{arg(1), parts.size() > 2 ? arg(2) : 1.0};
    } else {
        throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
    }
    return Kernel(kind, scale);
}

} // namespace gpsc
