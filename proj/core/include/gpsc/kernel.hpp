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

#include <string>
#include <string_view>
#include <variant>

namespace gpsc {

struct BrownianMotion {};

/// k(x,x') = (|x|^{2H} + |x'|^{2H} - |x-x'|^{2H}) / 2, 0 < H < 1.
struct FractionalBM {
    double hurst;
};

/// Covariance of the running integral of a FractionalBM path.
struct IntegratedFBM {
    double hurst;
};

/// Ornstein-Uhlenbeck started at zero with stationary variance 1/4:
/// k(x,x') = (exp(-λ|x-x'|) - exp(-λ(x+x'))) / 4.
struct OrnsteinUhlenbeck {
    double lambda;
};

/// Unit-variance Matérn of order ν and length-scale ρ.
struct Matern {
    double nu;
    double length_scale;
};

using KernelKind = std::variant<BrownianMotion, FractionalBM, IntegratedFBM, OrnsteinUhlenbeck, Matern>;

/// Immutable covariance function: a base kind times a positive scale σ².
///
/// Parameters are validated at construction, so `operator()` never throws.
class Kernel {
public:
    Kernel() = default;  // Brownian motion, σ² = 1
    explicit Kernel(KernelKind kind, double scale = 1.0);

    static Kernel brownian_motion() { return Kernel(BrownianMotion{}); }
    static Kernel fbm(double hurst) { return Kernel(FractionalBM{hurst}); }
    static Kernel integrated_fbm(double hurst) { return Kernel(IntegratedFBM{hurst}); }
    static Kernel ornstein_uhlenbeck(double lambda) { return Kernel(OrnsteinUhlenbeck{lambda}); }
    static Kernel matern(double nu, double length_scale = 1.0) { return Kernel(Matern{nu, length_scale}); }

    /// σ²·k; nesting multiplies the scales.
    [[nodiscard]] Kernel scaled(double sigma2) const;

    [[nodiscard]] double operator()(double x, double y) const noexcept;

    [[nodiscard]] const KernelKind &kind() const noexcept { return kind_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] bool is_brownian_motion() const noexcept;

    /// Spec string, e.g. "fbm:0.3" or "matern:1:1"; a non-unit scale is
    /// prefixed as "2*bm".
    [[nodiscard]] std::string describe() const;

private:
    KernelKind kind_{BrownianMotion{}};
    double scale_ = 1.0;
};

/// Parses "bm", "fbm:H", "ifbm:H", "ou:λ", "matern:ν[:ρ]", optionally
/// prefixed by "σ²*". Throws std::invalid_argument on malformed input.
[[nodiscard]] Kernel parse_kernel(std::string_view spec);

/// Half-integer ν = p + 1/2 closed form; other orders go through the
/// modified Bessel function of the second kind.
[[nodiscard]] double matern_correlation(double nu, double length_scale, double r) noexcept;

} // namespace gpsc
