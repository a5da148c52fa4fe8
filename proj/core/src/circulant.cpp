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

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "gpsc/error.hpp"
#include "gpsc/rng.hpp"
#include "gpsc/sampling.hpp"

namespace gpsc {

std::vector<double> sample_fbm_circulant(double hurst, std::size_t n, double domain_length, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw std::invalid_argument("circulant: Hurst parameter must lie in (0, 1)");
    if (n == 0) throw std::invalid_argument("circulant: N must be >= 1");

    const double p = 2.0 * hurst;
    auto gamma = [p](double k) {
        return 0.5 * (std::pow(std::abs(k + 1.0), p) - 2.0 * std::pow(std::abs(k), p) + std::pow(std::abs(k - 1.0), p));
    };
    // First row of the 2n-circulant embedding of the unit-step fGn covariance.
    const std::size_t m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (std::size_t k = 0; k <= n; ++k) row[k] = gamma(static_cast<double>(k));
    for (std::size_t k = n + 1; k < m; ++k) row[k] = gamma(static_cast<double>(m - k));

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> eig;
    fft.fwd(eig, row);
    double max_eig = 0.0;
    for (const auto &e : eig) max_eig = std::max(max_eig, e.real());

    Rng rng(seed);
    std::vector<std::complex<double>> w(m);
    for (std::size_t k = 0; k < m; ++k) {
        double lambda = eig[k].real();
        if (lambda < 0.0) {
            if (lambda < -1e-10 * max_eig) throw NumericalError("circulant: embedding is not nonnegative definite");
            lambda = 0.0;
        }
        const double a = rng.normal();
        const double b = rng.normal();
        w[k] = std::sqrt(lambda / static_cast<double>(m)) * std::complex<double>(a, b);
    }
    std::vector<std::complex<double>> out;
    fft.fwd(out, w);

    // Real part of the first n entries is unit-step fGn; rescale and sum.
    const double step = domain_length / static_cast<double>(n);
    const double unit = std::pow(step, hurst);
    std::vector<double> path(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += unit * out[k].real();
        path[k] = acc;
    }
    return path;
}

} // namespace gpsc
