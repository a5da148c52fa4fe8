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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gpsc/analysis.hpp"
#include "gpsc/csv.hpp"
#include "gpsc/error.hpp"
#include "gpsc/estimators.hpp"
#include "gpsc/gram.hpp"
#include "gpsc/posterior.hpp"
#include "gpsc/rng.hpp"

namespace gpsc::cli {

namespace {

constexpr double kExactTol = 1e-9;
constexpr double kInverseTol = 1e-10;
constexpr double kZLimit = 3.0;

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Worst discrepancy over `cases`, tracked by the check body.
struct Worst {
    double value = 0.0;
    std::string where;
    void update(double v, const std::string &at) {
        if (!(v <= value)) {  // NaN sticks
            value = v;
            where = at;
        }
    }
};

VerifyCheck tolerance_check(const std::string &name, const Worst &w, double tol) {
    std::ostringstream d;
    d << "max_diff=" << format_shortest(w.value) << " tol=" << format_shortest(tol);
    if (!w.where.empty()) d << " at " << w.where;
    return {name, w.value <= tol, d.str()};
}

Partition random_partition(std::size_t n, std::uint64_t seed) {
    return quasi_uniform_random(n, 1.0, 4.0, seed);
}

std::vector<double> bm_values(const Partition &p, std::uint64_t seed) {
    return sample_gp(Kernel::brownian_motion(), p, seed).values;
}

VerifyCheck check_ml_lpo_identity(std::uint64_t seed, std::size_t reps) {
    Worst w;
    for (std::size_t n = 2; n <= 10; ++n) {
        for (std::size_t r = 0; r < reps; ++r) {
            const auto p = random_partition(n, derive_seed(seed, n, r));
            const auto f = bm_values(p, derive_seed(seed, n, r + 1000));
            w.update(verify_ml_lpo_identity(Kernel::brownian_motion(), p, f), "N=" + std::to_string(n));
        }
    }
    return tolerance_check("ml-equals-mean-lpo", w, kExactTol);
}

VerifyCheck check_lpo_explicit(std::uint64_t seed, std::size_t max_n) {
    Worst w;
    for (std::size_t n = 2; n <= max_n; ++n) {
        const auto p = random_partition(n, derive_seed(seed, n, 1));
        const auto f = bm_values(p, derive_seed(seed, n, 2));
        for (std::size_t k = 1; k <= n; ++k) {
            const double explicit_form = sigma_lpo(p, f, k).value;
            const double brute = sigma_lpo_bruteforce(Kernel::brownian_motion(), p, f, k).value;
            w.update(rel_diff(explicit_form, brute), "N=" + std::to_string(n) + " p=" + std::to_string(k));
        }
    }
    return tolerance_check("lpo-explicit-equals-enumeration", w, kExactTol);
}

VerifyCheck check_posterior(std::uint64_t seed, std::size_t cases) {
    Worst w;
    const auto bm = Kernel::brownian_motion();
    for (std::size_t c = 0; c < cases; ++c) {
        Rng rng(derive_seed(seed, c, 7));
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 32.0) % 32;
        const auto p = random_partition(n, derive_seed(seed, c, 8));
        const auto f = bm_values(p, derive_seed(seed, c, 9));
        const Posterior closed(p, f);
        const Posterior dense(bm, p, f);
        for (int q = 0; q < 8; ++q) {
            const double x = rng.uniform(0.0, p.domain_length());
            w.update(std::abs(closed.mean(x) - dense.mean(x)), "case " + std::to_string(c));
            w.update(std::abs(closed.variance(x) - dense.variance(x)), "case " + std::to_string(c));
        }
    }
    return tolerance_check("posterior-closed-form-equals-dense", w, kExactTol);
}

VerifyCheck check_estimators(std::uint64_t seed, std::size_t cases) {
    Worst w;
    const auto bm = Kernel::brownian_motion();
    for (std::size_t c = 0; c < cases; ++c) {
        const auto n = 3 + c % 30;
        const auto p = random_partition(n, derive_seed(seed, c, 11));
        const auto f = bm_values(p, derive_seed(seed, c, 12));
        const auto at = "N=" + std::to_string(n);
        w.update(rel_diff(sigma_cv_bm(p, f).value, sigma_cv_generic(bm, p, f).value), "cv " + at);
        w.update(rel_diff(sigma_ml_bm(p, f).value, sigma_ml_generic(bm, p, f).value), "ml " + at);
        w.update(rel_diff(sigma_icv_bm(p, f).value, sigma_icv_generic(bm, p, f).value), "icv " + at);
    }
    return tolerance_check("estimators-closed-form-equal-dense", w, kExactTol);
}

VerifyCheck check_tridiagonal(std::uint64_t seed, std::size_t max_n) {
    Worst w;
    for (std::size_t n = 1; n <= max_n; n += (n < 16 ? 1 : 7)) {
        const auto p = random_partition(n, derive_seed(seed, n, 21));
        const auto K = gram(Kernel::brownian_motion(), p).matrix();
        const auto prod = bm_gram_inverse_tridiagonal(p).multiply(K);
        const auto id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        w.update((prod - id).cwiseAbs().maxCoeff(), "N=" + std::to_string(n));
    }
    return tolerance_check("tridiagonal-inverse-times-gram", w, kInverseTol);
}

VerifyCheck check_expectation(const std::string &process, const std::string &estimator, std::size_t n,
                              std::size_t replications, std::uint64_t seed, std::size_t jobs) {
    const auto report = expectation_report(parse_process(process), equispaced(n, 1.0), parse_estimator(estimator),
                                           replications, seed, jobs);
    const auto z = report.z_score();
    std::ostringstream d;
    d << process << ' ' << estimator << " N=" << n << " analytic="
      << (report.analytic ? format_shortest(*report.analytic) : "n/a") << " mc=" << format_shortest(report.mc_mean)
      << " se=" << format_shortest(report.mc_se) << " M=" << report.replications;
    if (z) d << " z=" << format_shortest(*z);
    return {"expectation-analytic-vs-mc", z && std::abs(*z) <= kZLimit, d.str()};
}

VerifyCheck guarded(const std::string &name, const std::function<VerifyCheck()> &body) {
    try {
        return body();
    } catch (const std::exception &e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

} // namespace

std::vector<VerifyCheck> run_verification(bool quick, std::uint64_t seed, std::size_t jobs) {
    const std::size_t fuzz = quick ? 60 : 500;
    const std::size_t replications = quick ? 400 : 2000;
    std::vector<VerifyCheck> out;
    out.push_back(guarded("ml-equals-mean-lpo", [&] { return check_ml_lpo_identity(seed, quick ? 2 : 10); }));
    out.push_back(guarded("lpo-explicit-equals-enumeration", [&] { return check_lpo_explicit(seed, quick ? 8 : 10); }));
    out.push_back(guarded("posterior-closed-form-equals-dense", [&] { return check_posterior(seed, fuzz); }));
    out.push_back(guarded("estimators-closed-form-equal-dense", [&] { return check_estimators(seed, fuzz); }));
    out.push_back(guarded("tridiagonal-inverse-times-gram", [&] { return check_tridiagonal(seed, 64); }));
    struct Case {
        const char *process;
        const char *estimator;
        std::size_t n;
    };
    const Case cases[] = {{"bm", "cv", 64},        {"bm", "ml", 64},         {"fbm:0.3", "cv", 64},
                          {"fbm:0.7", "ml", 64},   {"ifbm:0.75", "cv", 32},  {"ifbm:0.75", "icv", 32},
                          {"ou:0.2", "cv", 64}};
    std::uint64_t k = 0;
    for (const auto &c : cases) {
        out.push_back(guarded("expectation-analytic-vs-mc", [&] {
            return check_expectation(c.process, c.estimator, c.n, replications, derive_seed(seed, 100, k), jobs);
        }));
        ++k;
    }
    return out;
}

} // namespace gpsc::cli
