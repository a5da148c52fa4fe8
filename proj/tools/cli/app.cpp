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

#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "experiment_config.hpp"
#include "gpsc/analysis.hpp"
#include "gpsc/csv.hpp"
#include "gpsc/error.hpp"
#include "gpsc/estimators.hpp"
#include "gpsc/posterior.hpp"
#include "gpsc/sampling.hpp"
#include "io.hpp"
#include "verify.hpp"

namespace gpsc::cli {

namespace {

constexpr const char *kFloatFormat = "float_format=%.17g";

struct Common {
    std::string out_dir = ".";
    std::size_t jobs = 0;
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--out", c.out_dir, "Directory that output paths are relative to")->capture_default_str();
    sub->add_option("--jobs", c.jobs, "Worker threads (0: all cores); results do not depend on it")
        ->capture_default_str();
}

std::string fmt(double v) { return format_double(v); }

std::vector<std::string> provenance_header(const std::string &command, const FlatConfig &cfg) {
    return {"gpsc " + command, "config_hash=" + cfg.hash(), kFloatFormat};
}

void write_header(std::ostream &out, const std::vector<std::string> &lines) {
    for (const auto &l : lines) out << "# " << l << '\n';
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag) return *flag;
    return seed_from_environment().value_or(0);
}

bool is_unit_bm(const Kernel &k) { return k.is_brownian_motion() && k.scale() == 1.0; }

// sample -------------------------------------------------------------------

struct SampleArgs {
    Common common;
    std::string process;
    std::size_t n = 0;
    double T = 1.0;
    std::string partition = "equispaced";
    double c_qu = 2.0;
    std::uint64_t partition_seed = 0;
    std::optional<std::uint64_t> seed;
    bool circulant = false;
    std::string output = "sample.csv";
};

int cmd_sample(const SampleArgs &a, std::ostream &out) {
    const auto process = parse_process(a.process);
    PartitionSpec ps{parse_partition_kind(a.partition), a.T, a.c_qu, a.partition_seed};
    if (a.n == 0) throw std::invalid_argument("--n must be >= 1");
    const auto p = make_partition(ps, a.n);
    const std::uint64_t seed = resolve_seed(a.seed);
    SamplerOptions opts;
    opts.circulant = a.circulant;
    const auto s = sample(process, p, seed, opts);

    FlatConfig cfg;
    cfg.set("process", describe(process));
    cfg.set("n", static_cast<double>(a.n));
    cfg.set("T", a.T);
    cfg.set("partition", to_string(ps.kind));
    cfg.set("c_qu", a.c_qu);
    cfg.set("partition_seed", static_cast<double>(a.partition_seed));
    cfg.set("seed", static_cast<double>(seed));
    cfg.set("circulant", a.circulant);
    auto meta = provenance_header("sample", cfg);
    meta.push_back("partition=" + to_string(ps.kind) + " c_qu=" + fmt(a.c_qu) +
                   " partition_seed=" + std::to_string(a.partition_seed));
    const OutputDir dir(a.common.out_dir);
    auto file = dir.open(a.output);
    write_sample_csv(file, s, meta);
    out << "wrote " << dir.resolve(a.output).string() << " (N=" << s.size() << ")\n";
    return kExitOk;
}

// predict ------------------------------------------------------------------

struct PredictArgs {
    Common common;
    std::string kernel = "bm";
    std::string data;
    std::optional<double> sigma2;
    std::optional<std::string> estimator;
    std::vector<double> xs;
    std::size_t per_cell = 4;
    std::string output = "predict.csv";
};

int cmd_predict(const PredictArgs &a, std::ostream &out) {
    const auto kernel = parse_kernel(a.kernel);
    const auto s = read_data_csv(a.data);
    if (a.sigma2 && a.estimator) throw std::invalid_argument("give either --sigma2 or --estimator, not both");
    double sigma2 = a.sigma2.value_or(1.0);
    std::string sigma_source = a.sigma2 ? "given" : "default";
    if (a.estimator) {
        const auto spec = parse_estimator(*a.estimator);
        sigma2 = estimate(spec, kernel, s.partition, s.values).value;
        sigma_source = describe(spec);
    }
    if (!(sigma2 >= 0.0)) throw std::invalid_argument("sigma2 must be non-negative");
    const Posterior post = is_unit_bm(kernel) ? Posterior(s.partition, s.values, sigma2)
                                              : Posterior(kernel, s.partition, s.values, sigma2);
    std::vector<double> grid = a.xs;
    if (grid.empty()) {
        if (a.per_cell == 0) throw std::invalid_argument("--per-cell must be >= 1");
        grid = calibration_grid(s.partition, a.per_cell);
        const auto pts = s.partition.points();
        grid.insert(grid.end(), pts.begin(), pts.end());
        std::sort(grid.begin(), grid.end());
    }

    FlatConfig cfg;
    cfg.set("kernel", kernel.describe());
    cfg.set("data", a.data);
    cfg.set("sigma2", sigma2);
    cfg.set("sigma2_source", sigma_source);
    auto meta = provenance_header("predict", cfg);
    meta.push_back("kernel=" + kernel.describe() + " sigma2=" + fmt(sigma2) + " sigma2_source=" + sigma_source +
                   " N=" + std::to_string(s.size()));
    const OutputDir dir(a.common.out_dir);
    auto file = dir.open(a.output);
    write_header(file, meta);
    write_row(file, {"x", "mean", "sd", "variance"});
    for (double x : grid) write_row(file, {fmt(x), fmt(post.mean(x)), fmt(post.sd(x)), fmt(post.variance(x))});
    out << "wrote " << dir.resolve(a.output).string() << " (" << grid.size() << " points, sigma2=" << fmt(sigma2)
        << ")\n";
    return kExitOk;
}

// estimate -----------------------------------------------------------------

struct EstimateArgs {
    Common common;
    std::string kernel = "bm";
    std::vector<std::string> estimators;
    std::string data;
    std::optional<std::string> output;
};

int cmd_estimate(const EstimateArgs &a, std::ostream &out) {
    const auto kernel = parse_kernel(a.kernel);
    const auto s = read_data_csv(a.data);
    std::vector<std::pair<EstimatorSpec, ScaleEstimate>> results;
    for (const auto &e : a.estimators) {
        const auto spec = parse_estimator(e);
        results.emplace_back(spec, estimate(spec, kernel, s.partition, s.values));
    }
    for (const auto &[spec, r] : results) {
        out << describe(spec) << " sigma2=" << fmt(r.value);
        if (r.decomposition) {
            out << " B1=" << fmt(r.decomposition->b1) << " I=" << fmt(r.decomposition->interior)
                << " B2=" << fmt(r.decomposition->b2);
        }
        out << " N=" << r.n << '\n';
    }
    if (a.output) {
        FlatConfig cfg;
        cfg.set("kernel", kernel.describe());
        cfg.set("data", a.data);
        std::vector<ConfigScalar> names(a.estimators.begin(), a.estimators.end());
        cfg.set("estimators", names);
        const OutputDir dir(a.common.out_dir);
        auto file = dir.open(*a.output);
        write_header(file, provenance_header("estimate", cfg));
        write_row(file, {"estimator", "sigma2", "b1", "interior", "b2", "n"});
        for (const auto &[spec, r] : results) {
            const auto d = r.decomposition;
            write_row(file, {describe(spec), fmt(r.value), d ? fmt(d->b1) : "", d ? fmt(d->interior) : "",
                             d ? fmt(d->b2) : "", std::to_string(r.n)});
        }
    }
    return kExitOk;
}

// experiment ---------------------------------------------------------------

struct ExperimentArgs {
    Common common;
    std::string config;
    bool emit_plot_data = false;
};

std::optional<double> reference_for(const std::string &quantity, const SweepConfig &s) {
    const auto sm = smoothness(s.process);
    if (!sm) return std::nullopt;
    for (const auto &e : s.estimators) {
        if (describe(e) == quantity) return reference_rate_exponent(e.kind, *sm);
    }
    return std::nullopt;
}

std::string join_ns(const std::vector<std::size_t> &ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
    return s;
}

void write_fit_line(std::ostream &out, const QuantityFit &f, const std::optional<double> &reference,
                    const std::string &statistic = {}) {
    out << "quantity=" << f.quantity;
    if (f.fit) {
        out << " exponent=" << fmt(f.fit->exponent) << " intercept=" << fmt(f.fit->intercept)
            << " r_squared=" << fmt(f.fit->r_squared) << " statistic=" << (statistic.empty() ? to_string(f.fit->statistic) : statistic)
            << " ns=" << join_ns(f.fit->ns);
    } else {
        out << " exponent=n/a";
    }
    out << " reference=" << (reference ? fmt(*reference) : "n/a");
    if (!f.note.empty()) out << " note=\"" << f.note << '"';
    out << '\n';
}

int cmd_experiment(const ExperimentArgs &a, std::ostream &out) {
    auto exp = experiment_from_config(FlatConfig::load(a.config), seed_from_environment());
    exp.sweep.jobs = a.common.jobs;
    const auto &s = exp.sweep;
    const auto result = rate_sweep(s);

    auto header = provenance_header("experiment", exp.source);
    header.push_back("name=" + exp.name + " process=" + describe(s.process) + " model=" + s.model.describe() +
                     " seed=" + std::to_string(s.seed) + " replications=" + std::to_string(s.replications) +
                     " partition=" + to_string(s.partition.kind));
    const OutputDir dir(a.common.out_dir);

    std::vector<std::string> quantities;
    for (const auto &row : result.raw) {
        if (std::find(quantities.begin(), quantities.end(), row.quantity) == quantities.end()) {
            quantities.push_back(row.quantity);
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::optional<double>>> wide;
    for (const auto &row : result.raw) {
        auto &slot = wide[{row.n, row.replication}];
        slot.resize(quantities.size());
        const auto q = std::find(quantities.begin(), quantities.end(), row.quantity) - quantities.begin();
        slot[static_cast<std::size_t>(q)] = row.value;
    }
    {
        auto file = dir.open("raw.csv");
        write_header(file, header);
        std::vector<std::string> cols{"n", "replication"};
        cols.insert(cols.end(), quantities.begin(), quantities.end());
        write_row(file, cols);
        for (const auto &[key, vals] : wide) {
            std::vector<std::string> fields{std::to_string(key.first), std::to_string(key.second)};
            for (const auto &v : vals) fields.push_back(v ? fmt(*v) : "");
            write_row(file, fields);
        }
    }
    {
        auto file = dir.open("summary.csv");
        write_header(file, header);
        write_row(file, {"quantity", "n", "median", "mean", "se", "count"});
        for (const auto &r : result.summary) {
            write_row(file, {r.quantity, std::to_string(r.n), fmt(r.median), fmt(r.mean), fmt(r.se),
                             std::to_string(r.count)});
        }
    }
    {
        auto file = dir.open("ratefit.txt");
        write_header(file, header);
        file << "# least squares on (log N, log statistic), smallest " << s.drop_smallest << " N dropped\n";
        for (const auto &f : result.fits) write_fit_line(file, f, reference_for(f.quantity, s));
    }
    if (a.emit_plot_data) {
        auto file = dir.open("plot_data.csv");
        write_header(file, header);
        write_row(file, {"quantity", "n", "series", "value"});
        for (const auto &r : result.summary) {
            write_row(file, {r.quantity, std::to_string(r.n), "median", fmt(r.median)});
            write_row(file, {r.quantity, std::to_string(r.n), "mean", fmt(r.mean)});
            write_row(file, {r.quantity, std::to_string(r.n), "se", fmt(r.se)});
        }
        for (const auto &f : result.fits) {
            if (!f.fit) continue;
            const auto ref = reference_for(f.quantity, s);
            const double n_max = static_cast<double>(f.fit->ns.back());
            const double anchor = std::exp(f.fit->intercept) * std::pow(n_max, f.fit->exponent);
            for (const auto &r : result.summary) {
                if (r.quantity != f.quantity) continue;
                const double n = static_cast<double>(r.n);
                write_row(file, {r.quantity, std::to_string(r.n), "fit",
                                 fmt(std::exp(f.fit->intercept) * std::pow(n, f.fit->exponent))});
                if (ref) write_row(file, {r.quantity, std::to_string(r.n), "reference",
                                          fmt(anchor * std::pow(n / n_max, *ref))});
            }
        }
    }
    for (const auto &f : result.fits) write_fit_line(out, f, reference_for(f.quantity, s));
    out << "wrote raw.csv summary.csv ratefit.txt" << (a.emit_plot_data ? " plot_data.csv" : "") << " to "
        << dir.resolve(".").lexically_normal().string() << '\n';
    return kExitOk;
}

// calibration --------------------------------------------------------------

struct CalibrationArgs {
    Common common;
    std::string config;
};

int cmd_calibration(const CalibrationArgs &a, std::ostream &out) {
    auto setup = calibration_from_config(FlatConfig::load(a.config), seed_from_environment());
    setup.calibration.jobs = a.common.jobs;
    const auto &c = setup.calibration;
    const auto result = calibration_sweep(c);

    auto header = provenance_header("calibration", setup.source);
    header.push_back("name=" + setup.name + " truth=" + c.truth.describe() + " per_cell=" + std::to_string(c.per_cell) +
                     " replications=" + std::to_string(c.replications) + " seed=" + std::to_string(c.seed));
    const OutputDir dir(a.common.out_dir);
    {
        auto file = dir.open("calibration.csv");
        write_header(file, header);
        write_row(file, {"estimator", "n", "x", "numerator", "denominator", "ratio"});
        for (const auto &r : result.reports) {
            for (std::size_t i = 0; i < r.grid.size(); ++i) {
                write_row(file, {r.estimator, std::to_string(r.n), fmt(r.grid[i]), fmt(r.numerator[i]),
                                 fmt(r.denominator[i]), fmt(r.ratio[i])});
            }
        }
    }
    {
        auto file = dir.open("calibration_summary.csv");
        write_header(file, header);
        write_row(file, {"estimator", "n", "source", "expected_sigma2", "sup", "sup_x", "sup_se"});
        for (const auto &r : result.reports) {
            write_row(file, {r.estimator, std::to_string(r.n), r.source, fmt(r.expected_sigma2), fmt(r.sup),
                             fmt(r.sup_x), r.sup_se ? fmt(*r.sup_se) : ""});
        }
    }
    {
        auto file = dir.open("calibration_fit.txt");
        write_header(file, header);
        for (const auto &f : result.fits) write_fit_line(file, f, std::nullopt, "sup_ratio");
    }
    for (const auto &f : result.fits) write_fit_line(out, f, std::nullopt, "sup_ratio");
    out << "wrote calibration.csv calibration_summary.csv calibration_fit.txt to "
        << dir.resolve(".").lexically_normal().string() << '\n';
    return kExitOk;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
    Common common;
    bool quick = false;
    std::optional<std::uint64_t> seed;
};

int cmd_verify(const VerifyArgs &a, std::ostream &out) {
    const auto checks = run_verification(a.quick, resolve_seed(a.seed), a.common.jobs);
    std::size_t failed = 0;
    for (const auto &c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        failed += c.passed ? 0 : 1;
    }
    out << (failed == 0 ? "verify: all " : "verify: ") << (checks.size() - failed) << "/" << checks.size()
        << " checks passed\n";
    return failed == 0 ? kExitOk : kExitVerification;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gaussian-process scale estimation: sampling, estimators and rate experiments", "gpsc"};
    app.require_subcommand(1);

    SampleArgs sa;
    auto *sample_cmd = app.add_subcommand("sample", "Draw a test function on a partition and write x,f CSV");
    add_common(sample_cmd, sa.common);
    sample_cmd->add_option("--process", sa.process, "Process spec, e.g. bm, fbm:0.2, ifbm:0.75, sine-step")
        ->required();
    sample_cmd->add_option("--n", sa.n, "Number of points")->required();
    sample_cmd->add_option("--T", sa.T, "Domain length")->capture_default_str();
    sample_cmd->add_option("--partition", sa.partition, "equispaced or quasi-uniform")->capture_default_str();
    sample_cmd->add_option("--c-qu", sa.c_qu, "Quasi-uniformity bound")->capture_default_str();
    sample_cmd->add_option("--partition-seed", sa.partition_seed, "Seed for quasi-uniform points")
        ->capture_default_str();
    sample_cmd->add_option("--seed", sa.seed, "Sample seed (default: GPSC_SEED or 0)");
    sample_cmd->add_flag("--circulant", sa.circulant, "Circulant embedding for FBM on equispaced grids");
    sample_cmd->add_option("--output", sa.output, "Output CSV")->capture_default_str();

    PredictArgs pa;
    auto *predict_cmd = app.add_subcommand("predict", "Posterior mean and standard deviation from x,f data");
    add_common(predict_cmd, pa.common);
    predict_cmd->add_option("--kernel", pa.kernel, "Model kernel spec")->capture_default_str();
    predict_cmd->add_option("data", pa.data, "Data CSV")->required();
    predict_cmd->add_option("--sigma2", pa.sigma2, "Scale parameter (default 1)");
    predict_cmd->add_option("--estimator", pa.estimator, "Estimate the scale from the data: ml, cv, icv, lpo:p");
    predict_cmd->add_option("--x", pa.xs, "Query points (comma-separated)")->delimiter(',');
    predict_cmd->add_option("--per-cell", pa.per_cell, "Interior grid points per cell when --x is absent")
        ->capture_default_str();
    predict_cmd->add_option("--output", pa.output, "Output CSV")->capture_default_str();

    EstimateArgs ea;
    auto *estimate_cmd = app.add_subcommand("estimate", "Scale-parameter estimates from x,f data");
    add_common(estimate_cmd, ea.common);
    estimate_cmd->add_option("--kernel", ea.kernel, "Model kernel spec")->capture_default_str();
    estimate_cmd->add_option("--estimator", ea.estimators, "ml, cv, icv or lpo:p (repeatable)")->required();
    estimate_cmd->add_option("data", ea.data, "Data CSV")->required();
    estimate_cmd->add_option("--output", ea.output, "Also write the estimates as CSV");

    ExperimentArgs xa;
    auto *experiment_cmd = app.add_subcommand("experiment", "Monte-Carlo rate sweep from a config file");
    add_common(experiment_cmd, xa.common);
    experiment_cmd->add_option("config", xa.config, "Flat-key TOML config")->required();
    experiment_cmd->add_flag("--emit-plot-data", xa.emit_plot_data, "Also write tidy plot_data.csv");

    CalibrationArgs ca;
    auto *calibration_cmd = app.add_subcommand("calibration", "Calibration ratio sweep from a config file");
    add_common(calibration_cmd, ca.common);
    calibration_cmd->add_option("config", ca.config, "Flat-key TOML config")->required();

    VerifyArgs va;
    auto *verify_cmd = app.add_subcommand("verify", "Identity, closed-form and expectation self-checks");
    add_common(verify_cmd, va.common);
    verify_cmd->add_flag("--quick", va.quick, "Smaller fuzz counts and replication budgets");
    verify_cmd->add_option("--seed", va.seed, "Master seed (default: GPSC_SEED or 0)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            for (auto *sub : app.get_subcommands()) out << sub->help();
            return kExitOk;
        }
        err << "gpsc: " << e.what() << '\n';
        return kExitInvalidArgs;
    }

    try {
        if (sample_cmd->parsed()) return cmd_sample(sa, out);
        if (predict_cmd->parsed()) return cmd_predict(pa, out);
        if (estimate_cmd->parsed()) return cmd_estimate(ea, out);
        if (experiment_cmd->parsed()) return cmd_experiment(xa, out);
        if (calibration_cmd->parsed()) return cmd_calibration(ca, out);
        if (verify_cmd->parsed()) return cmd_verify(va, out);
    } catch (const std::invalid_argument &e) {
        err << "gpsc: invalid argument: " << e.what() << '\n';
        return kExitInvalidArgs;
    } catch (const std::out_of_range &e) {
        err << "gpsc: invalid argument: " << e.what() << '\n';
        return kExitInvalidArgs;
    } catch (const NumericalError &e) {
        err << "gpsc: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const VerificationError &e) {
        err << "gpsc: verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception &e) {
        err << "gpsc: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInvalidArgs;
}

} // namespace gpsc::cli
