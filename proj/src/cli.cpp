#include "fuzzy/cli.hpp"

#include "fuzzy/certify.hpp"
#include "fuzzy/fitting.hpp"
#include "fuzzy/linalg.hpp"
#include "fuzzy/projections.hpp"
#include "fuzzy/spin_rep.hpp"
#include "fuzzy/toeplitz.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

namespace fuzzy {

RunOutput cmd_quantize(const RunConfig& config) {
    RunOutput out;
    for (int N : config.ns) {
        const QuantizationConfig cfg = make_config(N, config.band);
        const SpinOperators J = build_spin(N);
        const double scale = 2.0 / (N + 2.0);
        const CMatrix gens[3] = {J.J1, J.J2, J.J3};

        ResultRecord rec;
        rec.set("N", N);
        rec.set("hbar", cfg.hbar);
        double worst = 0.0;
        CMatrix casimir = CMatrix::Zero(N + 1, N + 1);
        for (int i = 1; i <= 3; ++i) {
            const CMatrix T = toeplitz_op(cfg, coordinate_function(i));
            const double res = operator_norm(T - scale * gens[i - 1]);
            rec.set("coord_residual_" + std::to_string(i), res);
            worst = std::max(worst, res);
            casimir += T * T;
        }
        rec.set("coord_residual_max", worst);
        const double casimir_target = static_cast<double>(N) / (N + 2.0);
        rec.set("casimir_residual",
                operator_norm(casimir - casimir_target * CMatrix::Identity(N + 1, N + 1)));
        rec.set("toeplitz_norm_x3",
                operator_norm(toeplitz_op(cfg, coordinate_function(3))));
        if (rec.as_double("coord_residual_max") > config.tol ||
            rec.as_double("casimir_residual") > config.tol) {
            out.numerical_failure = true;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

RunOutput cmd_scan_dirac(const RunConfig& config) {
    RunOutput out;
    const SphereFunction x1 = coordinate_function(1);
    const SphereFunction x2 = coordinate_function(2);

    std::vector<double> hbars, residuals;
    for (int N : config.ns) {
        const QuantizationConfig cfg = make_config(N, config.band);
        const double res = dirac_residual(cfg, x1, x2);
        const double closed = 4.0 / ((N + 2.0) * (N + 2.0));

        ResultRecord rec;
        rec.set("N", N);
        rec.set("hbar", cfg.hbar);
        rec.set("dirac_residual", res);
        rec.set("closed_form", closed);
        rec.set("rel_error", std::abs(res - closed) / closed);
        if (rec.as_double("rel_error") > config.tol) out.numerical_failure = true;
        hbars.push_back(cfg.hbar);
        residuals.push_back(res);
        out.records.push_back(std::move(rec));
    }

    const bool enough = config.ns.size() >= 3;
    if (!enough) {
        std::cerr << "warning: fewer than 3 scan points, slope omitted\n";
    }
    const double slope = enough ? loglog_slope(hbars, residuals) : 0.0;
    for (auto& rec : out.records) {
        rec.set("warning_too_few_points", enough ? 0 : 1);
        if (enough) rec.set("slope", slope);
    }
    return out;
}

RunOutput cmd_certify(const RunConfig& config) {
    RunOutput out;
    const ScanGrid scan(config.ns, config.band);
    PipelineOptions opt;
    opt.eps = config.perturb_eps;
    opt.seed = config.seed;
    opt.squash_rounds = config.squash_rounds;
    opt.band_out = config.band;
    const PipelineResult result = certify_pipeline(scan, opt);

    const std::size_t n_theta_coeffs = result.theta.tail.size();
    for (const PipelineEntry& e : result.entries) {
        ResultRecord rec;
        rec.set("N", e.N);
        rec.set("hbar", e.hbar);
        rec.set("error", e.ok ? 0 : 1);
        rec.set("alpha", e.cert.alpha);
        rec.set("beta", e.cert.beta);
        rec.set("k", e.cert.k_candidates.empty()
                         ? static_cast<long long>(0)
                         : static_cast<long long>(e.cert.k_candidates.front()));
        rec.set("n_candidates", static_cast<long long>(e.cert.k_candidates.size()));
        rec.set("unique", e.cert.unique ? 1 : 0);
        rec.set("status", static_cast<int>(e.cert.status));
        rec.set("relation_residual_max", e.relation_residual_max);
        rec.set("spec_margin", e.spec_margin);
        rec.set("spread_before", e.spread_before);
        rec.set("spread_after", e.spread_after);
        rec.set("tau_mid", e.tau_mid);
        rec.set("width", e.width);
        rec.set("integer_distance", e.integer_distance);
        for (std::size_t j = 0; j < n_theta_coeffs; ++j) {
            rec.set("theta_c" + std::to_string(j), result.theta.tail[j]);
        }
        rec.set("theta_fit_residual", result.theta.fit_residual);
        rec.set("theta_leading_unconstrained", result.theta.leading_unconstrained);
        if (!e.ok || e.cert.status == CertStatus::Violation ||
            e.relation_residual_max > config.tol) {
            out.numerical_failure = true;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

RunOutput cmd_exclusions(const RunConfig& config) {
    RunOutput out;
    struct Point {
        int index;
        double hbar;
        bool excluded;
    };
    std::vector<Point> points;
    for (int N : config.ns) points.push_back({N, 2.0 / N, false});
    const std::vector<double> excl =
        excluded_points(config.c, config.ns.front(), config.ns.back());
    {
        std::size_t i = 0;
        for (int k = config.ns.front(); k <= config.ns.back(); ++k) {
            if (k - config.c + 0.5 > 0.0) points.push_back({k, excl[i++], true});
        }
    }
    std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) {
        if (p.hbar != q.hbar) return p.hbar > q.hbar;
        return p.excluded < q.excluded;
    });

    for (const Point& p : points) {
        bool collision = false;
        for (const Point& q : points) {
            if (q.excluded != p.excluded && std::abs(q.hbar - p.hbar) < 1e-12) {
                collision = true;
            }
        }
        ResultRecord rec;
        rec.set("N", p.index);
        rec.set("hbar", p.hbar);
        rec.set("excluded", p.excluded ? 1 : 0);
        rec.set("collision", collision ? 1 : 0);
        out.records.push_back(std::move(rec));
    }
    return out;
}

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--ns", config.ns, "comma-separated list of N values")
        ->delimiter(',')
        ->required();
    cmd->add_option("--band", config.band, "classical band limit");
    cmd->add_option("--tol", config.tol, "numerical-failure threshold");
    cmd->add_option("--perturb-eps", config.perturb_eps, "perturbation strength");
    cmd->add_option("--seed", config.seed, "seed for all pseudo-randomness");
    cmd->add_option("--squash-rounds", config.squash_rounds,
                    "trace-flattening rounds in the certify pipeline");
    cmd->add_option("--format", config.format, "output format: json|csv");
    cmd->add_option("--out", config.out, "output path (default: stdout)");
    cmd->add_option("--c", config.c, "constant term of the trace density");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"fuzzysphere: operator scans for the quantized sphere"};
    app.require_subcommand(1);

    RunConfig config;
    add_common_flags(app.add_subcommand("quantize", "coordinate quantization residuals"),
                     config);
    add_common_flags(
        app.add_subcommand("scan-dirac", "bracket residual scan with slope fit"),
        config);
    add_common_flags(app.add_subcommand("certify", "integer certification pipeline"),
                     config);
    add_common_flags(
        app.add_subcommand("exclusions", "excluded vs allowed parameter values"),
        config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    try {
        config.validate();
    } catch (const std::exception& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    }

    RunOutput result;
    try {
        if (config.command == "quantize") {
            result = cmd_quantize(config);
        } else if (config.command == "scan-dirac") {
            result = cmd_scan_dirac(config);
        } else if (config.command == "certify") {
            result = cmd_certify(config);
        } else {
            result = cmd_exclusions(config);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }

    const std::string payload = config.format == "json"
                                    ? emit_json(config, result.records)
                                    : emit_csv(result.records);
    if (config.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream os(config.out, std::ios::binary);
        if (!os) {
            std::cerr << "error: cannot open output path " << config.out << "\n";
            return 1;
        }
        os << payload;
    }
    return result.numerical_failure ? 1 : 0;
}

}  // namespace fuzzy
