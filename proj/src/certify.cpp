#include "fuzzy/certify.hpp"

#include "fuzzy/fitting.hpp"

#include <algorithm>
#include <cmath>

namespace fuzzy {

namespace {

double dist_to_set(double x, const std::vector<double>& set) {
    double d = std::numeric_limits<double>::infinity();
    for (double s : set) d = std::min(d, std::abs(x - s));
    return d;
}

std::vector<double> to_vector(const RVector& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

double spectrum_sum_margin(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("spectrum_sum_margin: dimension mismatch");
    }
    const std::vector<double> spec_a = to_vector(eigh(a).eigenvalues);
    const std::vector<double> spec_ab = to_vector(eigh(a + b).eigenvalues);
    const double norm_b = operator_norm(b);
    double margin = std::numeric_limits<double>::infinity();
    for (double lambda : spec_ab) {
        margin = std::min(margin, norm_b - dist_to_set(lambda, spec_a));
    }
    return margin;
}

BlockDecomposition block_decompose(const Block2& e) {
    const Eigen::Index n = e.block_dim();
    BlockDecomposition d;
    d.Z = e.a;
    d.X = e.b;
    d.W = CMatrix::Identity(n, n) - e.d;
    d.r_z_hermitian = operator_norm(d.Z - d.Z.adjoint());
    d.r_w_hermitian = operator_norm(d.W - d.W.adjoint());
    d.r_intertwine = operator_norm(d.Z * d.X - d.X * d.W);
    d.r_z_defect =
        operator_norm(d.Z * (CMatrix::Identity(n, n) - d.Z) - d.X * d.X.adjoint());
    d.r_w_defect =
        operator_norm(d.W * (CMatrix::Identity(n, n) - d.W) - d.X.adjoint() * d.X);
    return d;
}

std::pair<double, double> trace_bounds(const Block2& e) {
    const Eigen::Index n = e.block_dim();
    const CMatrix defect = partial_trace(e) - CMatrix::Identity(n, n);
    const Spectrum s = eigh(0.5 * (defect + CMatrix(defect.adjoint())));
    return {s.eigenvalues(0), s.eigenvalues(s.eigenvalues.size() - 1)};
}

IntegerCertificate extract_integer(double alpha, double beta, double slack) {
    if (alpha > beta) {
        throw std::invalid_argument("extract_integer: alpha must not exceed beta");
    }
    IntegerCertificate cert;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.slack = slack;

    const double lo = alpha - slack;
    const double hi = beta + slack;
    if (lo <= 0.0 && 0.0 <= hi) {
        cert.status = CertStatus::Inconclusive;
        return cert;
    }

    // Both bounds share a sign; 1/k lands inside [lo, hi] only for k of that
    // sign with |k| <= 1/min(|lo|, |hi|) + 1.
    const double small = std::min(std::abs(lo), std::abs(hi));
    const long k_cap =
        static_cast<long>(std::ceil(1.0 / std::max(small, 1e-18))) + 1;
    const long sign = lo > 0.0 ? 1 : -1;
    for (long mag = 1; mag <= k_cap; ++mag) {
        const long k = sign * mag;
        const double recip = 1.0 / static_cast<double>(k);
        if (recip >= lo && recip <= hi) cert.k_candidates.push_back(k);
    }
    std::sort(cert.k_candidates.begin(), cert.k_candidates.end());
    cert.status =
        cert.k_candidates.empty() ? CertStatus::Violation : CertStatus::Certified;
    cert.unique = cert.k_candidates.size() == 1;
    return cert;
}

double spec_union_margin(const BlockDecomposition& d) {
    std::vector<double> sz = to_vector(eigh(0.5 * (d.Z + CMatrix(d.Z.adjoint()))).eigenvalues);
    std::vector<double> sw = to_vector(eigh(0.5 * (d.W + CMatrix(d.W.adjoint()))).eigenvalues);
    sz.push_back(0.0);
    sz.push_back(1.0);
    sw.push_back(0.0);
    sw.push_back(1.0);
    double h = 0.0;
    for (double x : sz) h = std::max(h, dist_to_set(x, sw));
    for (double y : sw) h = std::max(h, dist_to_set(y, sz));
    return h;
}

double LaurentPolynomial::eval(double hbar) const {
    double acc = 2.0 / hbar;
    double p = 1.0;
    for (double cj : tail) {
        acc += cj * p;
        p *= hbar;
    }
    return acc;
}

LaurentPolynomial fit_theta(const std::vector<ThetaSample>& samples, int degree) {
    if (samples.size() < static_cast<std::size_t>(degree + 2)) {
        throw std::invalid_argument("fit_theta: need at least degree+2 samples");
    }
    std::vector<double> hs, ys, weights;
    for (const auto& s : samples) {
        if (s.tau == 0.0) {
            throw std::invalid_argument("fit_theta: tau sample must be nonzero");
        }
        hs.push_back(s.hbar);
        ys.push_back(1.0 / s.tau - 2.0 / s.hbar);
        const double sigma = std::max(s.width, 1e-14);
        weights.push_back(1.0 / (sigma * sigma));
    }
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            if (hs[i] == hs[j]) {
                throw std::invalid_argument("fit_theta: duplicated hbar sample");
            }
        }
    }

    const Eigen::VectorXd coeffs = polyfit(hs, ys, degree, &weights);
    LaurentPolynomial theta;
    theta.tail.assign(coeffs.data(), coeffs.data() + coeffs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        theta.fit_residual =
            std::max(theta.fit_residual, std::abs(ys[i] - polyval(coeffs, hs[i])));
    }

    // Diagnostic fit with the 1/hbar coefficient left free.
    {
        const Eigen::Index n = static_cast<Eigen::Index>(hs.size());
        Eigen::MatrixXd V(n, degree + 2);
        Eigen::VectorXd b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = std::sqrt(weights[i]);
            V(i, 0) = w / hs[i];
            double p = 1.0;
            for (int j = 0; j <= degree; ++j) {
                V(i, j + 1) = w * p;
                p *= hs[i];
            }
            b(i) = w / samples[i].tau;
        }
        theta.leading_unconstrained = V.colPivHouseholderQr().solve(b)(0);
    }
    return theta;
}

std::vector<double> integer_distance_scan(const LaurentPolynomial& theta,
                                          const std::vector<double>& hbars) {
    std::vector<double> out;
    out.reserve(hbars.size());
    for (double h : hbars) {
        const double v = theta.eval(h);
        out.push_back(std::abs(v - std::round(v)));
    }
    return out;
}

std::vector<double> excluded_points(double c, int k_min, int k_max) {
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) {
        const double denom = k - c + 0.5;
        if (denom > 0.0) out.push_back(2.0 / denom);
    }
    return out;
}

PipelineResult certify_pipeline(const ScanGrid& scan, const PipelineOptions& opt) {
    PipelineResult result;
    std::vector<ThetaSample> samples;

    for (const QuantizationConfig& cfg : scan.points) {
        PipelineEntry entry;
        entry.N = cfg.N;
        entry.hbar = cfg.hbar;
        try {
            QuantizerFn map = toeplitz_map(cfg);
            if (opt.eps > 0.0) {
                map = unitalize(PerturbedMap::make(cfg, opt.eps, opt.seed).fn()).fn();
            }
            const Block2 quantized = quantize_block(bott_projection(), map);
            const Block2 projection = purify_spectral(quantized);

            Block2 u = 2.0 * projection - Block2::identity(cfg.N + 1);
            const int band_out = std::min(opt.band_out, cfg.band_limit);
            SquashReport last{};
            bool first_round = true;
            for (int round = 0; round < opt.squash_rounds; ++round) {
                auto [next, rep] = squash_correct(cfg, u, band_out);
                u = next;
                if (first_round) {
                    entry.spread_before = rep.spread_before;
                    first_round = false;
                }
                last = rep;
            }
            const Block2 final_e =
                0.5 * (u + Block2::identity(cfg.N + 1));
            if (opt.squash_rounds == 0) {
                const auto [alpha0, beta0] = trace_bounds(final_e);
                entry.spread_before = beta0 - alpha0;
                entry.spread_after = entry.spread_before;
            } else {
                entry.spread_after = last.spread_after;
            }

            const BlockDecomposition dec = block_decompose(final_e);
            entry.relation_residual_max = dec.max_residual();
            entry.spec_margin = spec_union_margin(dec);
            const auto [alpha, beta] = trace_bounds(final_e);
            entry.cert = extract_integer(alpha, beta);
            entry.tau_mid = 0.5 * (alpha + beta);
            entry.width = beta - alpha;
            entry.ok = true;
        } catch (const std::exception& ex) {
            entry.ok = false;
            entry.error = ex.what();
            result.any_failed = true;
        }
        result.entries.push_back(std::move(entry));
    }

    for (const PipelineEntry& e : result.entries) {
        if (e.ok && e.tau_mid != 0.0) {
            samples.push_back({e.hbar, e.tau_mid, e.width});
        }
    }
    if (samples.size() >= static_cast<std::size_t>(opt.theta_degree + 2)) {
        result.theta = fit_theta(samples, opt.theta_degree);
        for (PipelineEntry& e : result.entries) {
            if (!e.ok) continue;
            const double v = result.theta.eval(e.hbar);
            e.integer_distance = std::abs(v - std::round(v));
        }
    }
    return result;
}

}  // namespace fuzzy
