#include "fuzzy/toeplitz.hpp"

#include "fuzzy/fitting.hpp"
#include "fuzzy/rng.hpp"

#include <cmath>
#include <numbers>

namespace fuzzy {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

Eigen::MatrixXcd azimuthal_phases(const QuadratureGrid& g, int max_d) {
    Eigen::MatrixXcd phases(g.n_phi, 2 * max_d + 1);
    for (int j = 0; j < g.n_phi; ++j) {
        for (int d = -max_d; d <= max_d; ++d) {
            phases(j, max_d + d) = std::polar(1.0, d * g.phi(j));
        }
    }
    return phases;
}

void check_band(const QuantizationConfig& cfg, const SphereFunction& f,
                const char* who) {
    if (f.band() > cfg.band_limit) {
        throw precondition_error(std::string(who) + ": band exceeds the config limit",
                                 static_cast<double>(f.band()));
    }
}

}  // namespace

QuantizationConfig make_config(int N, int L) {
    if (N < 0 || L < 0)
        throw std::invalid_argument("make_config: N and L must be nonnegative");
    // Integrands pair two frame sections (u-degree N, azimuthal frequency up
    // to N) with a band-<=L function; analyze() at band L additionally needs
    // 2L+1 azimuthal nodes.
    const int n_theta = N + L + 8;
    const int n_phi = std::max(N + L + 8, 2 * L + 2);
    QuantizationConfig cfg;
    cfg.N = N;
    cfg.hbar = N > 0 ? 2.0 / N : std::numeric_limits<double>::infinity();
    cfg.band_limit = L;
    cfg.frame = build_frame(N, make_grid(n_theta, n_phi));
    return cfg;
}

CMatrix toeplitz_op(const QuantizationConfig& cfg, const SphereFunction& f) {
    check_band(cfg, f, "toeplitz_op");
    const QuadratureGrid& g = *cfg.grid();
    const int N = cfg.N;
    const GridField field = synthesize(f, cfg.grid());

    // F(i, N+d) = (2 pi / n_phi) sum_j field(i,j) e^{i d phi_j}
    const Eigen::MatrixXcd phases = azimuthal_phases(g, N);
    const double wphi = 2.0 * std::numbers::pi / g.n_phi;
    const Eigen::MatrixXcd F = wphi * (field.values * phases);

    CMatrix T = CMatrix::Zero(N + 1, N + 1);
    const double pref = (N + 1) / kFourPi;
    for (int k = 0; k <= N; ++k) {
        for (int l = 0; l <= N; ++l) {
            cplx acc = 0.0;
            for (int i = 0; i < g.n_theta; ++i) {
                acc += g.w(i) * cfg.frame.rho(i, k) * cfg.frame.rho(i, l) *
                       F(i, N + k - l);
            }
            T(k, l) = pref * acc;
        }
    }
    return T;
}

QuantizerFn toeplitz_map(const QuantizationConfig& cfg) {
    return [cfg](const SphereFunction& f) { return toeplitz_op(cfg, f); };
}

GridField berezin_symbol(const QuantizationConfig& cfg, const CMatrix& A) {
    const int N = cfg.N;
    if (A.rows() != N + 1 || A.cols() != N + 1) {
        throw std::invalid_argument("berezin_symbol: matrix dimension must be N+1");
    }
    const QuadratureGrid& g = *cfg.grid();

    // sigma(A)(i,j) = sum_{k,l} s_k A_kl conj(s_l) = sum_d B(i,d) e^{i d phi_j};
    // this index order (not its mirror) makes sigma(T_N(f)) converge to f for
    // orientation-sensitive f such as x2.
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(g.n_theta, 2 * N + 1);
    for (int k = 0; k <= N; ++k) {
        for (int l = 0; l <= N; ++l) {
            if (A(k, l) == cplx(0.0, 0.0)) continue;
            for (int i = 0; i < g.n_theta; ++i) {
                B(i, N + l - k) += cfg.frame.rho(i, k) * A(k, l) * cfg.frame.rho(i, l);
            }
        }
    }
    const Eigen::MatrixXcd phases = azimuthal_phases(g, N);
    return GridField{cfg.grid(), B * phases.transpose()};
}

double dirac_residual(const QuantizationConfig& cfg, const SphereFunction& f,
                      const SphereFunction& g) {
    check_band(cfg, f, "dirac_residual");
    check_band(cfg, g, "dirac_residual");
    const SphereFunction bracket = poisson_bracket(f, g);
    check_band(cfg, bracket, "dirac_residual (bracket)");
    const CMatrix lhs = commutator(toeplitz_op(cfg, f), toeplitz_op(cfg, g));
    const CMatrix rhs = cplx(0.0, cfg.hbar) * toeplitz_op(cfg, bracket);
    return operator_norm(lhs - rhs);
}

double order_residual(const QuantizationConfig& cfg, const SphereFunction& f,
                      const SphereFunction& g,
                      const std::vector<SphereFunction>& star_terms) {
    check_band(cfg, f, "order_residual");
    check_band(cfg, g, "order_residual");
    SphereFunction star = multiply(f, g);
    cplx ih_pow = 1.0;
    for (const auto& term : star_terms) {
        ih_pow *= cplx(0.0, cfg.hbar);
        star = star + ih_pow * term;
    }
    check_band(cfg, star, "order_residual (star product)");
    const CMatrix lhs = toeplitz_op(cfg, f) * toeplitz_op(cfg, g);
    return operator_norm(lhs - toeplitz_op(cfg, star));
}

ScanGrid::ScanGrid(const std::vector<int>& Ns, int band_limit) {
    if (Ns.empty()) throw std::invalid_argument("ScanGrid: empty N list");
    int prev = 0;
    for (int N : Ns) {
        if (N < 1 || N <= prev) {
            throw std::invalid_argument(
                "ScanGrid: N values must be strictly increasing and >= 1");
        }
        prev = N;
        points.push_back(make_config(N, band_limit));
    }
}

C1Estimate estimate_c1(const ScanGrid& scan, const SphereFunction& f,
                       const SphereFunction& g, int band_out) {
    if (scan.points.size() < 3) {
        throw std::invalid_argument("estimate_c1: need at least three scan points");
    }
    const std::size_t take = std::min<std::size_t>(4, scan.points.size());
    const std::size_t first = scan.points.size() - take;

    std::vector<double> hbars;
    std::vector<SphereFunction> samples;
    for (std::size_t p = first; p < scan.points.size(); ++p) {
        const QuantizationConfig& cfg = scan.points[p];
        check_band(cfg, f, "estimate_c1");
        check_band(cfg, g, "estimate_c1");
        const CMatrix D =
            (toeplitz_op(cfg, f) * toeplitz_op(cfg, g) - toeplitz_op(cfg, multiply(f, g))) /
            cplx(0.0, cfg.hbar);
        samples.push_back(analyze(berezin_symbol(cfg, D), band_out));
        hbars.push_back(cfg.hbar);
    }

    // Coefficient-wise Richardson extrapolation to hbar = 0, with a degree-1
    // fit over the last three points as the settledness cross-check.
    C1Estimate est;
    est.c1 = SphereFunction(band_out);
    const std::vector<double> h3(hbars.end() - 3, hbars.end());
    for (int l = 0; l <= band_out; ++l) {
        for (int m = -l; m <= l; ++m) {
            std::vector<double> re, im, re3, im3;
            for (const auto& s : samples) {
                re.push_back(s.at(l, m).real());
                im.push_back(s.at(l, m).imag());
            }
            re3.assign(re.end() - 3, re.end());
            im3.assign(im.end() - 3, im.end());
            const int deg = static_cast<int>(hbars.size()) - 1 < 2 ? 1 : 2;
            const cplx quad(polyfit(hbars, re, deg)(0), polyfit(hbars, im, deg)(0));
            const cplx lin(polyfit(h3, re3, 1)(0), polyfit(h3, im3, 1)(0));
            est.c1.at(l, m) = quad;
            est.extrapolation_error =
                std::max(est.extrapolation_error, std::abs(quad - lin));
        }
    }
    return est;
}

CMatrix PerturbedMap::apply(const SphereFunction& f) const {
    CMatrix T = toeplitz_op(cfg, f);
    if (eps == 0.0) return T;
    const CMatrix R = eps * R_unit;
    return T + cfg.hbar * cfg.hbar * 0.5 * (R * T + T * R);
}

QuantizerFn PerturbedMap::fn() const {
    return [m = *this](const SphereFunction& f) { return m.apply(f); };
}

PerturbedMap PerturbedMap::make(const QuantizationConfig& cfg, double eps,
                                std::uint64_t seed) {
    if (eps < 0.0) throw std::invalid_argument("PerturbedMap: eps must be >= 0");
    PerturbedMap m;
    m.cfg = cfg;
    m.eps = eps;
    Rng rng(mix_seed(seed, 0));  // one generator function for the whole scan
    m.generator = random_real_function(std::min(3, cfg.band_limit), rng);
    const CMatrix T = toeplitz_op(cfg, m.generator);
    const double nrm = operator_norm(T);
    if (nrm < 1e-12) {
        throw std::runtime_error("PerturbedMap: degenerate generator compression");
    }
    m.R_unit = T / nrm;
    return m;
}

}  // namespace fuzzy
