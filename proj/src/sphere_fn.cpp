#include "fuzzy/sphere_fn.hpp"

#include <cmath>
#include <numbers>

namespace fuzzy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, RVector& x, RVector& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess for the i-th root (descending), then
        // Newton on the three-term recurrence.
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x(n - 1 - i) = z;  // store ascending
        w(n - 1 - i) = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

std::size_t tri(int l, int m) {  // storage index for m >= 0
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
}

// Fully normalized associated Legendre values Pbar_l^m(u) for 0 <= m <= l <= L,
// Condon-Shortley phase included: Y_lm = Pbar_l^m(cos theta) e^{i m phi}.
void legendre_table(int L, double u, std::vector<double>& out) {
    out.assign(tri(L, L) + 1, 0.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    out[tri(0, 0)] = 1.0 / std::sqrt(kFourPi);
    for (int m = 1; m <= L; ++m) {
        out[tri(m, m)] =
            -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * out[tri(m - 1, m - 1)];
    }
    for (int m = 0; m < L; ++m) {
        out[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * u * out[tri(m, m)];
    }
    for (int m = 0; m <= L; ++m) {
        for (int l = m + 2; l <= L; ++l) {
            const double a =
                std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
            const double b = std::sqrt(
                (static_cast<double>(l - 1) * (l - 1) - m * m) /
                (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
            out[tri(l, m)] = a * (u * out[tri(l - 1, m)] - b * out[tri(l - 2, m)]);
        }
    }
}

// Pbar_l^m for any sign of m; zero outside |m| <= l.
double pbar(const std::vector<double>& tab, int l, int m) {
    const int am = std::abs(m);
    if (am > l) return 0.0;
    const double v = tab[tri(l, am)];
    return (m < 0 && (am % 2 == 1)) ? -v : v;
}

// theta-derivative of Y_lm at fixed phi, with the e^{i m phi} factor removed:
// d/dtheta Pbar-part, from the ladder identity
//   2 d/dtheta Y_lm = sqrt((l-m)(l+m+1)) Y_{l,m+1} e^{-i phi}
//                   - sqrt((l+m)(l-m+1)) Y_{l,m-1} e^{+i phi}.
double pbar_dtheta(const std::vector<double>& tab, int l, int m) {
    const double up = std::sqrt(std::max(0.0, static_cast<double>(l - m) * (l + m + 1)));
    const double dn = std::sqrt(std::max(0.0, static_cast<double>(l + m) * (l - m + 1)));
    return 0.5 * (up * pbar(tab, l, m + 1) - dn * pbar(tab, l, m - 1));
}

Eigen::MatrixXcd phase_table(const QuadratureGrid& g, int max_m) {
    // phases(j, L + m) = e^{i m phi_j}
    Eigen::MatrixXcd phases(g.n_phi, 2 * max_m + 1);
    for (int j = 0; j < g.n_phi; ++j) {
        for (int m = -max_m; m <= max_m; ++m) {
            phases(j, max_m + m) = std::polar(1.0, m * g.phi(j));
        }
    }
    return phases;
}

// Shared synthesis kernel: per-node Legendre sums, then azimuthal phases.
// `deriv` selects the theta-derivative basis.
GridField synth_impl(const SphereFunction& f, const GridPtr& grid, bool deriv) {
    const QuadratureGrid& g = *grid;
    const int L = f.band();
    GridField out{grid, Eigen::MatrixXcd::Zero(g.n_theta, g.n_phi)};
    const Eigen::MatrixXcd phases = phase_table(g, L);
    std::vector<double> tab;
    Eigen::VectorXcd gm(2 * L + 1);
    for (int i = 0; i < g.n_theta; ++i) {
        legendre_table(L, g.u(i), tab);
        gm.setZero();
        for (int l = 0; l <= L; ++l) {
            for (int m = -l; m <= l; ++m) {
                const double base = deriv ? pbar_dtheta(tab, l, m) : pbar(tab, l, m);
                gm(L + m) += f.at(l, m) * base;
            }
        }
        out.values.row(i) = (phases * gm).transpose();
    }
    return out;
}

}  // namespace

GridPtr make_grid(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) {
        throw std::invalid_argument("make_grid: need at least one node per direction");
    }
    auto g = std::make_shared<QuadratureGrid>();
    g->n_theta = n_theta;
    g->n_phi = n_phi;
    gauss_legendre(n_theta, g->u, g->w);
    g->phi.resize(n_phi);
    for (int j = 0; j < n_phi; ++j) g->phi(j) = 2.0 * kPi * j / n_phi;
    g->sin_theta = (1.0 - g->u.array().square()).sqrt();
    return g;
}

GridPtr grid_for_band(int L) { return make_grid(L + 1, 2 * L + 1); }

std::size_t SphereFunction::idx(int l, int m) const {
    if (l < 0 || l > band_ || std::abs(m) > l) {
        throw std::out_of_range("SphereFunction: coefficient index out of band");
    }
    return static_cast<std::size_t>(l) * l + l + m;
}

SphereFunction SphereFunction::constant(cplx value) {
    SphereFunction f(0);
    f.at(0, 0) = value * std::sqrt(kFourPi);
    return f;
}

SphereFunction SphereFunction::extended(int band) const {
    if (band < band_) {
        throw std::invalid_argument("SphereFunction::extended: band too small");
    }
    SphereFunction f(band);
    for (int l = 0; l <= band_; ++l)
        for (int m = -l; m <= l; ++m) f.at(l, m) = at(l, m);
    return f;
}

SphereFunction SphereFunction::truncated(int band) const {
    SphereFunction f(band);
    const int keep = std::min(band, band_);
    for (int l = 0; l <= keep; ++l)
        for (int m = -l; m <= l; ++m) f.at(l, m) = at(l, m);
    return f;
}

SphereFunction SphereFunction::conjugate() const {
    SphereFunction f(band_);
    for (int l = 0; l <= band_; ++l) {
        for (int m = -l; m <= l; ++m) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            f.at(l, m) = sign * std::conj(at(l, -m));
        }
    }
    return f;
}

bool SphereFunction::is_real(double tol) const {
    return (*this - conjugate()).coeff_max_abs() <= tol;
}

cplx SphereFunction::eval(double theta, double phi) const {
    std::vector<double> tab;
    legendre_table(band_, std::cos(theta), tab);
    cplx acc = 0.0;
    for (int l = 0; l <= band_; ++l) {
        for (int m = -l; m <= l; ++m) {
            acc += at(l, m) * pbar(tab, l, m) * std::polar(1.0, m * phi);
        }
    }
    return acc;
}

SphereFunction SphereFunction::operator+(const SphereFunction& o) const {
    const int L = std::max(band_, o.band_);
    SphereFunction f = extended(L);
    for (int l = 0; l <= o.band_; ++l)
        for (int m = -l; m <= l; ++m) f.at(l, m) += o.at(l, m);
    return f;
}

SphereFunction SphereFunction::operator-(const SphereFunction& o) const {
    return *this + (-1.0) * o;
}

SphereFunction operator*(cplx s, const SphereFunction& f) {
    SphereFunction g = f;
    for (auto& c : g.c_) c *= s;
    return g;
}

double SphereFunction::coeff_max_abs() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, std::abs(c));
    return m;
}

double SphereFunction::coeff_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s += std::norm(c);
    return std::sqrt(s);
}

SphereFunction coordinate_function(int i) {
    const double r = std::sqrt(2.0 * kPi / 3.0);
    SphereFunction f(1);
    switch (i) {
        case 1:
            f.at(1, -1) = r;
            f.at(1, 1) = -r;
            break;
        case 2:
            f.at(1, -1) = cplx(0.0, r);
            f.at(1, 1) = cplx(0.0, r);
            break;
        case 3:
            f.at(1, 0) = std::sqrt(kFourPi / 3.0);
            break;
        default:
            throw std::invalid_argument("coordinate_function: i must be 1, 2 or 3");
    }
    return f;
}

GridField synthesize(const SphereFunction& f, const GridPtr& grid) {
    return synth_impl(f, grid, false);
}

SphereFunction analyze(const GridField& field, int band) {
    const QuadratureGrid& g = *field.grid;
    if (g.n_theta < band + 1 || g.n_phi < 2 * band + 1) {
        throw precondition_error(
            "analyze: grid cannot resolve the requested band without aliasing",
            static_cast<double>(band));
    }
    const Eigen::MatrixXcd phases = phase_table(g, band);
    SphereFunction f(band);
    std::vector<double> tab;
    const double wphi = 2.0 * kPi / g.n_phi;
    for (int i = 0; i < g.n_theta; ++i) {
        legendre_table(band, g.u(i), tab);
        // F_m(i) = (2 pi / n_phi) sum_j field(i,j) e^{-i m phi_j}
        const Eigen::VectorXcd Fm =
            wphi * (phases.adjoint() * field.values.row(i).transpose());
        for (int l = 0; l <= band; ++l) {
            for (int m = -l; m <= l; ++m) {
                f.at(l, m) += g.w(i) * pbar(tab, l, m) * Fm(band + m);
            }
        }
    }
    return f;
}

SphereFunction multiply(const SphereFunction& f, const SphereFunction& g) {
    const int L = f.band() + g.band();
    const GridPtr grid = grid_for_band(L);
    GridField a = synthesize(f, grid);
    const GridField b = synthesize(g, grid);
    a.values = a.values.cwiseProduct(b.values);
    return analyze(a, L);
}

SphereFunction poisson_bracket(const SphereFunction& f, const SphereFunction& g) {
    const int L = f.band() + g.band();
    const GridPtr grid = grid_for_band(L);

    const GridField ft = synth_impl(f, grid, true);
    const GridField gt = synth_impl(g, grid, true);

    SphereFunction fp_c = f, gp_c = g;
    for (int l = 0; l <= f.band(); ++l)
        for (int m = -l; m <= l; ++m) fp_c.at(l, m) *= cplx(0.0, m);
    for (int l = 0; l <= g.band(); ++l)
        for (int m = -l; m <= l; ++m) gp_c.at(l, m) *= cplx(0.0, m);
    const GridField fp = synthesize(fp_c, grid);
    const GridField gp = synthesize(gp_c, grid);

    GridField out{grid, Eigen::MatrixXcd(grid->n_theta, grid->n_phi)};
    for (int i = 0; i < grid->n_theta; ++i) {
        out.values.row(i) = (ft.values.row(i).cwiseProduct(gp.values.row(i)) -
                             fp.values.row(i).cwiseProduct(gt.values.row(i))) /
                            grid->sin_theta(i);
    }
    return analyze(out, L);
}

SphereFunction laplacian(const SphereFunction& f) {
    SphereFunction g = f;
    for (int l = 0; l <= f.band(); ++l) {
        const double ev = static_cast<double>(l) * (l + 1);
        for (int m = -l; m <= l; ++m) g.at(l, m) *= ev;
    }
    return g;
}

SphereFunction poisson_solve(const SphereFunction& g) {
    const double mean = std::abs(g.at(0, 0)) / std::sqrt(kFourPi);
    if (mean >= 1e-10) {
        throw precondition_error("poisson_solve: input must have zero mean", mean);
    }
    SphereFunction f = g;
    f.at(0, 0) = 0.0;
    for (int l = 1; l <= g.band(); ++l) {
        const double ev = static_cast<double>(l) * (l + 1);
        for (int m = -l; m <= l; ++m) f.at(l, m) /= ev;
    }
    return f;
}

cplx integrate_mean(const SphereFunction& f) {
    const GridPtr grid = grid_for_band(f.band());
    const GridField field = synthesize(f, grid);
    const double wphi = 2.0 * kPi / grid->n_phi;
    cplx acc = 0.0;
    for (int i = 0; i < grid->n_theta; ++i) {
        acc += grid->w(i) * wphi * field.values.row(i).sum();
    }
    return acc / kFourPi;
}

double sup_norm(const SphereFunction& f) {
    // Oversampled grid: still exact for the band, but dense enough that the
    // node maximum is a usable stand-in for the true sup.
    const int L = f.band();
    return synthesize(f, make_grid(4 * (L + 1), 4 * (2 * L + 1))).sup_abs();
}

double jacobi_residual(const SphereFunction& f, const SphereFunction& g,
                       const SphereFunction& h) {
    const SphereFunction cyc = poisson_bracket(f, poisson_bracket(g, h)) +
                               poisson_bracket(g, poisson_bracket(h, f)) +
                               poisson_bracket(h, poisson_bracket(f, g));
    return sup_norm(cyc);
}

SphereFunction random_real_function(int band, Rng& rng) {
    SphereFunction f(band);
    for (int l = 0; l <= band; ++l) {
        f.at(l, 0) = rng.normal();
        for (int m = 1; m <= l; ++m) {
            const cplx z = rng.normal_cplx();
            f.at(l, m) = z;
            f.at(l, -m) = ((m % 2 == 0) ? 1.0 : -1.0) * std::conj(z);
        }
    }
    const double nrm = f.coeff_norm();
    return (nrm > 0.0 ? 1.0 / nrm : 1.0) * f;
}

}  // namespace fuzzy
