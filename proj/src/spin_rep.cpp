#include "fuzzy/spin_rep.hpp"

#include <cmath>

namespace fuzzy {

SpinOperators build_spin(int N) {
    if (N < 0) throw std::invalid_argument("build_spin: N must be nonnegative");
    const int dim = N + 1;
    CMatrix raise = CMatrix::Zero(dim, dim);
    for (int k = 0; k + 1 <= N; ++k) {
        raise(k, k + 1) = std::sqrt(static_cast<double>(k + 1) * (N - k));
    }
    const CMatrix lower = raise.adjoint();

    SpinOperators s;
    s.N = N;
    s.J1 = 0.5 * (raise + lower);
    s.J2 = cplx(0.0, -0.5) * (raise - lower);
    s.J3 = CMatrix::Zero(dim, dim);
    for (int k = 0; k <= N; ++k) s.J3(k, k) = 0.5 * N - k;
    return s;
}

CoherentFrame build_frame(int N, const GridPtr& grid) {
    if (N < 0) throw std::invalid_argument("build_frame: N must be nonnegative");
    // Frame pair products have u-degree N and azimuthal frequency up to N.
    if (2 * grid->n_theta - 1 < N || grid->n_phi < N + 1) {
        throw precondition_error("build_frame: grid under-resolved for this N",
                                 static_cast<double>(N));
    }
    CoherentFrame f;
    f.N = N;
    f.grid = grid;
    f.rho.resize(grid->n_theta, N + 1);
    for (int i = 0; i < grid->n_theta; ++i) {
        const double c = std::sqrt(0.5 * (1.0 + grid->u(i)));  // cos(theta/2)
        const double s = std::sqrt(0.5 * (1.0 - grid->u(i)));  // sin(theta/2)
        // rho_{k+1}/rho_k = sqrt((N-k)/(k+1)) * s/c, seeded at rho_0 = c^N
        double r = std::pow(c, N);
        for (int k = 0; k <= N; ++k) {
            f.rho(i, k) = r;
            if (k < N) r *= std::sqrt(static_cast<double>(N - k) / (k + 1)) * s / c;
        }
        const double resolution = f.rho.row(i).squaredNorm();
        if (std::abs(resolution - 1.0) > 1e-12) {
            throw std::runtime_error("build_frame: pointwise resolution defect");
        }
    }
    return f;
}

}  // namespace fuzzy
