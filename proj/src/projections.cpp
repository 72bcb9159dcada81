#include "fuzzy/projections.hpp"

#include "fuzzy/spin_rep.hpp"

#include <cmath>

namespace fuzzy {

namespace {

double idempotency_defect(const CMatrix& A) { return operator_norm(A - A * A); }

void require_near_projection(const CMatrix& A, const char* who) {
    if (!is_hermitian(A)) {
        throw precondition_error(std::string(who) + ": input must be Hermitian",
                                 entry_max_abs(A - A.adjoint()));
    }
    const double defect = idempotency_defect(A);
    if (!(defect < 0.25)) {
        throw spectrum_too_wide_error(
            std::string(who) + ": ||A - A^2|| must be < 1/4", defect);
    }
}

double spectral_spread(const CMatrix& H) {
    const Spectrum s = eigh(0.5 * (H + CMatrix(H.adjoint())));
    return s.eigenvalues(s.eigenvalues.size() - 1) - s.eigenvalues(0);
}

}  // namespace

ClassicalBlock2 bott_projection() {
    const SphereFunction half = SphereFunction::constant(0.5);
    const SphereFunction x1 = coordinate_function(1);
    const SphereFunction x2 = coordinate_function(2);
    const SphereFunction x3 = coordinate_function(3);
    ClassicalBlock2 e;
    e.a = half + 0.5 * x3;
    e.b = 0.5 * (x1 - cplx(0.0, 1.0) * x2);
    e.c = 0.5 * (x1 + cplx(0.0, 1.0) * x2);
    e.d = half - 0.5 * x3;
    return e;
}

Block2 quantize_block(const QuantizationConfig& cfg, const ClassicalBlock2& E) {
    return quantize_block(E, toeplitz_map(cfg));
}

Block2 quantize_block(const ClassicalBlock2& E, const QuantizerFn& map) {
    return Block2(map(E.a), map(E.b), map(E.c), map(E.d));
}

CMatrix purify_spectral(const CMatrix& A) {
    require_near_projection(A, "purify_spectral");
    return spectral_step(A, 0.5);
}

Block2 purify_spectral(const Block2& A) {
    return Block2::from_dense(purify_spectral(A.to_dense()));
}

std::pair<CMatrix, PurifyReport> purify_iterate(const CMatrix& A, double tol) {
    require_near_projection(A, "purify_iterate");
    PurifyReport report;
    CMatrix e = A;
    double defect = idempotency_defect(e);
    report.residual_history.push_back(defect);
    while (defect >= tol) {
        if (report.iterations >= 60) {
            throw std::runtime_error("purify_iterate: no convergence in 60 steps");
        }
        const CMatrix e2 = e * e;
        e = 3.0 * e2 - 2.0 * (e2 * e);
        defect = idempotency_defect(e);
        report.residual_history.push_back(defect);
        ++report.iterations;
    }
    report.final_residual = defect;
    return {e, report};
}

std::pair<Block2, PurifyReport> purify_iterate(const Block2& A, double tol) {
    auto [dense, report] = purify_iterate(A.to_dense(), tol);
    return {Block2::from_dense(dense), report};
}

Block2 equivariant_projection(int N) {
    const SpinOperators J = build_spin(N);
    const double c0 = (N + 2.0) / (2.0 * (N + 1.0));
    const double s = 1.0 / (N + 1.0);
    const CMatrix id = CMatrix::Identity(N + 1, N + 1);
    const cplx i(0.0, 1.0);
    return Block2(c0 * id + s * J.J3, s * (J.J1 - i * J.J2), s * (J.J1 + i * J.J2),
                  c0 * id - s * J.J3);
}

UnitalizedMap unitalize(const QuantizerFn& qprime) {
    const CMatrix Q1 = qprime(SphereFunction::constant(1.0));
    require_near_projection(Q1, "unitalize");
    const CMatrix e = purify_spectral(Q1);

    // Corner basis: eigenvectors of e with eigenvalue > 1/2.
    const Spectrum se = eigh(e);
    Eigen::Index corner = 0;
    for (Eigen::Index i = 0; i < se.eigenvalues.size(); ++i) {
        if (se.eigenvalues(i) > 0.5) ++corner;
    }
    const CMatrix U = se.eigenvectors.rightCols(corner);

    const CMatrix Vc = U.adjoint() * Q1 * U;  // = U^dag (e Q1 e) U
    const Spectrum sv = eigh(0.5 * (Vc + CMatrix(Vc.adjoint())));
    const double lo = sv.eigenvalues.size() ? sv.eigenvalues(0) : 1.0;
    const double hi =
        sv.eigenvalues.size() ? sv.eigenvalues(sv.eigenvalues.size() - 1) : 1.0;
    if (std::max(std::abs(lo - 1.0), std::abs(hi - 1.0)) >= 1.0 || lo <= 0.0) {
        throw hbar_too_large_error(
            "unitalize: V is not invertible on the corner algebra", lo);
    }

    RVector inv_sqrt(sv.eigenvalues.size());
    for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) {
        inv_sqrt(i) = 1.0 / std::sqrt(sv.eigenvalues(i));
    }
    UnitalizedMap m;
    m.unit_projection = e;
    m.corrector =
        U * (sv.eigenvectors * inv_sqrt.asDiagonal() * sv.eigenvectors.adjoint()) *
        U.adjoint();
    m.base = qprime;
    return m;
}

Grading grading_decompose(const Block2& u) {
    Grading g;
    g.tau = 0.5 * (u.a + u.d);
    g.x3 = 0.5 * (u.a - u.d);
    g.x1 = 0.5 * (u.b + u.c);
    g.x2 = cplx(0.0, 0.5) * (u.b - u.c);
    return g;
}

Block2 grading_compose(const Grading& g) {
    const cplx i(0.0, 1.0);
    return Block2(g.tau + g.x3, g.x1 - i * g.x2, g.x1 + i * g.x2, g.tau - g.x3);
}

Block2 squash_step(const Block2& u, const CMatrix& Qf) {
    const Eigen::Index n = u.block_dim();
    if (!is_hermitian(u)) {
        throw precondition_error("squash_step: u must be Hermitian",
                                 entry_max_abs(u.to_dense() - u.to_dense().adjoint()));
    }
    const double invol_defect = block_norm(u * u - Block2::identity(n));
    if (invol_defect > 1e-10) {
        throw precondition_error("squash_step: u^2 must equal 1", invol_defect);
    }

    const Block2 M(Qf, CMatrix::Zero(n, n), CMatrix::Zero(n, n), Qf);
    const Block2 inner = u * M - M * u;
    const Block2 delta = 0.5 * (u * inner - inner * u);
    if (block_norm(delta) < 1e-15) return u;

    const CMatrix dd = delta.to_dense();
    const CMatrix S = CMatrix::Identity(2 * n, 2 * n) + dd * dd;
    const CMatrix S_inv_sqrt =
        spectral_function(0.5 * (S + CMatrix(S.adjoint())),
                          [](double x) { return 1.0 / std::sqrt(x); });
    return Block2::from_dense(S_inv_sqrt * (u.to_dense() + dd));
}

std::pair<Block2, SquashReport> squash_correct(const QuantizationConfig& cfg,
                                               const Block2& u, int band_out) {
    SquashReport report;
    report.hbar = cfg.hbar;

    // tr e - 1 = (1/2) tr u for e = (1 + u)/2.
    const CMatrix trace_defect = 0.5 * partial_trace(u);
    report.spread_before = spectral_spread(trace_defect);

    const int n = cfg.N + 1;
    const CMatrix G =
        (trace_defect - 0.5 * cfg.hbar * CMatrix::Identity(n, n)) /
        (cfg.hbar * cfg.hbar);
    const SphereFunction g = analyze(berezin_symbol(cfg, G), band_out);
    report.c = integrate_mean(g).real();

    // The trace moves by (1/2) hbar^2 Delta f per step, so full cancellation
    // of g - c needs Delta f = 2 (c - g).
    report.f = 2.0 * poisson_solve(SphereFunction::constant(report.c) - g);

    const Block2 corrected = squash_step(u, toeplitz_op(cfg, report.f));
    report.spread_after = spectral_spread(0.5 * partial_trace(corrected));
    return {corrected, report};
}

}  // namespace fuzzy
