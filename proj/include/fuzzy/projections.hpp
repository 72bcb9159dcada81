#pragma once

// Projection pipeline: the rank-one classical projection over the sphere, its
// quantization, purification to an exact projection, unitalization of
// non-unital quantization maps, and the partial-trace flattening correction.

#include "fuzzy/linalg.hpp"
#include "fuzzy/sphere_fn.hpp"
#include "fuzzy/toeplitz.hpp"

#include <utility>
#include <vector>

namespace fuzzy {

/// Near-idempotent input whose spectrum defect ||A - A^2|| reaches 1/4, so no
/// spectral gap at 1/2 is guaranteed.
class spectrum_too_wide_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

/// Unitalization corner matrix V too far from invertible.
class hbar_too_large_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

/// 2x2 matrix of band-limited functions.
struct ClassicalBlock2 {
    SphereFunction a, b, c, d;

    ClassicalBlock2 adjoint() const {
        return {a.conjugate(), c.conjugate(), b.conjugate(), d.conjugate()};
    }
};

/// (1 + sigma_i x^i) / 2: the rank-one, unit-Chern-number projection.
ClassicalBlock2 bott_projection();

/// Entrywise quantization of a classical 2x2 block.
Block2 quantize_block(const QuantizationConfig& cfg, const ClassicalBlock2& E);
Block2 quantize_block(const ClassicalBlock2& E, const QuantizerFn& map);

/// Spectral projection onto eigenvalues > 1/2. Requires ||A - A^2|| < 1/4.
CMatrix purify_spectral(const CMatrix& A);
Block2 purify_spectral(const Block2& A);

struct PurifyReport {
    int iterations = 0;
    std::vector<double> residual_history;  // ||e_j - e_j^2||, starting at the input
    double final_residual = 0.0;
};

/// Polynomial purification e <- 3 e^2 - 2 e^3, iterated until the idempotency
/// defect drops below tol. Converges quadratically to purify_spectral(A):
/// on the spectrum the defect obeys y' = y^2 (3 + 4y), so each step satisfies
/// ||e - e^2|| <= (3 + 4 r) r^2 with r the previous defect.
std::pair<CMatrix, PurifyReport> purify_iterate(const CMatrix& A, double tol = 1e-12);
std::pair<Block2, PurifyReport> purify_iterate(const Block2& A, double tol = 1e-12);

/// The exact equivariant projection (N+2)/(2(N+1)) + sigma_i J^i / (N+1):
/// full trace N+2, partial trace 1 + 1/(N+1).
Block2 equivariant_projection(int N);

/// Unit-corrected quantization map: e = purify(Q'(1)), V = e Q'(1) e, and
/// a |-> V^{-1/2} Q'(a) V^{-1/2} with the inverse square root taken on the
/// corner algebra e A e. Sends 1 to e exactly.
struct UnitalizedMap {
    CMatrix unit_projection;  // e
    CMatrix corrector;        // corner V^{-1/2}
    QuantizerFn base;

    CMatrix apply(const SphereFunction& f) const {
        return corrector * base(f) * corrector;
    }
    QuantizerFn fn() const {
        return [m = *this](const SphereFunction& f) { return m.apply(f); };
    }
};

UnitalizedMap unitalize(const QuantizerFn& qprime);

/// Pauli components of a block matrix u = tau + sigma_i c_i.
struct Grading {
    CMatrix tau, x1, x2, x3;
};

Grading grading_decompose(const Block2& u);
Block2 grading_compose(const Grading& g);

/// One flattening move: delta = (1/2)[u, [u, Qf]] anticommutes with u, and
/// u' = (1 + delta^2)^{-1/2} (u + delta) is again a Hermitian involution.
Block2 squash_step(const Block2& u, const CMatrix& Qf);

struct SquashReport {
    double hbar = 0.0;
    double spread_before = 0.0;  // spectral width of partial_trace(e) - 1
    double spread_after = 0.0;
    SphereFunction f;
    double c = 0.0;  // mean of the dequantized second-order trace defect
};

/// Full correction round for a grading u = 2e - 1: dequantize the
/// second-order part of the partial trace, solve the Poisson equation for the
/// flattening potential and apply squash_step with its quantization.
std::pair<Block2, SquashReport> squash_correct(const QuantizationConfig& cfg,
                                               const Block2& u, int band_out);

}  // namespace fuzzy
