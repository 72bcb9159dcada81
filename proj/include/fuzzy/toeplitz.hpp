#pragma once

// Toeplitz quantization maps T_N (compression of multiplication onto the
// spin-N/2 coherent frame) and their diagnostics: Berezin symbols, bracket
// residuals, order scans and first-order star-product coefficient estimation.

#include "fuzzy/linalg.hpp"
#include "fuzzy/sphere_fn.hpp"
#include "fuzzy/spin_rep.hpp"

#include <functional>
#include <vector>

namespace fuzzy {

struct QuantizationConfig {
    int N = 0;
    double hbar = 0.0;  // 2/N
    int band_limit = 0;
    CoherentFrame frame;  // carries the shared grid

    const GridPtr& grid() const { return frame.grid; }
};

/// Frame + grid sized so that quantizing band-<=L functions, Berezin symbols
/// and their band-<=L analysis are all quadrature-exact.
QuantizationConfig make_config(int N, int L);

using QuantizerFn = std::function<CMatrix(const SphereFunction&)>;

/// T_N(f): matrix elements (N+1)/(4*pi) * integral of f s_k-bar s_l, so that
/// toeplitz_op(1) = identity. Hermitian for real f; real f >= 0 on the grid
/// gives a positive semidefinite matrix.
CMatrix toeplitz_op(const QuantizationConfig& cfg, const SphereFunction& f);

QuantizerFn toeplitz_map(const QuantizationConfig& cfg);

/// Covariant (coherent-state expectation) symbol sum_{k,l} s_k A_kl s_l-bar;
/// inverse direction of toeplitz_op, with berezin_symbol(identity) = 1,
/// berezin_symbol(A^dag) = conj(berezin_symbol(A)) and sup-norm convergence
/// berezin_symbol(toeplitz_op(f)) -> f.
GridField berezin_symbol(const QuantizationConfig& cfg, const CMatrix& A);

/// || [T(f), T(g)] - i hbar T({f,g}) ||.
double dirac_residual(const QuantizationConfig& cfg, const SphereFunction& f,
                      const SphereFunction& g);

/// || T(f) T(g) - T(fg + sum_j (i hbar)^j star_terms[j-1]) ||.
double order_residual(const QuantizationConfig& cfg, const SphereFunction& f,
                      const SphereFunction& g,
                      const std::vector<SphereFunction>& star_terms);

/// A family of configs over strictly increasing N >= 1 (descending hbar).
struct ScanGrid {
    std::vector<QuantizationConfig> points;

    ScanGrid(const std::vector<int>& Ns, int band_limit);
};

struct C1Estimate {
    SphereFunction c1;
    /// Spread between the two highest-order extrapolations; large values mean
    /// the Richardson limit has not settled.
    double extrapolation_error = 0.0;
};

/// Richardson extrapolation (degree-2 polynomial in hbar over the last four
/// scan points) of analyze(berezin_symbol((T(f)T(g) - T(fg)) / (i hbar))).
C1Estimate estimate_c1(const ScanGrid& scan, const SphereFunction& f,
                       const SphereFunction& g, int band_out);

/// Star-linear, order-preserving but non-unital specimen map:
///   Q'(f) = T(f) + hbar^2 * (R T(f) + T(f) R) / 2,
/// where R = eps * R_unit and R_unit is the unit-norm compression of one
/// seeded random band-3 function. Compressing a fixed classical function
/// (rather than drawing an unstructured random matrix per dimension) keeps
/// the family order-preserving across a scan: the deviation from the plain
/// map has a classical expansion, which is what the flattening correction
/// consumes. eps = 0 reproduces the plain Toeplitz map bit for bit.
struct PerturbedMap {
    QuantizationConfig cfg;
    double eps = 0.0;
    SphereFunction generator;  // the seeded classical function behind R_unit
    CMatrix R_unit;            // unit operator norm, Hermitian

    CMatrix apply(const SphereFunction& f) const;
    QuantizerFn fn() const;

    static PerturbedMap make(const QuantizationConfig& cfg, double eps,
                             std::uint64_t seed);
};

}  // namespace fuzzy
