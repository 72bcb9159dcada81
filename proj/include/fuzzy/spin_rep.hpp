#pragma once

// Spin-N/2 irreducible su(2) generator matrices and the coherent-section
// frame the Toeplitz compression integrates against.

#include "fuzzy/linalg.hpp"
#include "fuzzy/sphere_fn.hpp"

namespace fuzzy {

/// Generators of the (N+1)-dimensional irreducible representation, with J3
/// diagonal descending (entries N/2 - k) and hbar identified as 2/N.
struct SpinOperators {
    int N = 0;
    CMatrix J1, J2, J3;
};

SpinOperators build_spin(int N);

/// Coherent-section values on a quadrature grid. The k-th section is
///   s_k(theta, phi) = rho_k(theta) e^{-i k phi},
///   rho_k = sqrt(binom(N, k)) cos(theta/2)^(N-k) sin(theta/2)^k,
/// stored as the real matrix rho(i, k) over theta nodes. Pointwise,
/// sum_k |s_k|^2 = 1.
struct CoherentFrame {
    int N = 0;
    GridPtr grid;
    Eigen::MatrixXd rho;  // n_theta x (N+1)
};

/// Builds the frame and verifies the pointwise resolution invariant.
/// Throws when the grid is too small to integrate frame pair products.
CoherentFrame build_frame(int N, const GridPtr& grid);

}  // namespace fuzzy
