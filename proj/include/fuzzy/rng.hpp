#pragma once

// Deterministic seeded randomness for perturbation operators and tests.
// splitmix64 + Box-Muller, so streams are reproducible across platforms and
// standard-library versions.

#include "fuzzy/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fuzzy {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cplx normal_cplx() { return {normal(), normal()}; }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stable stream split: one master seed, independent substreams per index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x2545f4914f6cdd1dULL * (index + 1)));
    return r.next_u64();
}

inline CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
    CMatrix G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) G(i, j) = rng.normal_cplx();
    return 0.5 * (G + CMatrix(G.adjoint()));
}

/// Random Hermitian with unit operator norm.
inline CMatrix random_unit_hermitian(Eigen::Index n, Rng& rng) {
    CMatrix H = random_hermitian(n, rng);
    const double nrm = operator_norm(H);
    if (nrm == 0.0) return CMatrix::Identity(n, n);  // unreachable in practice
    return H / nrm;
}

/// Haar-ish random unitary from the QR factorization of a complex Gaussian.
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
    CMatrix G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) G(i, j) = rng.normal_cplx();
    Eigen::HouseholderQR<CMatrix> qr(G);
    return qr.householderQ();
}

inline CMatrix random_projection(Eigen::Index n, Eigen::Index rank, Rng& rng) {
    const CMatrix U = random_unitary(n, rng);
    RVector diag = RVector::Zero(n);
    diag.head(rank).setOnes();
    return U * diag.asDiagonal() * U.adjoint();
}

}  // namespace fuzzy
