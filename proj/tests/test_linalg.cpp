#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzzy/linalg.hpp"
#include "fuzzy/rng.hpp"

using namespace fuzzy;

namespace {

CMatrix pauli(int i) {
    CMatrix s(2, 2);
    const cplx I(0.0, 1.0);
    switch (i) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -I, I, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

}  // namespace

TEST_CASE("eigh on identity and diagonal matrices") {
    const Spectrum si = eigh(CMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(si.eigenvalues(i) == doctest::Approx(1.0));

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    const Spectrum sd = eigh(d);
    CHECK(sd.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sd.eigenvalues(1) == doctest::Approx(2.0));
}

TEST_CASE("eigh of sigma_1 gives -1, 1") {
    const Spectrum s = eigh(pauli(1));
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(s.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigh rejects non-Hermitian input") {
    CMatrix a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigh(a), precondition_error);
}

TEST_CASE("eigh reconstruction residual on random Hermitian up to dim 256") {
    Rng rng(11);
    for (int dim : {4, 32, 256}) {
        const CMatrix A = random_hermitian(dim, rng);
        const Spectrum s = eigh(A);
        const CMatrix rebuilt =
            s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
        CHECK(operator_norm(A - rebuilt) <=
              1e-10 * std::max(1.0, operator_norm(A)));
        CHECK(operator_norm(s.eigenvectors.adjoint() * s.eigenvectors -
                            CMatrix::Identity(dim, dim)) < 1e-12);
        for (int i = 0; i + 1 < dim; ++i) {
            CHECK(s.eigenvalues(i) <= s.eigenvalues(i + 1));
        }
    }
}

TEST_CASE("operator norm basics") {
    CHECK(operator_norm(CMatrix::Zero(3, 3)) == 0.0);
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -5.0;
    CHECK(operator_norm(d) == doctest::Approx(5.0));
}

TEST_CASE("operator norm squared equals the top eigenvalue of A^dag A") {
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        CMatrix A(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) A(i, j) = rng.normal_cplx();
        const double n = operator_norm(A);
        const Spectrum s = eigh(CMatrix(A.adjoint() * A));
        CHECK(n * n == doctest::Approx(s.eigenvalues(5)).epsilon(1e-11));
    }
}

TEST_CASE("spectral_function: identity map returns the matrix") {
    Rng rng(7);
    const CMatrix A = random_hermitian(5, rng);
    const CMatrix B = spectral_function(A, [](double x) { return x; });
    CHECK(operator_norm(A - B) < 1e-12 * std::max(1.0, operator_norm(A)));
}

TEST_CASE("spectral step on a diagonal splits at 1/2") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.1;
    d(1, 1) = 0.9;
    const CMatrix p = spectral_step(d, 0.5);
    CHECK(std::abs(p(0, 0)) < 1e-14);
    CHECK(std::abs(p(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("spectral step refuses an eigenvalue at the discontinuity") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.5 + 1e-9;
    d(1, 1) = 1.0;
    CHECK_THROWS_AS(spectral_step(d, 0.5), ill_conditioned_error);
}

TEST_CASE("inverse square root via spectral_function multiplies back") {
    Rng rng(3);
    const CMatrix H = random_hermitian(6, rng);
    const CMatrix A = H * H.adjoint() + 0.5 * CMatrix::Identity(6, 6);
    const CMatrix S = spectral_function(A, [](double x) { return 1.0 / std::sqrt(x); });
    CHECK(operator_norm(S * A * S - CMatrix::Identity(6, 6)) < 1e-11);
}

TEST_CASE("spectral step is idempotent and Hermitian away from 1/2") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix A = random_hermitian(8, rng);
        CMatrix p;
        try {
            p = spectral_step(A, 0.5);
        } catch (const ill_conditioned_error&) {
            continue;  // eigenvalue happened to land on the step
        }
        CHECK(operator_norm(p * p - p) < 1e-10);
        CHECK(operator_norm(p - p.adjoint()) < 1e-12);
    }
}

TEST_CASE("commutator identities") {
    Rng rng(23);
    const CMatrix A = random_hermitian(5, rng);
    CHECK(operator_norm(commutator(A, A)) == 0.0);

    // [sigma_1, sigma_2] = 2 i sigma_3
    const CMatrix lhs = commutator(pauli(1), pauli(2));
    const CMatrix rhs = cplx(0.0, 2.0) * pauli(3);
    CHECK(operator_norm(lhs - rhs) < 1e-14);

    // Hermitian pair: commutator is anti-Hermitian and traceless
    const CMatrix B = random_hermitian(5, rng);
    const CMatrix C = commutator(A, B);
    CHECK(operator_norm(C + C.adjoint()) < 1e-12);
    CHECK(std::abs(C.trace()) < 1e-12);

    CHECK_THROWS_AS(commutator(A, CMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("partial trace of block matrices") {
    Rng rng(29);
    const Eigen::Index n = 4;
    const CMatrix P = random_hermitian(n, rng);

    SUBCASE("diag blocks (P, 0) -> P") {
        const Block2 E(P, CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n));
        CHECK(operator_norm(partial_trace(E) - P) == 0.0);
    }

    SUBCASE("[[Z, X], [X^dag, 1 - W]] -> Z + 1 - W") {
        const CMatrix Z = random_hermitian(n, rng);
        const CMatrix W = random_hermitian(n, rng);
        const CMatrix X = random_hermitian(n, rng);
        const Block2 E(Z, X, X.adjoint(), CMatrix::Identity(n, n) - W);
        CHECK(operator_norm(partial_trace(E) - (Z + CMatrix::Identity(n, n) - W)) <
              1e-14);
    }

    SUBCASE("linearity and Hermiticity preservation") {
        const Block2 E(P, CMatrix::Zero(n, n), CMatrix::Zero(n, n), P);
        const Block2 F = E + E;
        CHECK(operator_norm(partial_trace(F) - 2.0 * partial_trace(E)) < 1e-14);
        CHECK(is_hermitian(partial_trace(E)));
    }
}

TEST_CASE("block 2x2 algebra round trips and multiplies like the dense form") {
    Rng rng(31);
    const Eigen::Index n = 3;
    auto rand_block = [&] {
        return Block2(random_hermitian(n, rng), random_hermitian(n, rng),
                      random_hermitian(n, rng), random_hermitian(n, rng));
    };
    const Block2 A = rand_block();
    const Block2 B = rand_block();

    CHECK(operator_norm(Block2::from_dense(A.to_dense()).to_dense() - A.to_dense()) ==
          0.0);
    CHECK(operator_norm((A * B).to_dense() - A.to_dense() * B.to_dense()) < 1e-12);
    CHECK(operator_norm(A.adjoint().to_dense() - A.to_dense().adjoint()) == 0.0);
}
