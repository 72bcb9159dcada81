#include "fuzzy/linalg.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace fuzzy {

bool is_hermitian(const CMatrix& A, double tol) {
    if (A.rows() != A.cols()) return false;
    const double defect = entry_max_abs(A - A.adjoint());
    return defect <= tol * std::max(1.0, entry_max_abs(A));
}

Spectrum eigh(const CMatrix& A) {
    if (!is_hermitian(A)) {
        throw precondition_error("eigh: input is not Hermitian",
                                 entry_max_abs(A - A.adjoint()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(A);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigensolver failed to converge");
    }
    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};

    const CMatrix rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    const double res = operator_norm(A - rebuilt);
    const double scale = std::max(1.0, operator_norm(A));
    if (res > 1e-10 * scale) {
        throw std::runtime_error("eigh: reconstruction residual out of tolerance");
    }
    return s;
}

double operator_norm(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<CMatrix> svd(A);
    return svd.singularValues()(0);
}

CMatrix spectral_function(const CMatrix& A, const std::function<double(double)>& phi) {
    Spectrum s = eigh(A);
    RVector mapped(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        mapped(i) = phi(s.eigenvalues(i));
    }
    return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

CMatrix spectral_step(const CMatrix& A, double threshold, double guard) {
    Spectrum s = eigh(A);
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        if (std::abs(s.eigenvalues(i) - threshold) < guard) {
            throw ill_conditioned_error(
                "spectral_step: eigenvalue within guard distance of the step",
                s.eigenvalues(i));
        }
    }
    RVector mapped(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < mapped.size(); ++i) {
        mapped(i) = s.eigenvalues(i) > threshold ? 1.0 : 0.0;
    }
    return s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint();
}

CMatrix commutator(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols()) {
        throw std::invalid_argument("commutator: dimension mismatch");
    }
    return A * B - B * A;
}

Block2::Block2(CMatrix a_, CMatrix b_, CMatrix c_, CMatrix d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n ||
        c.cols() != n || d.rows() != n || d.cols() != n) {
        throw std::invalid_argument("Block2: blocks must be square and equally sized");
    }
}

Block2 Block2::identity(Eigen::Index n) {
    return Block2(CMatrix::Identity(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n),
                  CMatrix::Identity(n, n));
}

Block2 Block2::zero(Eigen::Index n) {
    return Block2(CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n),
                  CMatrix::Zero(n, n));
}

Block2 Block2::adjoint() const {
    return Block2(a.adjoint(), c.adjoint(), b.adjoint(), d.adjoint());
}

CMatrix Block2::to_dense() const {
    const Eigen::Index n = block_dim();
    CMatrix D(2 * n, 2 * n);
    D.topLeftCorner(n, n) = a;
    D.topRightCorner(n, n) = b;
    D.bottomLeftCorner(n, n) = c;
    D.bottomRightCorner(n, n) = d;
    return D;
}

Block2 Block2::from_dense(const CMatrix& D) {
    if (D.rows() != D.cols() || D.rows() % 2 != 0) {
        throw std::invalid_argument("Block2::from_dense: even square matrix required");
    }
    const Eigen::Index n = D.rows() / 2;
    return Block2(D.topLeftCorner(n, n), D.topRightCorner(n, n),
                  D.bottomLeftCorner(n, n), D.bottomRightCorner(n, n));
}

Block2 Block2::operator+(const Block2& o) const {
    return Block2(a + o.a, b + o.b, c + o.c, d + o.d);
}

Block2 Block2::operator-(const Block2& o) const {
    return Block2(a - o.a, b - o.b, c - o.c, d - o.d);
}

Block2 Block2::operator*(const Block2& o) const {
    return Block2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                  c * o.b + d * o.d);
}

Block2 operator*(cplx s, const Block2& m) {
    return Block2(s * m.a, s * m.b, s * m.c, s * m.d);
}

CMatrix partial_trace(const Block2& E) { return E.a + E.d; }

double block_norm(const Block2& E) { return operator_norm(E.to_dense()); }

bool is_hermitian(const Block2& E, double tol) {
    return is_hermitian(E.to_dense(), tol);
}

}  // namespace fuzzy
