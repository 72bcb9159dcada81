#pragma once

// Dense complex matrix numerics shared by every other module: Hermitian
// eigendecomposition, operator norms, spectral functional calculus and
// 2x2 block bookkeeping.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>

namespace fuzzy {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Precondition failure carrying the measured quantity that violated it.
class precondition_error : public std::invalid_argument {
public:
    precondition_error(const std::string& what, double measured)
        : std::invalid_argument(what), measured_(measured) {}
    double measured() const { return measured_; }

private:
    double measured_;
};

/// Raised when a spectral step function would be evaluated too close to an
/// eigenvalue (the projection is not well conditioned there).
class ill_conditioned_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

inline double entry_max_abs(const CMatrix& A) {
    return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

/// Hermiticity check, relative: max |A - A^dag| entry <= tol * max(1, max |A|).
bool is_hermitian(const CMatrix& A, double tol = 1e-12);

struct Spectrum {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

/// Hermitian eigendecomposition. Throws precondition_error on non-Hermitian
/// input and verifies the reconstruction residual.
Spectrum eigh(const CMatrix& A);

/// Largest singular value.
double operator_norm(const CMatrix& A);

/// U phi(Lambda) U^dag for Hermitian A.
CMatrix spectral_function(const CMatrix& A, const std::function<double(double)>& phi);

/// Spectral 0/1 step at `threshold`; throws ill_conditioned_error when an
/// eigenvalue lies within `guard` of the threshold.
CMatrix spectral_step(const CMatrix& A, double threshold, double guard = 1e-8);

/// AB - BA. Throws on dimension mismatch.
CMatrix commutator(const CMatrix& A, const CMatrix& B);

/// 2x2 block matrix [[a, b], [c, d]] with equally sized square blocks.
struct Block2 {
    CMatrix a, b, c, d;

    Block2() = default;
    Block2(CMatrix a_, CMatrix b_, CMatrix c_, CMatrix d_);

    Eigen::Index block_dim() const { return a.rows(); }

    static Block2 identity(Eigen::Index n);
    static Block2 zero(Eigen::Index n);

    Block2 adjoint() const;        // [[a^dag, c^dag], [b^dag, d^dag]]
    CMatrix to_dense() const;      // 2n x 2n assembly
    static Block2 from_dense(const CMatrix& D);

    Block2 operator+(const Block2& o) const;
    Block2 operator-(const Block2& o) const;
    Block2 operator*(const Block2& o) const;  // block matrix product
    friend Block2 operator*(cplx s, const Block2& m);
};

/// Sum of the diagonal blocks a + d.
CMatrix partial_trace(const Block2& E);

/// Operator norm of the dense 2n x 2n assembly.
double block_norm(const Block2& E);

bool is_hermitian(const Block2& E, double tol = 1e-12);

}  // namespace fuzzy
