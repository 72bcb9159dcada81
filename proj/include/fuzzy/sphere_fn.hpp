#pragma once

// Band-limited functions on the unit sphere stored as coefficients in the
// orthonormal complex spherical-harmonic basis (Condon-Shortley phase).
// Products and Poisson brackets are computed by synthesis on a Gauss-Legendre
// x equispaced-azimuth grid that is exact for the combined band, so every
// operation here is exact up to roundoff.

#include "fuzzy/linalg.hpp"
#include "fuzzy/rng.hpp"

#include <memory>
#include <vector>

namespace fuzzy {

/// Tensor-product quadrature: Gauss-Legendre nodes in u = cos(theta),
/// equispaced azimuth with uniform weight 2*pi/n_phi. Total weight 4*pi.
/// Integrates u-polynomials of degree <= 2*n_theta - 1 and azimuthal
/// frequencies of magnitude < n_phi exactly.
struct QuadratureGrid {
    int n_theta = 0;
    int n_phi = 0;
    RVector u;        // ascending Gauss-Legendre nodes in (-1, 1)
    RVector w;        // matching weights, sum = 2
    RVector phi;      // 2*pi*j/n_phi
    RVector sin_theta;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr make_grid(int n_theta, int n_phi);

/// Smallest grid on which analyze() at band L is exact.
GridPtr grid_for_band(int L);

struct GridField {
    GridPtr grid;
    Eigen::MatrixXcd values;  // n_theta x n_phi

    double sup_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

class SphereFunction {
public:
    SphereFunction() : SphereFunction(0) {}
    explicit SphereFunction(int band) : band_(band), c_((band + 1) * (band + 1), 0.0) {}

    int band() const { return band_; }

    cplx& at(int l, int m) { return c_[idx(l, m)]; }
    const cplx& at(int l, int m) const { return c_[idx(l, m)]; }

    static SphereFunction constant(cplx value);

    SphereFunction extended(int band) const;   // zero-pad to a larger band
    SphereFunction truncated(int band) const;  // drop coefficients beyond band

    SphereFunction conjugate() const;
    bool is_real(double tol = 1e-12) const;

    cplx eval(double theta, double phi) const;

    SphereFunction operator+(const SphereFunction& o) const;
    SphereFunction operator-(const SphereFunction& o) const;
    friend SphereFunction operator*(cplx s, const SphereFunction& f);

    double coeff_max_abs() const;
    double coeff_norm() const;  // l2 norm of the coefficient vector

private:
    std::size_t idx(int l, int m) const;

    int band_;
    std::vector<cplx> c_;
};

/// Cartesian coordinate x^i restricted to the sphere, i in {1,2,3}.
SphereFunction coordinate_function(int i);

GridField synthesize(const SphereFunction& f, const GridPtr& grid);

/// Quadrature projection onto harmonics of degree <= band. Exact inverse of
/// synthesize for band-limited input; throws when the grid cannot resolve the
/// requested band (aliasing).
SphereFunction analyze(const GridField& field, int band);

/// Pointwise product, synthesized on a grid exact for band(f) + band(g).
SphereFunction multiply(const SphereFunction& f, const SphereFunction& g);

/// Poisson bracket of the round sphere with its volume form, normalized so
/// that {x1, x2} = x3.
SphereFunction poisson_bracket(const SphereFunction& f, const SphereFunction& g);

/// Positive Laplacian: multiplies the (l, m) coefficient by l*(l+1), so that
/// laplacian(f) = -sum_i {x_i, {x_i, f}}.
SphereFunction laplacian(const SphereFunction& f);

/// Inverse of `laplacian` on mean-zero input; throws precondition_error
/// carrying the offending mean otherwise.
SphereFunction poisson_solve(const SphereFunction& g);

/// (1/4pi) * integral of f against the round volume form, by quadrature.
cplx integrate_mean(const SphereFunction& f);

/// Sup-norm over the grid exact for the band of f.
double sup_norm(const SphereFunction& f);

/// Sup-norm of {f,{g,h}} + {g,{h,f}} + {h,{f,g}} over the combined band grid.
double jacobi_residual(const SphereFunction& f, const SphereFunction& g,
                       const SphereFunction& h);

/// Random real-valued band-limited function with unit coefficient norm.
SphereFunction random_real_function(int band, Rng& rng);

}  // namespace fuzzy
