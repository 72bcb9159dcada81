#pragma once

// Obstruction machinery: spectrum-sum containment, projection block relations,
// integer extraction from partial-trace bounds, Laurent fits of the trace
// density and the excluded-parameter computation.

#include "fuzzy/linalg.hpp"
#include "fuzzy/projections.hpp"
#include "fuzzy/toeplitz.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fuzzy {

/// Worst violation of Spec(a+b) being contained in Spec(a) + [-||b||, ||b||]:
/// min over lambda in Spec(a+b) of ||b|| - dist(lambda, Spec a). Nonnegative
/// up to roundoff for Hermitian inputs.
double spectrum_sum_margin(const CMatrix& a, const CMatrix& b);

/// Entries of a 2x2 projection written as [[Z, X], [X^dag, 1 - W]], with the
/// residuals of the projection relations those entries must satisfy.
struct BlockDecomposition {
    CMatrix Z, X, W;
    double r_z_hermitian = 0.0;  // ||Z - Z^dag||
    double r_w_hermitian = 0.0;  // ||W - W^dag||
    double r_intertwine = 0.0;   // ||Z X - X W||
    double r_z_defect = 0.0;     // ||Z(1-Z) - X X^dag||
    double r_w_defect = 0.0;     // ||W(1-W) - X^dag X||

    double max_residual() const {
        return std::max({r_z_hermitian, r_w_hermitian, r_intertwine, r_z_defect,
                         r_w_defect});
    }
};

BlockDecomposition block_decompose(const Block2& e);

/// (min, max) eigenvalue of partial_trace(e) - 1.
std::pair<double, double> trace_bounds(const Block2& e);

enum class CertStatus {
    Inconclusive,  // 0 lies in [alpha, beta]
    Certified,     // at least one integer k with 1/k in [alpha, beta]
    Violation,     // no candidate although 0 is excluded: upstream failure
};

struct IntegerCertificate {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<long> k_candidates;
    bool unique = false;
    CertStatus status = CertStatus::Inconclusive;
    double slack = 0.0;  // numeric widening applied to [alpha, beta]
};

/// Enumerates integers k with 1/k in [alpha - slack, beta + slack].
IntegerCertificate extract_integer(double alpha, double beta, double slack = 1e-12);

/// Hausdorff distance between Spec Z union {0,1} and Spec W union {0,1}.
double spec_union_margin(const BlockDecomposition& d);

/// theta(hbar) = 2/hbar + sum_j tail[j] hbar^j, leading coefficient pinned.
struct LaurentPolynomial {
    std::vector<double> tail;
    double fit_residual = 0.0;
    /// Leading 1/hbar coefficient of the unconstrained diagnostic fit; should
    /// sit at 2 when the pipeline is healthy.
    double leading_unconstrained = 2.0;

    double eval(double hbar) const;
};

struct ThetaSample {
    double hbar = 0.0;
    double tau = 0.0;    // scalar representative of tr e - 1 (midpoint of bounds)
    double width = 0.0;  // beta - alpha, used as an inverse-variance weight
};

/// Weighted least squares of 1/tau against 2/hbar + polynomial tail.
LaurentPolynomial fit_theta(const std::vector<ThetaSample>& samples, int degree);

std::vector<double> integer_distance_scan(const LaurentPolynomial& theta,
                                          const std::vector<double>& hbars);

/// Excluded parameter values 2 / (k - c + 1/2) for k in [k_min, k_max] with
/// positive denominator; at each, 2/hbar + c is exactly half-integral.
std::vector<double> excluded_points(double c, int k_min, int k_max);

struct PipelineOptions {
    double eps = 0.0;           // perturbation strength; 0 = plain Toeplitz map
    std::uint64_t seed = 1;
    int squash_rounds = 0;
    int band_out = 8;           // dequantization band for the squash solve
    int theta_degree = 2;
    double purify_tol = 1e-12;
};

struct PipelineEntry {
    int N = 0;
    double hbar = 0.0;
    bool ok = false;
    std::string error;

    IntegerCertificate cert;
    double relation_residual_max = 0.0;
    double spec_margin = 0.0;
    double spread_before = 0.0;  // before the first squash round
    double spread_after = 0.0;   // after the last round (equal if none)
    double tau_mid = 0.0;
    double width = 0.0;
    double integer_distance = 0.0;  // filled after the theta fit
};

struct PipelineResult {
    std::vector<PipelineEntry> entries;
    LaurentPolynomial theta;
    bool any_failed = false;
};

/// Quantize the classical rank-one projection over each scan point
/// (optionally through a perturbed and unitalized map), purify, apply the
/// requested squash rounds, extract per-N integer certificates, then fit the
/// Laurent trace density across the scan.
PipelineResult certify_pipeline(const ScanGrid& scan, const PipelineOptions& opt);

}  // namespace fuzzy
