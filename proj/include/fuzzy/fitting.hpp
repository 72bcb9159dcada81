#pragma once

// Small least-squares helpers: polynomial fits and log-log slope extraction
// for residual-order scans.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fuzzy {

/// Least-squares fit of y = sum_j coeff[j] * x^j, optional per-sample weights.
inline Eigen::VectorXd polyfit(const std::vector<double>& xs,
                               const std::vector<double>& ys, int degree,
                               const std::vector<double>* weights = nullptr) {
    if (xs.size() != ys.size() || xs.size() < static_cast<std::size_t>(degree + 1)) {
        throw std::invalid_argument("polyfit: need at least degree+1 samples");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd V(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = weights ? std::sqrt((*weights)[i]) : 1.0;
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            V(i, j) = w * p;
            p *= xs[i];
        }
        b(i) = w * ys[i];
    }
    return V.colPivHouseholderQr().solve(b);
}

inline double polyval(const Eigen::VectorXd& coeffs, double x) {
    double acc = 0.0;
    for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) acc = acc * x + coeffs(j);
    return acc;
}

/// Slope of the standard least-squares line through (log x, log y).
/// Requires positive data; at least two samples.
inline double loglog_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("loglog_slope: need at least two samples");
    }
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0 || ys[i] <= 0.0) {
            throw std::invalid_argument("loglog_slope: data must be positive");
        }
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const Eigen::VectorXd line = polyfit(lx, ly, 1);
    return line(1);
}

}  // namespace fuzzy
