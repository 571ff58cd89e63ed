#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcl/exponents.hpp"
#include "tfcl/grid.hpp"
#include "tfcl/norms.hpp"

namespace tfcl {

/// Result of fitting the singular expansion u = sum_i u_i x^i + R x^{N0}
/// on a window (0, x_fit].
struct ExpansionFit {
    int N0 = 0;
    double x_fit = 0.0;
    std::vector<AdmissibleExponent> exponents;
    std::vector<double> coefficients;       // same order as exponents
    std::vector<double> confidence;         // rough 1-sigma per coefficient
    double remainder_norm = 0.0;            // weighted_l2 at alpha = N0 - delta over the window
    double condition_number = 1.0;          // of the column-scaled design matrix
    bool flagged = false;                   // condition number above threshold
    std::vector<std::string> warnings;

    double coefficient(const AdmissibleExponent& e) const {
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] == e) return coefficients[i];
        throw std::invalid_argument("ExpansionFit: exponent not in basis");
    }
    double coefficient_or_zero(const AdmissibleExponent& e) const {
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] == e) return coefficients[i];
        return 0.0;
    }
    /// Constant coefficient u_0 (zero if excluded from the basis).
    double constant_term() const { return coefficient_or_zero(AdmissibleExponent{0, 0}); }
};

/// sum_i c_i x^i multiplied by a smooth cutoff (1 on (0,x_on], 0 beyond
/// x_off). Test-data generator for the fit round trips.
inline GridFunction synthesize(const std::vector<AdmissibleExponent>& exps,
                               const std::vector<double>& coeffs,
                               const CutoffSpec& envelope,
                               const LogGrid& grid) {
    if (exps.size() != coeffs.size())
        throw std::invalid_argument("synthesize: exponent/coefficient size mismatch");
    if (!(envelope.x_on < envelope.x_off))
        throw std::invalid_argument("synthesize: cutoff requires x_on < x_off");
    GridFunction u(grid, 0.0);
    for (std::size_t j = 0; j < grid.count; ++j) {
        const double x = grid.x(j);
        double acc = 0.0;
        for (std::size_t i = 0; i < exps.size(); ++i)
            acc += coeffs[i] * std::pow(x, exps[i].value());
        u.values[j] = acc * envelope(x);
    }
    return u;
}

struct FitOptions {
    double delta = 0.05;                    // remainder weight is N0 - delta
    double condition_threshold = 1e10;
    double degenerate_gap = 0.1;            // exponent-pair proximity warning
    std::vector<AdmissibleExponent> exclude; // e.g. {0, beta} for forcing fits
};

/// Weighted least squares of u against the basis {x^i : i in K_{N0}} on
/// (0, x_fit], rows weighted by the remainder weight e^{-(N0-delta)s},
/// columns scaled to unit norm, solved by Householder QR with column
/// pivoting. An ill-conditioned fit is flagged but still returned.
inline ExpansionFit extract_expansion(const GridFunction& u, int N0, double x_fit,
                                      const FitOptions& opt = {}) {
    const LogGrid& g = u.grid;
    if (!(x_fit > g.x(0) && x_fit <= g.x(g.count - 1)))
        throw std::invalid_argument("extract_expansion: x_fit outside grid");

    ExpansionFit fit;
    fit.N0 = N0;
    fit.x_fit = x_fit;
    for (const auto& e : lattice(N0).entries) {
        bool excluded = false;
        for (const auto& ex : opt.exclude)
            if (ex == e) excluded = true;
        if (!excluded) fit.exponents.push_back(e);
    }

    std::size_t rows = 0;
    while (rows < g.count && g.x(rows) <= x_fit) ++rows;
    const std::size_t cols = fit.exponents.size();
    if (rows < 5 * std::max<std::size_t>(cols, 1))
        throw std::invalid_argument("extract_expansion: need at least 5*|K| points below x_fit");

    for (std::size_t i = 0; i + 1 < fit.exponents.size(); ++i) {
        const double gap = fit.exponents[i + 1].value() - fit.exponents[i].value();
        if (gap < opt.degenerate_gap)
            fit.warnings.push_back("near-degenerate exponent pair (" +
                                   std::to_string(fit.exponents[i].value()) + ", " +
                                   std::to_string(fit.exponents[i + 1].value()) + ")");
    }

    const double alpha_rem = static_cast<double>(N0) - opt.delta;
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    for (std::size_t j = 0; j < rows; ++j) {
        const double s = g.s(j);
        const double w = std::exp(-alpha_rem * s) * std::sqrt(trapezoid_weight(g, j));
        for (std::size_t i = 0; i < cols; ++i)
            A(j, i) = w * std::exp(fit.exponents[i].value() * s);
        b(j) = w * u.values[j];
    }

    Eigen::VectorXd scale(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        scale(i) = A.col(i).norm();
        if (scale(i) == 0.0) scale(i) = 1.0;
        A.col(i) /= scale(i);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::VectorXd y = qr.solve(b);

    const auto& R = qr.matrixR();
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cols; ++i) {
        const double d = std::abs(R(i, i));
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    fit.condition_number = (rmin > 0.0) ? rmax / rmin : std::numeric_limits<double>::infinity();
    fit.flagged = !(fit.condition_number < opt.condition_threshold);

    const Eigen::VectorXd resid = b - A * y;
    const double resid_rms = resid.norm();

    fit.coefficients.resize(cols);
    fit.confidence.resize(cols);
    const auto perm = qr.colsPermutation().indices();
    std::vector<double> rdiag_by_col(cols, 1.0);
    for (std::size_t i = 0; i < cols; ++i)
        rdiag_by_col[static_cast<std::size_t>(perm(i))] = std::abs(R(i, i));
    for (std::size_t i = 0; i < cols; ++i) {
        fit.coefficients[i] = y(i) / scale(i);
        fit.confidence[i] = resid_rms / (rdiag_by_col[i] * scale(i));
    }

    // Remainder in |.|_{N0-delta} over the window: the weighted residual is
    // exactly that integrand, so reuse it.
    fit.remainder_norm = resid_rms;
    return fit;
}

/// Norm controlling the initial data:
/// sqrt(|u0|_{k+6,-delta}^2 + |u0 - u0_0|_{k+6,delta}^2) with u0_0 the
/// fitted constant coefficient.
inline double initial_norm(const GridFunction& u0, int k, double delta, double x_fit = 0.1) {
    const ExpansionFit fit = extract_expansion(u0, 1, x_fit, FitOptions{delta});
    GridFunction shifted = u0;
    shifted += -fit.constant_term();
    return std::sqrt(sobolev_sq(u0, k + 6, -delta) + sobolev_sq(shifted, k + 6, delta));
}

} // namespace tfcl
