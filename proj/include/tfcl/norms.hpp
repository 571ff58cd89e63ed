#pragma once

#include <cmath>
#include <vector>

#include "tfcl/fd.hpp"
#include "tfcl/grid.hpp"

namespace tfcl {

/// Trapezoid weights for the grid window in s.
inline double trapezoid_weight(const LogGrid& g, std::size_t j) {
    const double h = g.spacing();
    return (j == 0 || j + 1 == g.count) ? 0.5 * h : h;
}

/// Weighted inner product (u,v)_alpha = int e^{-2 alpha s} u v ds over the
/// grid window (trapezoid rule).
inline double weighted_inner(const GridFunction& u, const GridFunction& v, double alpha) {
    u.check_same_grid(v);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double w = std::exp(-2.0 * alpha * u.grid.s(j));
        acc += trapezoid_weight(u.grid, j) * w * u.values[j] * v.values[j];
    }
    return acc;
}

/// |u|_alpha = sqrt(int e^{-2 alpha s} u^2 ds) over the grid window.
inline double weighted_l2(const GridFunction& u, double alpha) {
    return std::sqrt(weighted_inner(u, u, alpha));
}

/// Same norm restricted to s in [s_lo, s_hi].
inline double weighted_l2_window(const GridFunction& u, double alpha, double s_lo, double s_hi) {
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double s = u.grid.s(j);
        if (s < s_lo || s > s_hi) continue;
        const double w = std::exp(-2.0 * alpha * s);
        acc += trapezoid_weight(u.grid, j) * w * u.values[j] * u.values[j];
    }
    return std::sqrt(acc);
}

/// |u|_{k,alpha}^2 = sum_{l<=k} |D^l u|_alpha^2. Each order is computed
/// one-shot (native stencil or windowed fit), never by cumulative
/// composition.
inline double sobolev_sq(const GridFunction& u, int k, double alpha) {
    double acc = weighted_inner(u, u, alpha);
    for (int l = 1; l <= k; ++l) {
        const GridFunction d = log_derivative(u, l);
        acc += weighted_inner(d, d, alpha);
    }
    return acc;
}

inline double sobolev(const GridFunction& u, int k, double alpha) {
    return std::sqrt(sobolev_sq(u, k, alpha));
}

} // namespace tfcl
