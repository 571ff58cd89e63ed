#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tfcl/fit.hpp"
#include "tfcl/grid.hpp"

namespace tfcl {

/// Time-stamped snapshots on a fixed grid, with optional per-snapshot
/// expansion fits. Appended by the solvers, read by the diagnostics.
struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> snapshots;
    std::vector<ExpansionFit> fits; // empty, or one per snapshot

    void append(double t, GridFunction u) {
        if (!times.empty()) {
            if (t <= times.back()) throw std::invalid_argument("Trajectory: times must increase");
            snapshots.front().check_same_grid(u);
        } else if (t < 0.0) {
            throw std::invalid_argument("Trajectory: times must be >= 0");
        }
        times.push_back(t);
        snapshots.push_back(std::move(u));
    }

    std::size_t size() const { return times.size(); }
    const LogGrid& grid() const { return snapshots.at(0).grid; }

    double mesh_spacing() const {
        if (times.size() < 2) throw std::invalid_argument("Trajectory: need >= 2 snapshots");
        const double dt = times[1] - times[0];
        for (std::size_t j = 1; j + 1 < times.size(); ++j)
            if (std::abs((times[j + 1] - times[j]) - dt) > 1e-9 * dt)
                throw std::invalid_argument("Trajectory: stored-time mesh not uniform");
        return dt;
    }

    /// Piecewise-linear interpolation in time.
    GridFunction interpolate(double t) const {
        if (times.empty()) throw std::invalid_argument("Trajectory: empty");
        if (t <= times.front()) return snapshots.front();
        if (t >= times.back()) return snapshots.back();
        std::size_t hi = 1;
        while (times[hi] < t) ++hi;
        const double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
        GridFunction u = snapshots[hi - 1];
        u *= (1.0 - w);
        GridFunction v = snapshots[hi];
        v *= w;
        u += v;
        return u;
    }

    void compute_fits(int N0, double x_fit, const FitOptions& opt = {}) {
        fits.clear();
        fits.reserve(snapshots.size());
        for (const auto& u : snapshots) fits.push_back(extract_expansion(u, N0, x_fit, opt));
    }
};

/// Second-order time differentiation of a snapshot series on a uniform
/// mesh: centered interior, one-sided at the two ends. Higher m by
/// repeated application.
inline std::vector<GridFunction> time_derivative(const std::vector<GridFunction>& u, double dt,
                                                 int m = 1) {
    if (m == 0) return u;
    if (u.size() < 3) throw std::invalid_argument("time_derivative: need >= 3 snapshots");
    std::vector<GridFunction> d;
    d.reserve(u.size());
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j) {
        GridFunction g(u[0].grid, 0.0);
        if (j == 0) {
            for (std::size_t i = 0; i < g.size(); ++i)
                g.values[i] = (-3.0 * u[0].values[i] + 4.0 * u[1].values[i] - u[2].values[i]) / (2.0 * dt);
        } else if (j + 1 == n) {
            for (std::size_t i = 0; i < g.size(); ++i)
                g.values[i] = (3.0 * u[n - 1].values[i] - 4.0 * u[n - 2].values[i] + u[n - 3].values[i]) / (2.0 * dt);
        } else {
            for (std::size_t i = 0; i < g.size(); ++i)
                g.values[i] = (u[j + 1].values[i] - u[j - 1].values[i]) / (2.0 * dt);
        }
        d.push_back(std::move(g));
    }
    return (m == 1) ? d : time_derivative(d, dt, m - 1);
}

/// Same scheme for scalar time series (expansion coefficients).
inline std::vector<double> series_derivative(const std::vector<double>& c, double dt, int m = 1) {
    if (m == 0) return c;
    if (c.size() < 3) throw std::invalid_argument("series_derivative: need >= 3 samples");
    const std::size_t n = c.size();
    std::vector<double> d(n);
    d[0] = (-3.0 * c[0] + 4.0 * c[1] - c[2]) / (2.0 * dt);
    d[n - 1] = (3.0 * c[n - 1] - 4.0 * c[n - 2] + c[n - 3]) / (2.0 * dt);
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (c[j + 1] - c[j - 1]) / (2.0 * dt);
    return (m == 1) ? d : series_derivative(d, dt, m - 1);
}

/// Trapezoid rule over the stored times for a per-snapshot integrand.
inline double time_integral(const std::vector<double>& times,
                            const std::function<double(std::size_t)>& integrand) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < times.size(); ++j)
        acc += 0.5 * (times[j + 1] - times[j]) * (integrand(j) + integrand(j + 1));
    return acc;
}

} // namespace tfcl
