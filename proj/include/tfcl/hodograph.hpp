#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tfcl/fit.hpp"
#include "tfcl/grid.hpp"
#include "tfcl/multilinear.hpp"
#include "tfcl/series.hpp"
#include "tfcl/trajectory.hpp"

namespace tfcl {

/// Film profile in physical variables: samples (z_j, h_j) with h strictly
/// increasing beyond the contact point z = Z0, h(Z0) = 0.
struct PhysicalProfile {
    double Z0 = 0.0;
    std::vector<double> z;
    std::vector<double> h;

    void validate() const {
        if (z.size() != h.size() || z.size() < 4)
            throw std::invalid_argument("PhysicalProfile: need >= 4 samples");
        for (std::size_t j = 1; j < h.size(); ++j)
            if (!(h[j] > h[j - 1]) || !(z[j] > z[j - 1]))
                throw std::invalid_argument("PhysicalProfile: profile not strictly monotone");
        if (!(h.front() >= 0.0)) throw std::invalid_argument("PhysicalProfile: h must be >= 0");
    }
};

namespace detail {

/// Fritsch-Carlson monotone cubic interpolant on nonuniform nodes.
struct Pchip {
    std::vector<double> x, y, d;

    Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        const std::size_t n = x.size();
        if (n < 3) throw std::invalid_argument("Pchip: need >= 3 nodes");
        std::vector<double> hseg(n - 1), slope(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            hseg[j] = x[j + 1] - x[j];
            if (!(hseg[j] > 0.0)) throw std::invalid_argument("Pchip: nodes must increase");
            slope[j] = (y[j + 1] - y[j]) / hseg[j];
        }
        d.assign(n, 0.0);
        for (std::size_t j = 1; j + 1 < n; ++j) {
            if (slope[j - 1] * slope[j] <= 0.0) { d[j] = 0.0; continue; }
            const double w1 = 2.0 * hseg[j] + hseg[j - 1];
            const double w2 = hseg[j] + 2.0 * hseg[j - 1];
            d[j] = (w1 + w2) / (w1 / slope[j - 1] + w2 / slope[j]);
        }
        auto endpoint = [&](std::size_t i0, std::size_t i1, double h0, double h1,
                            double s0, double s1) {
            double dd = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
            if (dd * s0 <= 0.0) dd = 0.0;
            else if (s0 * s1 < 0.0 && std::abs(dd) > 3.0 * std::abs(s0)) dd = 3.0 * s0;
            (void)i0; (void)i1;
            return dd;
        };
        d[0] = endpoint(0, 1, hseg[0], hseg[1], slope[0], slope[1]);
        d[n - 1] = endpoint(n - 1, n - 2, hseg[n - 2], hseg[n - 3], slope[n - 2], slope[n - 3]);
    }

    std::size_t segment(double q) const {
        if (q < x.front() || q > x.back()) throw std::out_of_range("Pchip: query outside data");
        std::size_t lo = 0, hi = x.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (x[mid] <= q ? lo : hi) = mid;
        }
        return lo;
    }

    double operator()(double q) const {
        const std::size_t j = segment(q);
        const double hh = x[j + 1] - x[j];
        const double t = (q - x[j]) / hh;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * y[j] + hh * h10 * d[j] + h01 * y[j + 1] + hh * h11 * d[j + 1];
    }
};

/// Cumulative integral of f(s) on the uniform grid, fourth order: Simpson
/// pairs with a cubic (Adams-Moulton) rule for odd steps.
inline std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw std::invalid_argument("cumulative_integral: need >= 4 samples");
    std::vector<double> I(n, 0.0);
    auto am_step = [&](std::size_t j) { // integral over [s_{j-1}, s_j] using j-3..j
        return h * (9.0 * f[j] + 19.0 * f[j - 1] - 5.0 * f[j - 2] + f[j - 3]) / 24.0;
    };
    // first step via the mirrored cubic rule on nodes 0..3
    I[1] = I[0] + h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    I[2] = I[0] + h * (f[0] + 4.0 * f[1] + f[2]) / 3.0;
    for (std::size_t j = 3; j < n; ++j) {
        if (j % 2 == 0) I[j] = I[j - 2] + h * (f[j - 2] + 4.0 * f[j - 1] + f[j]) / 3.0;
        else I[j] = I[j - 1] + am_step(j);
    }
    return I;
}

} // namespace detail

/// Reconstructs the physical profile from hodograph data:
/// Z(x) = Z0 + int_0^x (1+u)^{-1} dx', h(Z(x)) = x^{3/2}. The segment below
/// the first grid point is integrated analytically from the fitted
/// expansion of u (the integrand is smooth in x there); the rest by
/// fourth-order cumulative quadrature in s.
inline PhysicalProfile from_hodograph(const GridFunction& u, double Z0, int fit_order = 2,
                                      double x_fit = 0.1) {
    GridFunction F = u;
    F += 1.0;
    if (!(F.min_value() > 0.0)) throw std::domain_error("from_hodograph: 1+u must be positive");
    const LogGrid& g = u.grid;

    // analytic head: int_0^{x_0} series(1/(1+u)) dx
    const ExpansionFit fit = extract_expansion(u, fit_order, x_fit);
    PowerSeries one_plus_u = PowerSeries::constant(1.0, fit_order);
    for (std::size_t i = 0; i < fit.exponents.size(); ++i)
        one_plus_u.add_term(fit.exponents[i], fit.coefficients[i]);
    const PowerSeries recip = reciprocal(one_plus_u);
    const double x0 = g.x(0);
    double head = 0.0;
    for (const auto& t : recip.terms())
        head += t.c * std::pow(x0, 1.0 + t.e.value()) / (1.0 + t.e.value());

    // integrand x/(1+u) in s from the first node on
    std::vector<double> integrand(g.count);
    for (std::size_t j = 0; j < g.count; ++j) integrand[j] = g.x(j) / F.values[j];
    const std::vector<double> I = detail::cumulative_integral(integrand, g.spacing());

    PhysicalProfile prof;
    prof.Z0 = Z0;
    prof.z.resize(g.count);
    prof.h.resize(g.count);
    for (std::size_t j = 0; j < g.count; ++j) {
        prof.z[j] = Z0 + head + I[j];
        prof.h[j] = std::pow(g.x(j), 1.5);
    }
    prof.validate();
    return prof;
}

/// Transforms a physical profile into the hodograph field u on the grid:
/// Z(x) = h^{-1}(x^{3/2}) by monotone cubic interpolation, Z_x by
/// differentiating the resampled interpolant in s, and u = 1/Z_x - 1.
/// The interpolation runs in the de-singularized variable y = h^{2/3}
/// (z - Z0 scales like h^{2/3} at the contact point, so z(y) is the smooth
/// parametrization and the grid queries are y = x).
inline GridFunction to_hodograph(const PhysicalProfile& profile, const LogGrid& g) {
    profile.validate();
    std::vector<double> ys, zs;
    ys.reserve(profile.h.size() + 1);
    zs.reserve(profile.z.size() + 1);
    if (profile.h.front() > 0.0) { // anchor the contact point
        ys.push_back(0.0);
        zs.push_back(profile.Z0);
    }
    for (std::size_t j = 0; j < profile.h.size(); ++j) {
        ys.push_back(std::pow(profile.h[j], 2.0 / 3.0));
        zs.push_back(profile.z[j]);
    }
    const detail::Pchip inv(ys, zs);

    GridFunction zfun(g);
    const double y_max = ys.back();
    for (std::size_t j = 0; j < g.count; ++j) {
        const double yq = g.x(j);
        if (yq > y_max * (1.0 + 1e-12))
            throw std::invalid_argument("to_hodograph: grid extends beyond profile support");
        zfun.values[j] = inv(std::min(yq, y_max));
    }
    const GridFunction dz = d_apply(zfun, 1); // dZ/ds
    GridFunction u(g);
    for (std::size_t j = 0; j < g.count; ++j) {
        const double Zx = dz.values[j] / g.x(j);
        if (!(Zx > 0.0)) throw std::domain_error("to_hodograph: non-monotone reconstruction");
        u.values[j] = 1.0 / Zx - 1.0;
    }
    return u;
}

/// Contact-line kinematics from the boundary coefficient series u0(t):
/// V0 = (3/8)(1+u0)^3 pointwise and Z0(t) = z_start - int_0^t V0 dt'
/// (trapezoid on the stored mesh).
struct ContactLine {
    std::vector<double> times;
    std::vector<double> V0;
    std::vector<double> Z0;
};

inline ContactLine contact_line(const std::vector<double>& times,
                                const std::vector<double>& u0_series, double z_start) {
    if (times.size() != u0_series.size())
        throw std::invalid_argument("contact_line: size mismatch");
    ContactLine cl;
    cl.times = times;
    cl.V0.resize(times.size());
    cl.Z0.resize(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double c = 1.0 + u0_series[j];
        cl.V0[j] = 0.375 * c * c * c;
    }
    double acc = 0.0;
    cl.Z0[0] = z_start;
    for (std::size_t j = 1; j < times.size(); ++j) {
        acc += 0.5 * (times[j] - times[j - 1]) * (cl.V0[j] + cl.V0[j - 1]);
        cl.Z0[j] = z_start - acc;
    }
    return cl;
}

/// V = M~(F,F,F) with F = 1+u.
inline GridFunction velocity_profile(const GridFunction& u) {
    GridFunction F = u;
    F += 1.0;
    if (!(F.min_value() > 0.0)) throw std::domain_error("velocity_profile: degenerate 1+u");
    return velocity_tilde(F, F, F);
}

/// Expansion transport through the hodograph chain: from the fitted u-series
/// to the Z_x series, the inverted contact-line coordinate series, and the
/// physical-side h and V expansions.
struct TransportedExpansion {
    int N0 = 0;
    PowerSeries u_series;    // u_i over the lattice
    PowerSeries Zx_series;   // (Z_x)_i, constant (1+u0)^{-1}
    PowerSeries c_series;    // x = (1+u0) x~ (1 + sum c_i x~^i)
    PowerSeries h_series;    // h = x~^{3/2} (1 + sum u~_i x~^i): stores u~_i
    PowerSeries V_series;    // V(x) = A + sum_{i>=1} V_i x^i (stores the full series incl. A)
    PowerSeries V_tilde;     // V(z) = A + sum V~_i x~^i (stores the full series incl. A)
    double u0 = 0.0;
    double A = 0.0;          // -(3/8)(1+u0)^3

    TransportedExpansion(int n)
        : N0(n), u_series(n), Zx_series(n), c_series(n), h_series(n), V_series(n), V_tilde(n) {}
};

inline TransportedExpansion transport_expansion(const ExpansionFit& fit, int N0) {
    if (fit.N0 < N0)
        throw std::invalid_argument("transport_expansion: fit order below requested N0");
    TransportedExpansion out(N0);
    for (std::size_t i = 0; i < fit.exponents.size(); ++i)
        out.u_series.add_term(fit.exponents[i], fit.coefficients[i]);
    out.u0 = out.u_series.constant_term();
    const double c0 = 1.0 + out.u0;
    out.A = -0.375 * c0 * c0 * c0;

    PowerSeries F = PowerSeries::constant(1.0, N0) + out.u_series;

    // Z_x = F^{-1}; x~ = x * H(x) with H the term-wise integral factors.
    out.Zx_series = reciprocal(F);
    const PowerSeries H = out.Zx_series.integrated_factors();

    // series inversion x(x~) = (1+u0) x~ (1 + c-series)
    const PowerSeries G = invert_series(H); // x = x~ G(x~)
    const double g0 = G.constant_term();    // = 1 + u0
    out.c_series = (G - PowerSeries::constant(g0, N0)).scaled(1.0 / g0);

    // h / x~^{3/2} - 1 = (1+u0)^{3/2} (1 + c)^{3/2} - 1
    out.h_series = binomial_power(out.c_series, 1.5).scaled(std::pow(g0, 1.5)) -
                   PowerSeries::constant(1.0, N0);

    // velocity series in x: (3/2) F (D-1/2) F (D+1/2) F
    PowerSeries t = F.d_plus(0.5);
    t = (F * t).d_plus(-0.5);
    out.V_series = (F * t).scaled(1.5);

    // transport V through x = g0 x~ (1 + c)
    out.V_tilde = compose_scaled(out.V_series, g0, out.c_series);
    return out;
}

} // namespace tfcl
