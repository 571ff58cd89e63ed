#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "tfcl/norms.hpp"
#include "tfcl/schedule.hpp"
#include "tfcl/trajectory.hpp"
#include "tfcl/weights.hpp"

namespace tfcl {

namespace detail {

/// Coefficient time series per lattice exponent, pulled from per-snapshot
/// fits, plus their time derivatives. Exponents absent from a fit basis
/// contribute zero.
struct CoefficientSeries {
    std::vector<AdmissibleExponent> exponents;
    // d[m][i][j]: m-th time derivative of coefficient i at snapshot j
    std::vector<std::vector<std::vector<double>>> d;

    static CoefficientSeries build(const Trajectory& traj, int N0, int max_m) {
        if (traj.fits.size() != traj.snapshots.size())
            throw std::invalid_argument("parabolic norms: per-snapshot fits required");
        CoefficientSeries cs;
        cs.exponents = lattice(N0).entries;
        const double dt = traj.mesh_spacing();
        std::vector<std::vector<double>> base;
        for (const auto& e : cs.exponents) {
            std::vector<double> series(traj.size());
            for (std::size_t j = 0; j < traj.size(); ++j)
                series[j] = traj.fits[j].coefficient_or_zero(e);
            base.push_back(std::move(series));
        }
        cs.d.resize(max_m + 1);
        cs.d[0] = base;
        for (int m = 1; m <= max_m; ++m) {
            cs.d[m].clear();
            for (const auto& s : cs.d[m - 1]) cs.d[m].push_back(series_derivative(s, dt, 1));
        }
        return cs;
    }
};

/// u_minus_partial = field - sum_{i in basis, lo < i < thr} c_i x^i.
inline GridFunction subtract_partial(const GridFunction& field,
                                     const std::vector<AdmissibleExponent>& exps,
                                     const std::vector<GridFunction>& monomials,
                                     const std::vector<std::vector<double>>& coeff_m,
                                     std::size_t j, double thr, double lo) {
    GridFunction out = field;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const double v = exps[i].value();
        if (v <= lo || v >= thr) continue;
        const double c = coeff_m[i][j];
        if (c == 0.0) continue;
        for (std::size_t p = 0; p < out.size(); ++p)
            out.values[p] -= c * monomials[i].values[p];
    }
    return out;
}

inline std::vector<GridFunction> lattice_monomials(const LogGrid& g,
                                                   const std::vector<AdmissibleExponent>& exps) {
    std::vector<GridFunction> mono;
    mono.reserve(exps.size());
    for (const auto& e : exps)
        mono.push_back(GridFunction::sample_s(g, [&](double s) { return std::exp(e.value() * s); }));
    return mono;
}

inline double time_weight(double t, double p) {
    if (t <= 0.0) return (p == 0.0) ? 1.0 : 0.0;
    return std::pow(t, p);
}

} // namespace detail

/// Discrete evaluation of the solution norm |||u|||: for each weight pair
/// (alpha,N) and both delta sides with alpha' in (0,1),
///   sup_t t^{2(alpha+N)-3} |dt^m u - partial expansion|_{ell+2, a'+N-m-3/2}^2
/// + int t^{2(alpha+N)-3} |dt^{m+1} u - partial|_{ell, a'+N-m-2}^2 dt
/// + int t^{2(alpha+N)-3} |dt^m u - partial|_{ell+4, a'+N-m-1}^2 dt,
/// summed over m = 0..N-1, with the partial expansion truncated strictly
/// below the spatial weight. Sup-in-time is a max over snapshots and time
/// integrals are trapezoid sums; the grid/time windows are whatever the
/// trajectory carries.
inline double solution_norm(const Trajectory& traj, const DerivativeSchedule& sched,
                            const WeightSet& A) {
    if (traj.size() < 3) throw std::invalid_argument("solution_norm: need >= 3 snapshots");
    const int N0 = sched.N0();
    const double delta = sched.delta();
    const auto cs = detail::CoefficientSeries::build(traj, N0, N0 + 1);
    const auto mono = detail::lattice_monomials(traj.grid(), cs.exponents);
    const double dt = traj.mesh_spacing();

    std::vector<std::vector<GridFunction>> dU(static_cast<std::size_t>(N0) + 1);
    dU[0] = traj.snapshots;
    for (int m = 1; m <= N0; ++m) dU[m] = time_derivative(traj.snapshots, dt, m);
    (void)dt;

    double acc = 0.0;
    for (const auto& pair : A.pairs) {
        for (int sign : {-1, +1}) {
            const ShiftedWeight w{pair.alpha, sign};
            if (!w.in_unit_interval()) continue;
            const double ap = pair.alpha.value() + sign * delta;
            const double tw = 2.0 * (pair.alpha.value() + pair.N) - 3.0;
            for (int m = 0; m <= pair.N - 1; ++m) {
                const int n = pair.N - m;
                const auto ell = static_cast<int>(sched.ell(n, m, w));
                const double thr1 = ap + n - 1.5;
                const double thr2 = ap + n - 2.0;
                const double thr3 = ap + n - 1.0;

                double sup_term = 0.0;
                for (std::size_t j = 0; j < traj.size(); ++j) {
                    const GridFunction g = detail::subtract_partial(
                        dU[m][j], cs.exponents, mono, cs.d[m], j, thr1, -1.0);
                    sup_term = std::max(sup_term, detail::time_weight(traj.times[j], tw) *
                                                      sobolev_sq(g, ell + 2, thr1));
                }
                acc += sup_term;

                acc += time_integral(traj.times, [&](std::size_t j) {
                    const GridFunction g = detail::subtract_partial(
                        dU[m + 1][j], cs.exponents, mono, cs.d[m + 1], j, thr2, -1.0);
                    return detail::time_weight(traj.times[j], tw) * sobolev_sq(g, ell, thr2);
                });

                acc += time_integral(traj.times, [&](std::size_t j) {
                    const GridFunction g = detail::subtract_partial(
                        dU[m][j], cs.exponents, mono, cs.d[m], j, thr3, -1.0);
                    return detail::time_weight(traj.times[j], tw) * sobolev_sq(g, ell + 4, thr3);
                });
            }
        }
    }
    return std::sqrt(acc);
}

/// Discrete evaluation of the right-hand-side norm |||f|||_1: same weight
/// sweep, one term per (pair, side, m):
///   int t^{2(alpha+N)-3} |dt^m f - sum_{beta < i < a'+N-m-1} f_i^(m) x^i|_{ell, a'+N-m-1}^2 dt.
/// The f-fits must exclude the kernel exponents {0, beta}.
inline double rhs_norm(const Trajectory& ftraj, const DerivativeSchedule& sched,
                       const WeightSet& A) {
    if (ftraj.size() < 3) throw std::invalid_argument("rhs_norm: need >= 3 snapshots");
    if (!ftraj.fits.empty()) {
        for (const auto& e : ftraj.fits[0].exponents)
            if (e == AdmissibleExponent{0, 0} || e == AdmissibleExponent{0, 1})
                throw std::invalid_argument("rhs_norm: f-fits must exclude exponents {0, beta}");
    }
    const int N0 = sched.N0();
    const double delta = sched.delta();
    const auto cs = detail::CoefficientSeries::build(ftraj, N0, N0 + 1);
    const auto mono = detail::lattice_monomials(ftraj.grid(), cs.exponents);
    const double dt = ftraj.mesh_spacing();
    const double beta_v = beta();

    std::vector<std::vector<GridFunction>> dF(static_cast<std::size_t>(N0) + 1);
    dF[0] = ftraj.snapshots;
    for (int m = 1; m <= N0; ++m) dF[m] = time_derivative(ftraj.snapshots, dt, m);

    double acc = 0.0;
    for (const auto& pair : A.pairs) {
        for (int sign : {-1, +1}) {
            const ShiftedWeight w{pair.alpha, sign};
            if (!w.in_unit_interval()) continue;
            const double ap = pair.alpha.value() + sign * delta;
            const double tw = 2.0 * (pair.alpha.value() + pair.N) - 3.0;
            for (int m = 0; m <= pair.N - 1; ++m) {
                const int n = pair.N - m;
                const auto ell = static_cast<int>(sched.ell(n, m, w));
                const double thr = ap + n - 1.0;
                acc += time_integral(ftraj.times, [&](std::size_t j) {
                    const GridFunction g = detail::subtract_partial(
                        dF[m][j], cs.exponents, mono, cs.d[m], j, thr, beta_v);
                    return detail::time_weight(ftraj.times[j], tw) * sobolev_sq(g, ell, thr);
                });
            }
        }
    }
    return std::sqrt(acc);
}

} // namespace tfcl
