#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcl/linear_solver.hpp"
#include "tfcl/multilinear.hpp"
#include "tfcl/parabolic_norms.hpp"

namespace tfcl {

/// Parameters of the Picard fixed-point iteration
///   u^(1) = S[u0, 0],  u^(v+1) = S[u0, N(u^(v))].
struct PicardConfig {
    int N0 = 1;
    double tol = 1e-10;
    int max_iter = 25;
    double damping = 1.0;              // 1 = plain Picard
    double smallness_threshold = 0.05; // empirical contraction region, not the theorem's epsilon
    double guard = 0.1;                // min(1+u) floor
    double delta = 0.0;                // 0 = default_delta(N0)
    double x_fit = 0.1;

    LogGrid grid;
    double dt = 1e-3;
    double t_end = 10.0;
    double theta = 1.0;
    std::size_t snapshot_stride = 10;

    double resolved_delta() const { return delta > 0.0 ? delta : default_delta(N0); }
};

struct PicardResult {
    Trajectory trajectory;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    std::vector<double> diffs; // successive max-over-time sup-norm differences
    double initial_norm_value = 0.0;
};

namespace detail {

inline Trajectory nonlinearity_trajectory(const Trajectory& u_traj, double guard) {
    Trajectory f;
    for (std::size_t j = 0; j < u_traj.size(); ++j) {
        GridFunction nf = nonlinearity(u_traj.snapshots[j], guard);
        if (j == 0) f.append(0.0, std::move(nf));
        else f.append(u_traj.times[j], std::move(nf));
    }
    return f;
}

inline double trajectory_distance(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < std::min(a.size(), b.size()); ++j)
        worst = std::max(worst, sup_norm(a.snapshots[j] - b.snapshots[j]));
    return worst;
}

} // namespace detail

/// Picard iteration for x du/dt + p(D) u = N(u). Each sweep evaluates the
/// nonlinearity on every stored snapshot of the previous iterate and feeds
/// it to the linear solver as a forcing, linearly interpolated between
/// snapshots. Divergence (three consecutive growing differences) aborts.
inline PicardResult picard_solve(const GridFunction& u0, const PicardConfig& cfg) {
    if (cfg.tol <= 0.0 || cfg.max_iter < 1)
        throw std::invalid_argument("picard_solve: bad tolerance or iteration cap");
    GridFunction F = u0;
    F += 1.0;
    if (!(F.min_value() > cfg.guard))
        throw std::domain_error("picard_solve: min(1+u0) below guard");

    const double delta = cfg.resolved_delta();
    const DerivativeSchedule sched = schedule(cfg.N0, delta);
    PicardResult res;
    res.initial_norm_value =
        initial_norm(u0, static_cast<int>(sched.k()), delta, cfg.x_fit);
    if (res.initial_norm_value > cfg.smallness_threshold)
        throw std::invalid_argument("picard_solve: initial_norm " +
                                    std::to_string(res.initial_norm_value) +
                                    " above smallness threshold");

    LinearProblem prob;
    prob.P = p_polynomial();
    prob.grid = cfg.grid;
    prob.initial = u0;
    prob.t_end = cfg.t_end;
    prob.dt = cfg.dt;
    prob.theta = cfg.theta;
    prob.snapshot_stride = cfg.snapshot_stride;
    prob.rhs = zero_forcing(cfg.grid);

    Trajectory current = solve_linear(prob);
    std::optional<Trajectory> f_prev;
    int grow_streak = 0;

    for (int it = 1; it <= cfg.max_iter; ++it) {
        res.iterations = it;
        Trajectory f_new = detail::nonlinearity_trajectory(current, cfg.guard);
        if (f_prev && cfg.damping < 1.0) {
            for (std::size_t j = 0; j < f_new.size(); ++j) {
                f_new.snapshots[j] *= cfg.damping;
                GridFunction old = f_prev->snapshots[j];
                old *= (1.0 - cfg.damping);
                f_new.snapshots[j] += old;
            }
        }
        prob.rhs = forcing_from_trajectory(f_new);
        Trajectory next = solve_linear(prob);
        const double diff = detail::trajectory_distance(next, current);
        res.diffs.push_back(diff);
        f_prev = std::move(f_new);
        current = std::move(next);
        if (diff < cfg.tol) {
            res.converged = true;
            break;
        }
        if (res.diffs.size() >= 2 && diff > res.diffs[res.diffs.size() - 2]) {
            if (++grow_streak >= 3) {
                res.diverged = true;
                break;
            }
        } else {
            grow_streak = 0;
        }
    }

    current.compute_fits(cfg.N0, cfg.x_fit, FitOptions{delta});
    res.trajectory = std::move(current);
    return res;
}

/// A-priori estimate check: solution_norm against initial_norm.
struct AprioriReport {
    double lhs = 0.0; // |||u|||
    double rhs = 0.0; // |||u0|||_0
    double ratio = 1.0;
};

inline AprioriReport apriori_check(const Trajectory& traj, const GridFunction& u0,
                                   const DerivativeSchedule& sched, const WeightSet& A,
                                   double x_fit = 0.1) {
    AprioriReport rep;
    rep.lhs = solution_norm(traj, sched, A);
    rep.rhs = initial_norm(u0, static_cast<int>(sched.k()), sched.delta(), x_fit);
    rep.ratio = (rep.rhs > 0.0) ? rep.lhs / rep.rhs : (rep.lhs == 0.0 ? 1.0 :
                std::numeric_limits<double>::infinity());
    return rep;
}

/// Fitted log-log decay slopes of the expansion coefficients over a time
/// window, against the targets -i (and -N0 for the remainder).
struct DecaySlope {
    AdmissibleExponent exponent;
    double slope = 0.0;
    double target = 0.0;
    bool determinate = false;
};

struct DecayReport {
    double t0 = 0.0, t1 = 0.0;
    std::vector<DecaySlope> coefficients;
    double remainder_slope = 0.0;
    double remainder_target = 0.0;
    bool remainder_determinate = false;
};

namespace detail {

inline std::pair<double, bool> loglog_slope(const std::vector<double>& t,
                                            const std::vector<double>& v, double noise_floor) {
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < t.size(); ++j)
        if (std::abs(v[j]) > noise_floor) {
            lx.push_back(std::log(t[j]));
            ly.push_back(std::log(std::abs(v[j])));
        }
    if (lx.size() < 4) return {0.0, false};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t j = 0; j < lx.size(); ++j) {
        sx += lx[j]; sy += ly[j]; sxx += lx[j] * lx[j]; sxy += lx[j] * ly[j];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {0.0, false};
    return {(n * sxy - sx * sy) / denom, true};
}

} // namespace detail

inline DecayReport decay_report(const Trajectory& traj, int N0, double t0, double t1,
                                double noise_floor = 1e-12) {
    if (!(t1 >= 4.0 * t0) || !(t0 > 0.0))
        throw std::invalid_argument("decay_report: need t1 >= 4*t0 > 0");
    if (traj.fits.size() != traj.size())
        throw std::invalid_argument("decay_report: per-snapshot fits required");

    std::vector<double> times;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < traj.size(); ++j)
        if (traj.times[j] >= t0 && traj.times[j] <= t1) {
            times.push_back(traj.times[j]);
            idx.push_back(j);
        }

    DecayReport rep;
    rep.t0 = t0;
    rep.t1 = t1;
    for (const auto& e : lattice(N0).entries) {
        std::vector<double> series;
        for (std::size_t j : idx) series.push_back(traj.fits[j].coefficient_or_zero(e));
        auto [slope, ok] = detail::loglog_slope(times, series, noise_floor);
        rep.coefficients.push_back({e, slope, -e.value(), ok});
    }
    std::vector<double> rem;
    for (std::size_t j : idx) rem.push_back(traj.fits[j].remainder_norm);
    auto [rslope, rok] = detail::loglog_slope(times, rem, noise_floor);
    rep.remainder_slope = rslope;
    rep.remainder_target = -static_cast<double>(N0);
    rep.remainder_determinate = rok;
    return rep;
}

/// Discrete check of the coefficient estimates
///   int t^{2i+2m-1} |d^m u_i / dt^m|^2 dt  <~  |||u|||^2   (i != 0)
///   sup  t^{2i+2m}   |d^m u_i / dt^m|^2    <~  |||u|||^2
/// reported as lhs/rhs ratios per (i, m).
struct CoefficientBound {
    std::string kind; // "integral" or "sup"
    AdmissibleExponent exponent;
    int m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

inline std::vector<CoefficientBound> coefficient_diagnostics(const Trajectory& traj,
                                                             const DerivativeSchedule& sched,
                                                             const WeightSet& A) {
    const int N0 = sched.N0();
    const double norm_sq = [&] {
        const double v = solution_norm(traj, sched, A);
        return v * v;
    }();
    const double dt = traj.mesh_spacing();

    std::vector<CoefficientBound> out;
    for (int m = 0; m <= N0 - 1; ++m) {
        for (const auto& e : lattice(N0).entries) {
            std::vector<double> c(traj.size());
            for (std::size_t j = 0; j < traj.size(); ++j)
                c[j] = traj.fits[j].coefficient_or_zero(e);
            const std::vector<double> cm = series_derivative(c, dt, m);
            const double i_val = e.value();

            if (i_val < N0 - m && !(e == AdmissibleExponent{0, 0})) {
                const double lhs = time_integral(traj.times, [&](std::size_t j) {
                    const double t = traj.times[j];
                    const double w = (t <= 0.0) ? 0.0 : std::pow(t, 2.0 * i_val + 2.0 * m - 1.0);
                    return w * cm[j] * cm[j];
                });
                out.push_back({"integral", e, m, lhs, norm_sq,
                               norm_sq > 0.0 ? lhs / norm_sq : 0.0});
            }
            if (i_val < N0 - m - 0.5) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < traj.size(); ++j) {
                    const double w = detail::time_weight(traj.times[j], 2.0 * i_val + 2.0 * m);
                    lhs = std::max(lhs, w * cm[j] * cm[j]);
                }
                out.push_back({"sup", e, m, lhs, norm_sq, norm_sq > 0.0 ? lhs / norm_sq : 0.0});
            }
        }
    }
    return out;
}

/// Sup-norm control: sup_t t^{2m} (|dt^m D^l u|_inf^2 + |dt^m D^l (u-u0)|_inf^2)
/// against |||u|||^2, for l up to ell(1,m,1/2 +- delta)+1.
inline std::vector<CoefficientBound> c0_control_diagnostics(const Trajectory& traj,
                                                            const DerivativeSchedule& sched,
                                                            const WeightSet& A) {
    const int N0 = sched.N0();
    const double norm_sq = [&] {
        const double v = solution_norm(traj, sched, A);
        return v * v;
    }();
    const double dt = traj.mesh_spacing();
    std::vector<CoefficientBound> out;
    const ShiftedWeight half_plus{BetaNumber(Rational(1, 2)), +1};
    for (int m = 0; m <= N0 - 1; ++m) {
        const int ell_max = static_cast<int>(sched.ell(1, m, half_plus)) + 1;
        const auto dU = time_derivative(traj.snapshots, dt, m);
        std::vector<double> u0_series(traj.size());
        for (std::size_t j = 0; j < traj.size(); ++j)
            u0_series[j] = traj.fits[j].constant_term();
        const auto u0_m = series_derivative(u0_series, dt, m);
        for (int l = 0; l <= ell_max; l += std::max(1, ell_max / 3)) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < traj.size(); ++j) {
                GridFunction g = log_derivative(dU[j], l);
                GridFunction gm = g;
                if (l == 0) gm += -u0_m[j];
                const double w = detail::time_weight(traj.times[j], 2.0 * m);
                lhs = std::max(lhs, w * (sup_norm(g) * sup_norm(g) + sup_norm(gm) * sup_norm(gm)));
            }
            out.push_back({"c0:l=" + std::to_string(l), AdmissibleExponent{0, 0}, m, lhs, norm_sq,
                           norm_sq > 0.0 ? lhs / norm_sq : 0.0});
        }
    }
    return out;
}

} // namespace tfcl
