#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mms_utils.hpp"
#include "tfcl/linear_solver.hpp"
#include "tfcl/norms.hpp"
#include "tfcl/random_fields.hpp"

using namespace tfcl;
using tfcl_test::MmsProblem;

namespace {
const LogGrid g;
}

TEST_CASE("assemble: first derivative, kernel mode, composition") {
    const BandedMatrix L1 = assemble(Polynomial::linear_root(BetaNumber(0)), g);
    const BandedMatrix D1 = d1_matrix(g);
    std::mt19937_64 rng(1);
    const GridFunction u = random_bump_field(g, rng, -8.0, 3.0);
    CHECK(sup_norm(L1.apply(u) - D1.apply(u)) < 1e-12 * std::max(1.0, sup_norm(D1.apply(u))));
    CHECK(sup_norm(L1.apply(u) - d_apply(u, 1)) < 1e-10 * std::max(1.0, sup_norm(d_apply(u, 1))));

    // kernel mode: L x^beta ~ 0 in the interior
    const BandedMatrix Lp = assemble(p_polynomial(), g);
    const GridFunction ub = GridFunction::sample(g, [](double x) { return std::pow(x, beta()); });
    const GridFunction r = Lp.apply(ub);
    for (std::size_t j = 16; j + 17 < g.count; ++j)
        CHECK(std::abs(r.values[j]) < 1e-6 * ub.values[j]);

    // composition: assemble(P1*P2) ~ assemble(P1)*assemble(P2) in the interior
    const Polynomial P1 = Polynomial::from_roots({BetaNumber(0), BetaNumber(1)});
    const Polynomial P2 = Polynomial::from_roots({BetaNumber::beta_unit()});
    const BandedMatrix A12 = assemble(P1 * P2, g);
    const BandedMatrix Ac = product(assemble(P1, g), assemble(P2, g));
    const GridFunction v1 = A12.apply(u), v2 = Ac.apply(u);
    double scale = 0.0, err = 0.0;
    for (std::size_t j = 16; j + 17 < g.count; ++j) {
        scale = std::max(scale, std::abs(v1.values[j]));
        err = std::max(err, std::abs(v1.values[j] - v2.values[j]));
    }
    CHECK(err < 1e-6 * scale);
}

TEST_CASE("step: zero data, stationary fixed point") {
    MmsProblem mms{2.0, g};
    LinearProblem prob;
    prob.grid = g;
    prob.initial = GridFunction(g, 0.0);
    prob.rhs = zero_forcing(g);
    prob.dt = 1e-2;
    prob.theta = 1.0;
    ThetaStepper st(prob);
    const GridFunction z(g, 0.0);
    CHECK(sup_norm(st.step(z, z, z)) == 0.0);

    // stationary input: f = L u constant in time keeps u fixed
    const GridFunction u0 = mms.exact(0.0);
    LinearProblem prob2 = prob;
    prob2.initial = u0;
    ThetaStepper st2(prob2);
    GridFunction f = st2.operator_matrix().apply(u0);
    const GridFunction u1 = st2.step(u0, f, f);
    CHECK(sup_norm(u1 - u0) < 1e-11 * std::max(1.0, sup_norm(u0)));
}

TEST_CASE("solve_linear: zero data and kernel-mode freezing") {
    LinearProblem prob;
    prob.grid = g;
    prob.initial = GridFunction(g, 0.0);
    prob.rhs = zero_forcing(g);
    prob.t_end = 0.1;
    prob.dt = 1e-3;
    const Trajectory traj = solve_linear(prob);
    for (const auto& snap : traj.snapshots) CHECK(sup_norm(snap) == 0.0);

    // x^beta cutoff: the x^beta content stays intact at the contact line
    // (the equation only fills in the constant mode on the x ~ t scale),
    // and the run is Cauchy under dt refinement
    const CutoffSpec cut{0.25, 4.0};
    LinearProblem kp;
    kp.grid = g;
    kp.initial = GridFunction::sample(g, [&](double x) { return std::pow(x, beta()) * cut(x); });
    kp.rhs = zero_forcing(g);
    kp.t_end = 0.1;
    kp.snapshot_stride = 1000000;
    std::vector<GridFunction> ends;
    for (double dt : {1e-3, 5e-4, 2.5e-4}) {
        kp.dt = dt;
        ends.push_back(solve_linear(kp).snapshots.back());
    }
    const double d1 = sup_norm(ends[1] - ends[0]);
    const double d2 = sup_norm(ends[2] - ends[1]);
    CHECK(d2 < 0.7 * d1); // first-order Cauchy decay

    std::size_t j5 = 0, j4 = 0;
    while (g.x(j5) < 1e-5) ++j5;
    while (g.x(j4) < 1e-4) ++j4;
    const double u_beta_t = (ends[2].values[j4] - ends[2].values[j5]) /
                            (std::pow(g.x(j4), beta()) - std::pow(g.x(j5), beta()));
    CHECK(u_beta_t > 0.8);
    CHECK(u_beta_t < 1.3);

    // deep region follows the two-mode expansion u0(t) + u_beta(t) x^beta
    const ExpansionFit fit = extract_expansion(ends[2], 1, 0.01);
    for (std::size_t j = 0; j < g.count && g.x(j) <= 1e-3; ++j) {
        const double model =
            fit.constant_term() + fit.coefficient_or_zero({0, 1}) * std::pow(g.x(j), beta());
        CHECK(std::abs(ends[2].values[j] - model) < 1e-3);
    }
}

TEST_CASE("solve_linear: MMS convergence at theta = 1/2") {
    MmsProblem mms{2.0, g};
    double err[3];
    const double dts[3] = {0.04, 0.02, 0.01};
    for (int k = 0; k < 3; ++k) {
        LinearProblem prob;
        prob.grid = g;
        prob.initial = mms.exact(0.0);
        prob.rhs = mms.forcing_fn();
        prob.t_end = 1.0;
        prob.dt = dts[k];
        prob.theta = 0.5;
        prob.snapshot_stride = 1000000; // keep only t=0 and t_end
        const Trajectory traj = solve_linear(prob);
        err[k] = sup_norm(traj.snapshots.back() - mms.exact(1.0));
    }
    const double order1 = std::log2(err[0] / err[1]);
    const double order2 = std::log2(err[1] / err[2]);
    INFO("errors " << err[0] << " " << err[1] << " " << err[2]);
    CHECK(order1 > 1.8);
    CHECK(order2 > 1.8);
}

TEST_CASE("solution operator is linear") {
    MmsProblem mms{2.0, g};
    std::mt19937_64 rng(9);
    const GridFunction u0 = random_bump_field(g, rng, -8.0, 3.0);
    const GridFunction v0 = random_bump_field(g, rng, -8.0, 3.0);
    auto solve = [&](const GridFunction& init, Forcing f) {
        LinearProblem prob;
        prob.grid = g;
        prob.initial = init;
        prob.rhs = std::move(f);
        prob.t_end = 0.05;
        prob.dt = 5e-3;
        return solve_linear(prob);
    };
    const double a = 2.0, b = -0.7;
    Forcing fa = mms.forcing_fn();
    Forcing fb = zero_forcing(g);
    Forcing fc = [&, a, b](double t) {
        GridFunction h = mms.forcing(t);
        h *= a;
        return h;
    };
    GridFunction init_c = u0;
    init_c *= a;
    {
        GridFunction tmp = v0;
        tmp *= b;
        init_c += tmp;
    }
    const Trajectory Sa = solve(u0, fa), Sb = solve(v0, fb), Sc = solve(init_c, fc);
    for (std::size_t k = 0; k < Sc.size(); ++k) {
        GridFunction want = Sa.snapshots[k];
        want *= a;
        GridFunction tmp = Sb.snapshots[k];
        tmp *= b;
        want += tmp;
        CHECK(sup_norm(Sc.snapshots[k] - want) < 1e-10 * std::max(1.0, sup_norm(want)));
    }
}

TEST_CASE("backward Euler: weighted energy non-increasing on random data") {
    LinearProblem prob;
    prob.grid = g;
    prob.initial = GridFunction(g, 0.0);
    prob.rhs = zero_forcing(g);
    prob.dt = 1e-2;
    prob.theta = 1.0;
    ThetaStepper st(prob);
    const GridFunction z(g, 0.0);
    std::mt19937_64 rng(13);
    const double alpha = -0.5; // in the coercivity range of p
    for (int trial = 0; trial < 100; ++trial) {
        GridFunction u = random_bump_field(g, rng, -8.0, 3.0);
        double e_prev = weighted_l2(u, alpha - 0.5);
        for (int k = 0; k < 5; ++k) {
            u = st.step(u, z, z);
            const double e = weighted_l2(u, alpha - 0.5);
            CHECK(e <= e_prev * (1.0 + 1e-10));
            e_prev = e;
        }
    }
}

TEST_CASE("coercivity_check") {
    const auto r1 = coercivity_check(p_polynomial(), -0.5, 40, g, 101);
    CHECK(r1.positive);
    CHECK(r1.min_ratio > 0.0);

    const auto r2 = coercivity_check(p_polynomial(), -0.85, 40, g, 102);
    CHECK(r2.positive);

    for (double alpha : {0.45, 0.55}) {
        const auto r = coercivity_check(p_shifted(BetaNumber(1)), alpha, 40, g, 103);
        CHECK(r.positive);
    }

    // stability under refinement
    const LogGrid g2(-12.0, 6.0, 2048);
    const auto r1f = coercivity_check(p_polynomial(), -0.5, 40, g2, 101);
    CHECK(std::abs(r1f.min_ratio - r1.min_ratio) < 0.2 * std::abs(r1.min_ratio));

    // alpha = 1/2 is outside the coercivity range of p: report only
    const auto out = coercivity_check(p_polynomial(), 0.5, 10, g, 104);
    CHECK(out.trials == 10);
}

TEST_CASE("maxreg_diagnostic") {
    MmsProblem mms{2.0, g};

    // zero data
    LinearProblem zp;
    zp.grid = g;
    zp.initial = GridFunction(g, 0.0);
    zp.rhs = zero_forcing(g);
    zp.t_end = 0.1;
    zp.dt = 1e-2;
    zp.snapshot_stride = 2;
    const Trajectory zt = solve_linear(zp);
    const auto dz = maxreg_diagnostic(zt, zp.rhs, 2, -0.5, 0.0);
    CHECK(dz.lhs == 0.0);
    CHECK(dz.rhs == 0.0);

    // MMS run: lhs <= C rhs with C stable under dt refinement
    auto run = [&](double dt) {
        LinearProblem prob;
        prob.grid = g;
        prob.initial = mms.exact(0.0);
        prob.rhs = mms.forcing_fn();
        prob.t_end = 1.0;
        prob.dt = dt;
        prob.snapshot_stride = static_cast<std::size_t>(std::lround(0.05 / dt));
        return solve_linear(prob);
    };
    const Trajectory t1 = run(5e-3), t2 = run(2.5e-3);
    const auto d1 = maxreg_diagnostic(t1, mms.forcing_fn(), 2, -0.5, 0.5);
    const auto d2 = maxreg_diagnostic(t2, mms.forcing_fn(), 2, -0.5, 0.5);
    CHECK(d1.rhs > 0.0);
    CHECK(d1.ratio < 50.0);
    CHECK(std::abs(d2.ratio - d1.ratio) < 0.2 * d1.ratio);

    // sigma = 0 retains the initial-data term: with f = 0 the rhs reduces to it
    LinearProblem kp;
    kp.grid = g;
    const CutoffSpec cut{0.25, 4.0};
    kp.initial = GridFunction::sample(g, [&](double x) { return std::pow(x, beta()) * cut(x); });
    kp.rhs = zero_forcing(g);
    kp.t_end = 0.05;
    kp.dt = 5e-3;
    kp.snapshot_stride = 2;
    const Trajectory kt = solve_linear(kp);
    const auto dk = maxreg_diagnostic(kt, kp.rhs, 2, -0.5, 0.0);
    CHECK(dk.rhs == Catch::Approx(sobolev_sq(kp.initial, 4, -1.0)).epsilon(1e-12));
}

TEST_CASE("cascade_verify on a smooth MMS run") {
    MmsProblem mms{2.0, g};
    auto run = [&](double dt, std::size_t stride) {
        LinearProblem prob;
        prob.grid = g;
        prob.initial = mms.exact(0.0);
        prob.rhs = mms.forcing_fn();
        prob.t_end = 1.0;
        prob.dt = dt;
        prob.theta = 1.0;
        prob.snapshot_stride = stride;
        return solve_linear(prob);
    };
    const Trajectory t1 = run(2.5e-3, 4); // snapshot mesh 0.01
    const double r10 = cascade_verify(t1, mms.forcing_fn(), 1, 0);
    const double r20 = cascade_verify(t1, mms.forcing_fn(), 2, 0);
    const double r11 = cascade_verify(t1, mms.forcing_fn(), 1, 1);
    INFO("residuals " << r10 << " " << r20 << " " << r11);
    CHECK(r10 < 1e-3);
    CHECK(r20 < 1e-3);
    CHECK(r11 < 1e-3);

    const Trajectory t2 = run(1.25e-3, 4); // snapshot mesh 0.005
    CHECK(cascade_verify(t2, mms.forcing_fn(), 1, 0) < r10);
    CHECK(cascade_verify(t2, mms.forcing_fn(), 2, 0) < r20);

    // forcing in the kernel of P_r: r^(2) vanishes, residual is the
    // commutator mismatch only and stays small
    const CutoffSpec cut{0.25, 4.0};
    const GridFunction fker = GridFunction::sample(g, [&](double x) { return x * cut(x); });
    const auto cp = cascade_polynomials(2);
    const GridFunction rker = poly_of_d(fker, cp.P_r);
    for (std::size_t j = 16; j < g.count && g.x(j) <= 0.2; ++j)
        CHECK(std::abs(rker.values[j]) < 1e-5 * g.x(j));
    LinearProblem prob;
    prob.grid = g;
    prob.initial = GridFunction(g, 0.0);
    prob.rhs = [fker](double) { return fker; };
    prob.t_end = 0.5;
    prob.dt = 2.5e-3;
    prob.snapshot_stride = 4;
    const Trajectory tk = solve_linear(prob);
    CHECK(cascade_verify(tk, prob.rhs, 2, 0) < 0.1);
}

TEST_CASE("hardy_bench") {
    CHECK_THROWS_AS(hardy_bench(0.3, 0.3, 5, g), std::invalid_argument);

    // admissible single mode: finite ratio
    const double c1 = hardy_bench(0.1, 0.7, 50, g, 7);
    CHECK(c1 > 0.0);
    CHECK(std::isfinite(c1));

    // empirical constant stable under refinement (+-20%)
    const LogGrid g2(-12.0, 6.0, 2048);
    const double c2 = hardy_bench(0.1, 0.7, 50, g2, 7);
    CHECK(std::abs(c2 - c1) < 0.2 * c1);

    // property: |w|_{1,rho} <= C(gamma,rho) |(D-gamma)w|_rho over random
    // (gamma, rho) pairs with gamma < rho
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        double gamma = dist(rng), rho = dist(rng);
        if (gamma > rho) std::swap(gamma, rho);
        if (rho - gamma < 0.05) rho += 0.1;
        const GridFunction w = random_bump_field(g, rng, -8.0, 3.0);
        GridFunction dw = d_apply(w, 1);
        GridFunction gw = w;
        gw *= gamma;
        dw -= gw;
        const double den = weighted_l2(dw, rho);
        if (den == 0.0) continue;
        const double ratio = sobolev(w, 1, rho) / den;
        // C(gamma,rho) <= sqrt(1 + (1+|gamma|)^2) / min(1, rho - gamma) is a
        // crude admissible envelope; assert finiteness and a generous bound
        CHECK(ratio < 100.0 / std::min(1.0, rho - gamma));
    }

    // anisotropic variant on a smooth trajectory: both sides finite, ratio
    // bounded
    MmsProblem mms{2.0, g};
    LinearProblem prob;
    prob.grid = g;
    prob.initial = mms.exact(0.0);
    prob.rhs = mms.forcing_fn();
    prob.t_end = 1.0;
    prob.dt = 5e-3;
    prob.snapshot_stride = 20;
    const Trajectory traj = solve_linear(prob);
    for (int sign : {-1, +1}) {
        const auto [lhs, rhs] = anisotropic_bench(traj, 1, 0.75, 0.05, sign);
        CHECK(lhs > 0.0);
        CHECK(rhs > 0.0);
        CHECK(lhs < 20.0 * rhs);
    }
}
