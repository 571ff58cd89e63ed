#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "tfcl/exponents.hpp"
#include "tfcl/polynomial.hpp"
#include "tfcl/weights.hpp"

using namespace tfcl;

namespace {

// independent double-precision enumeration of the lattice, for cross-checks
std::vector<double> brute_force_lattice(int N0) {
    std::vector<double> vals;
    const double b = (std::sqrt(13.0) - 1.0) / 4.0;
    for (int n1 = 0; n1 < N0; ++n1)
        for (int n2 = 0; n1 + b * n2 < N0; ++n2) vals.push_back(n1 + b * n2);
    std::sort(vals.begin(), vals.end());
    return vals;
}

// plain double polynomial arithmetic, independent of the Polynomial class
using DPoly = std::vector<double>; // ascending coefficients

DPoly dmul(const DPoly& a, const DPoly& b) {
    DPoly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}
DPoly dsub(DPoly a, const DPoly& b) {
    a.resize(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}
DPoly dadd(DPoly a, const DPoly& b) {
    a.resize(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}
DPoly from_roots_d(const std::vector<double>& roots) {
    DPoly p{1.0};
    for (double r : roots) p = dmul(p, DPoly{-r, 1.0});
    return p;
}

} // namespace

TEST_CASE("beta value and defining quadratic") {
    CHECK(beta() == Catch::Approx(0.65).margin(0.005));
    CHECK(std::abs(beta() * beta() + 0.5 * beta() - 0.75) < 1e-14);
    CHECK(2.0 * beta() == Catch::Approx(1.3028).margin(2e-4));
}

TEST_CASE("BetaNumber exact arithmetic and ordering") {
    const BetaNumber b = BetaNumber::beta_unit();
    CHECK((b * b + BetaNumber(Rational(1, 2)) * b - BetaNumber(Rational(3, 4))).sign() == 0);
    // 3b < 2 < 1 + b + b
    CHECK(BetaNumber(Rational(0), Rational(3)) < BetaNumber(2));
    CHECK(BetaNumber(2) < BetaNumber(Rational(1), Rational(2)) + b);
    CHECK(BetaNumber(Rational(1), Rational(2)).floor() == 2);   // 1+2b ~ 2.30
    CHECK(BetaNumber(Rational(0), Rational(3)).floor() == 1);   // 3b ~ 1.95
    CHECK((-BetaNumber(Rational(0), Rational(1))).floor() == -1);
}

TEST_CASE("p: roots, values, shift identity") {
    CHECK(p_eval(0.0, 0) == 0.0);
    CHECK(p_eval(beta(), 0) == 0.0);
    CHECK(p_eval(-1.5, 0) == 0.0);
    CHECK(p_eval(-beta() - 0.5, 0) == 0.0);
    CHECK(p_eval(1.0, 0) == Catch::Approx(15.0 / 8.0).epsilon(1e-14));
    CHECK(p_eval(2.0, 1) == Catch::Approx(p_eval(1.0, 0)).epsilon(1e-14));
    CHECK(p_eval(2.0, 0) == Catch::Approx(29.75).epsilon(1e-14));

    // factored form equals the expanded monomial form: p = z^4 + 2 z^3 - (9/8) z
    const Polynomial p = p_polynomial();
    CHECK(p.degree() == 4);
    CHECK(p.coefficient(4) == BetaNumber(1));
    CHECK(p.coefficient(3) == BetaNumber(2));
    CHECK(p.coefficient(2) == BetaNumber(0));
    CHECK(p.coefficient(1) == BetaNumber(Rational(-9, 8)));
    CHECK(p.coefficient(0) == BetaNumber(0));
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int t = 0; t < 1000; ++t) {
        const double z = dist(rng);
        CHECK(std::abs(p.eval(z) - p_eval(z, 0)) < 1e-12 * std::max(1.0, std::abs(p_eval(z, 0))));
    }
    for (const auto& r : p.known_roots()) CHECK(std::abs(p.eval(r.value())) < 1e-12);
}

TEST_CASE("lattice enumeration") {
    const auto l1 = lattice(1);
    REQUIRE(l1.entries.size() == 2);
    CHECK(l1.entries[0].value() == 0.0);
    CHECK(l1.entries[1].value() == Catch::Approx(beta()));

    const auto l2 = lattice(2);
    REQUIRE(l2.entries.size() == 6);
    const double expect2[] = {0.0, beta(), 1.0, 2 * beta(), 1 + beta(), 3 * beta()};
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(l2.entries[i].value() == Catch::Approx(expect2[i]).margin(1e-14));

    CHECK_THROWS_AS(lattice(0), std::invalid_argument);

    for (int N0 : {1, 2, 3, 4, 5, 8}) {
        const auto lat = lattice(N0);
        const auto brute = brute_force_lattice(N0);
        REQUIRE(lat.entries.size() == brute.size());
        for (std::size_t i = 0; i < brute.size(); ++i)
            CHECK(lat.entries[i].value() == Catch::Approx(brute[i]).margin(1e-12));
    }
}

TEST_CASE("lattice uniqueness: pairwise gaps exceed 1e-9 for N0 <= 8") {
    const auto lat = lattice(8);
    for (std::size_t i = 1; i < lat.entries.size(); ++i)
        CHECK(lat.entries[i].value() - lat.entries[i - 1].value() > 1e-9);
}

TEST_CASE("index families") {
    const auto f1 = index_sets(1);
    CHECK(f1.I.empty());
    CHECK(f1.J.empty());

    const auto f2 = index_sets(2);
    REQUIRE(f2.I.size() == 2);
    CHECK(f2.I[0].value() == Catch::Approx(2 * beta()));
    CHECK(f2.I[1].value() == Catch::Approx(3 * beta()));

    const auto f3 = index_sets(3);
    REQUIRE(f3.I.size() == 3);
    CHECK(f3.I[0].value() == Catch::Approx(1 + 2 * beta()));
    CHECK(f3.I[1].value() == Catch::Approx(4 * beta()));
    CHECK(f3.I[2].value() == Catch::Approx(1 + 3 * beta()));

    for (int n = 1; n <= 8; ++n) {
        // J_n = I_1 u ... u I_n, disjoint union
        const auto fam = index_sets(n);
        std::set<std::pair<long, long>> uni;
        std::size_t total = 0;
        for (int k = 1; k <= n; ++k) {
            for (const auto& e : index_set_I(k)) uni.insert({e.n1, e.n2});
            total += index_set_I(k).size();
        }
        CHECK(uni.size() == total); // pairwise disjoint
        REQUIRE(fam.J.size() == total);
        for (const auto& e : fam.J) CHECK(uni.count({e.n1, e.n2}) == 1);

        // I_{n-1} + 1 subset of I_n
        if (n >= 2) {
            const auto prev = index_set_I(n - 1);
            for (const auto& e : prev) {
                AdmissibleExponent shifted{e.n1 + 1, e.n2};
                bool found = false;
                for (const auto& f : fam.I) found = found || (f == shifted);
                CHECK(found);
            }
        }
    }
}

TEST_CASE("q polynomials") {
    CHECK(q_polynomial(1).is_zero());

    // q_2 = -2 z + 5 beta - 1
    const Polynomial q2 = q_polynomial(2);
    CHECK(q2.degree() == 1);
    CHECK(q2.coefficient(1) == BetaNumber(-2));
    CHECK(q2.coefficient(0) == BetaNumber(Rational(-1), Rational(5)));
    CHECK(static_cast<std::size_t>(q2.degree()) == index_set_I(2).size() - 1);

    // q_3: degree <= |I_3| - 1 = 2, coefficients vs an independent expansion
    const Polynomial q3 = q_polynomial(3);
    CHECK(q3.degree() <= 2);
    const double b = beta();
    const std::vector<double> I3 = {1 + 2 * b, 4 * b, 1 + 3 * b};
    std::vector<double> I3m1 = {2 * b, 4 * b - 1, 3 * b};
    DPoly qt3 = dsub(from_roots_d(I3), from_roots_d({I3[0] - 1, I3[1] - 1, I3[2] - 1}));
    DPoly q2d{5 * b - 1, -2.0};
    DPoly q3d = dadd(qt3, dmul(q2d, from_roots_d({4 * b - 1}))); // (I_3-1)\I_2 = {4b-1}
    for (int k = 0; k <= 2; ++k)
        CHECK(q3.coefficient(k).value() == Catch::Approx(q3d[k]).margin(1e-12));

    for (int n = 4; n <= 5; ++n)
        CHECK(static_cast<std::size_t>(q_polynomial(n).degree()) <= index_set_I(n).size() - 1);
}

TEST_CASE("cascade polynomials") {
    const auto c1 = cascade_polynomials(1);
    CHECK(c1.P_w == p_polynomial()); // J_1 empty: w^(1) = p(D) u
    CHECK(c1.P_v == p_polynomial());

    const auto c2 = cascade_polynomials(2);
    CHECK(c2.P_w.degree() == 10); // 8 + |J_2|

    for (int n = 1; n <= 4; ++n) {
        const auto c = cascade_polynomials(n);
        const Polynomial lhs = c.P_v * product_over(index_set_I(n));
        CHECK(lhs == c.P_w);
    }
}

TEST_CASE("coercivity set") {
    std::array<double, 4> roots{};
    const auto pr = p_roots();
    for (int i = 0; i < 4; ++i) roots[static_cast<std::size_t>(i)] = pr[static_cast<std::size_t>(i)].value();

    const auto cs = coercivity_set(roots);
    auto contains = [&](double x) {
        for (const auto& iv : cs)
            if (iv.contains(x)) return true;
        return false;
    };
    CHECK(contains(-0.999));
    CHECK(contains(-0.5));
    CHECK(contains(-0.001));

    const auto cs1 = coercivity_set(p_shifted(BetaNumber(1)));
    auto contains1 = [&](double x) {
        for (const auto& iv : cs1)
            if (iv.contains(x)) return true;
        return false;
    };
    CHECK(contains1(0.001));
    CHECK(contains1(0.5));
    CHECK(contains1(0.999));

    const auto deg = coercivity_set(std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
    double measure = 0.0;
    for (const auto& iv : deg)
        if (!iv.lo_unbounded && !iv.hi_unbounded) measure += iv.hi - iv.lo;
    CHECK(measure == 0.0);
}

TEST_CASE("weight set") {
    const auto A1 = weight_set(1);
    REQUIRE(A1.pairs.size() == 2);
    CHECK(A1.pairs[0].alpha.value() == 0.5);
    CHECK(A1.pairs[0].N == 1);
    CHECK(A1.pairs[1].alpha.value() == Catch::Approx(beta()));
    CHECK(A1.pairs[1].N == 1);

    for (int N0 : {1, 2, 3, 4}) {
        const auto A = weight_set(N0);
        for (int N = 1; N <= N0; ++N) {
            bool half_found = false;
            for (const auto& p : A.pairs)
                half_found = half_found || (p.N == N && p.alpha == BetaNumber(Rational(1, 2)));
            CHECK(half_found);
        }
        for (int N = 1; N <= N0 - 1; ++N) {
            bool one_found = false;
            for (const auto& p : A.pairs)
                one_found = one_found || (p.N == N && p.alpha == BetaNumber(1));
            CHECK(one_found);
        }
        // every alpha lies in [0,1]
        for (const auto& p : A.pairs) {
            CHECK(!(p.alpha < BetaNumber(0)));
            CHECK(!(BetaNumber(1) < p.alpha));
        }
    }
}
