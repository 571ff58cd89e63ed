#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "tfcl/beta_field.hpp"
#include "tfcl/exponents.hpp"

namespace tfcl {

/// Polynomial with coefficients in Q(beta), ascending order. Keeps the
/// roots it was built from (when known) so kernel modes can be asserted
/// exactly. Arithmetic is exact; eval() is the numerics boundary.
class Polynomial {
public:
    Polynomial() : coeff_{BetaNumber(0)} {}
    explicit Polynomial(std::vector<BetaNumber> coeff) : coeff_(std::move(coeff)) { trim(); }

    static Polynomial constant(const BetaNumber& c) { return Polynomial({c}); }
    static Polynomial zero() { return Polynomial(); }

    /// (zeta - r)
    static Polynomial linear_root(const BetaNumber& r) {
        Polynomial p({-r, BetaNumber(1)});
        p.roots_ = {r};
        return p;
    }

    static Polynomial from_roots(const std::vector<BetaNumber>& roots) {
        Polynomial p = constant(BetaNumber(1));
        for (const auto& r : roots) p = p * linear_root(r);
        p.roots_ = roots;
        return p;
    }

    int degree() const { return static_cast<int>(coeff_.size()) - 1; }
    const std::vector<BetaNumber>& coefficients() const { return coeff_; }
    const std::vector<BetaNumber>& known_roots() const { return roots_; }
    bool is_zero() const { return coeff_.size() == 1 && coeff_[0].a.num == 0 && coeff_[0].b.num == 0; }

    BetaNumber coefficient(int k) const {
        return (k >= 0 && k < static_cast<int>(coeff_.size())) ? coeff_[k] : BetaNumber(0);
    }

    double eval(double zeta) const {
        double acc = 0.0;
        for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it)
            acc = acc * zeta + it->value();
        return acc;
    }

    BetaNumber eval_exact(const BetaNumber& zeta) const {
        BetaNumber acc(0);
        for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it)
            acc = acc * zeta + *it;
        return acc;
    }

    /// P(zeta - shift), exact.
    Polynomial shifted(const BetaNumber& shift) const {
        Polynomial arg({-shift, BetaNumber(1)}); // zeta - shift
        Polynomial acc = constant(BetaNumber(0));
        for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it)
            acc = acc * arg + constant(*it);
        for (const auto& r : roots_) acc.roots_.push_back(r + shift);
        return acc;
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<BetaNumber> c(std::max(p.coeff_.size(), q.coeff_.size()), BetaNumber(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = p.coefficient(static_cast<int>(i)) + q.coefficient(static_cast<int>(i));
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
        std::vector<BetaNumber> c(std::max(p.coeff_.size(), q.coeff_.size()), BetaNumber(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = p.coefficient(static_cast<int>(i)) - q.coefficient(static_cast<int>(i));
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        std::vector<BetaNumber> c(p.coeff_.size() + q.coeff_.size() - 1, BetaNumber(0));
        for (std::size_t i = 0; i < p.coeff_.size(); ++i)
            for (std::size_t j = 0; j < q.coeff_.size(); ++j)
                c[i + j] = c[i + j] + p.coeff_[i] * q.coeff_[j];
        Polynomial r(std::move(c));
        r.roots_ = p.roots_;
        r.roots_.insert(r.roots_.end(), q.roots_.begin(), q.roots_.end());
        return r;
    }

    friend bool operator==(const Polynomial& p, const Polynomial& q) {
        return p.coeff_ == q.coeff_;
    }

    std::string str() const {
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            if (!s.empty()) s += " + ";
            s += "(" + coefficient(k).str() + ")";
            if (k >= 1) s += "z";
            if (k >= 2) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim() {
        while (coeff_.size() > 1 && coeff_.back().a.num == 0 && coeff_.back().b.num == 0)
            coeff_.pop_back();
        if (coeff_.empty()) coeff_.push_back(BetaNumber(0));
    }

    std::vector<BetaNumber> coeff_;
    std::vector<BetaNumber> roots_; // subset of roots known by construction
};

/// p(zeta) = zeta (zeta^2 + zeta/2 - 3/4)(zeta + 3/2)
///         = zeta (zeta - beta)(zeta + beta + 1/2)(zeta + 3/2).
inline const std::vector<BetaNumber>& p_roots() {
    static const std::vector<BetaNumber> r = {
        BetaNumber(0),
        BetaNumber::beta_unit(),
        BetaNumber(Rational(-1, 2), Rational(-1)),
        BetaNumber(Rational(-3, 2)),
    };
    return r;
}

/// p(zeta - shift), built from the translated roots.
inline Polynomial p_shifted(const BetaNumber& shift) {
    std::vector<BetaNumber> roots;
    for (const auto& r : p_roots()) roots.push_back(r + shift);
    return Polynomial::from_roots(roots);
}

inline Polynomial p_polynomial() { return p_shifted(BetaNumber(0)); }

/// p(zeta - shift) evaluated in the factored form.
inline double p_eval(double zeta, int shift = 0) {
    double acc = 1.0;
    for (const auto& r : p_roots()) acc *= (zeta - (r.value() + shift));
    return acc;
}

/// p~(zeta) = (zeta + beta + 1/2)(zeta - beta) = zeta^2 + zeta/2 - 3/4,
/// the quadratic factor entering the velocity decomposition.
inline Polynomial p_tilde() {
    return Polynomial::from_roots({BetaNumber::beta_unit(),
                                   BetaNumber(Rational(-1, 2), Rational(-1))});
}

/// prod_{i in S} (zeta - i)
inline Polynomial product_over(const std::vector<AdmissibleExponent>& S,
                               const BetaNumber& offset = BetaNumber(0)) {
    std::vector<BetaNumber> roots;
    for (const auto& e : S) roots.push_back(e.exact() + offset);
    return Polynomial::from_roots(roots);
}

/// q~_n(zeta) = prod_{i in I_n}(zeta - i) - prod_{i in I_n}(zeta - i + 1),
/// the commutator polynomial of prod(D - i) with multiplication by x.
inline Polynomial q_tilde_polynomial(int n) {
    auto I = index_set_I(n);
    return product_over(I) - product_over(I, BetaNumber(-1));
}

/// q_n by the cascade recursion: q_1 = 0, and
///   q_n = q~_n + q_{n-1} * prod_{i in (I_n - 1) \ I_{n-1}} (zeta - i).
inline Polynomial q_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("q_polynomial: n must be >= 1");
    if (n == 1) return Polynomial::zero();
    Polynomial q = q_tilde_polynomial(2);
    std::vector<AdmissibleExponent> I_prev = index_set_I(2);
    for (int k = 3; k <= n; ++k) {
        auto I_k = index_set_I(k);
        std::vector<AdmissibleExponent> shifted_minus_prev;
        for (const auto& e : I_k) {
            AdmissibleExponent s{e.n1 - 1, e.n2};
            bool in_prev = std::any_of(I_prev.begin(), I_prev.end(),
                                       [&](const AdmissibleExponent& p) { return p == s; });
            if (!in_prev) shifted_minus_prev.push_back(s);
        }
        q = q_tilde_polynomial(k) + q * product_over(shifted_minus_prev);
        I_prev = std::move(I_k);
    }
    return q;
}

/// Operator polynomials of the cascade: w^(n) = P_w(D) u, v^(n) = P_v(D) u,
/// r^(n) = P_r(D) f.
struct CascadePolynomials {
    Polynomial P_w;
    Polynomial P_v;
    Polynomial P_r;
};

inline CascadePolynomials cascade_polynomials(int n) {
    if (n < 1) throw std::invalid_argument("cascade_polynomials: n must be >= 1");
    Polynomial prod_p0 = Polynomial::constant(BetaNumber(1)); // prod_{n'=0}^{n-1} p(. - n')
    Polynomial prod_p1 = Polynomial::constant(BetaNumber(1)); // prod_{n'=1}^{n}   p(. - n')
    for (int k = 0; k <= n - 1; ++k) prod_p0 = prod_p0 * p_shifted(BetaNumber(k));
    for (int k = 1; k <= n; ++k) prod_p1 = prod_p1 * p_shifted(BetaNumber(k));
    auto J_n = index_sets(n).J;
    auto J_prev = (n >= 2) ? index_sets(n - 1).J : std::vector<AdmissibleExponent>{};
    CascadePolynomials c;
    c.P_w = prod_p0 * product_over(J_n);
    c.P_v = prod_p0 * product_over(J_prev);
    c.P_r = prod_p1 * product_over(J_n);
    return c;
}

/// Interval with open/closed flags per endpoint; +-inf encoded by the
/// unbounded flags.
struct Interval {
    double lo = 0.0, hi = 0.0;
    bool lo_unbounded = false, hi_unbounded = false;
    bool lo_closed = false, hi_closed = false;

    bool empty() const {
        if (lo_unbounded || hi_unbounded) return false;
        if (lo < hi) return false;
        return !(lo == hi && lo_closed && hi_closed);
    }
    bool contains(double x) const {
        if (!lo_unbounded && (x < lo || (x == lo && !lo_closed))) return false;
        if (!hi_unbounded && (x > hi || (x == hi && !hi_closed))) return false;
        return true;
    }
};

/// Sufficient coercivity weights for a fourth-order operator P(D) with real
/// zeros g1 <= .. <= g4: the gap regions (-inf,g1), (g2,g3), (g4,inf)
/// intersected with the variance ball (alpha - m)^2 <= sigma^2/3. The gap
/// set is typeset as an intersection in the source criterion, which is
/// empty as written; the union is what the worked examples require, so the
/// union is what we compute.
inline std::vector<Interval> coercivity_set(std::array<double, 4> roots) {
    std::sort(roots.begin(), roots.end());
    const double m = (roots[0] + roots[1] + roots[2] + roots[3]) / 4.0;
    double var = 0.0;
    for (double g : roots) var += (g - m) * (g - m);
    var /= 4.0;
    const double r = std::sqrt(var / 3.0);
    const double ball_lo = m - r, ball_hi = m + r;

    const Interval gaps[3] = {
        {0.0, roots[0], true, false, false, false},
        {roots[1], roots[2], false, false, false, false},
        {roots[3], 0.0, false, true, false, false},
    };
    std::vector<Interval> out;
    for (const Interval& g : gaps) {
        Interval cut;
        cut.lo = g.lo_unbounded ? ball_lo : std::max(g.lo, ball_lo);
        cut.lo_closed = g.lo_unbounded ? true : (cut.lo > g.lo);
        cut.hi = g.hi_unbounded ? ball_hi : std::min(g.hi, ball_hi);
        cut.hi_closed = g.hi_unbounded ? true : (cut.hi < g.hi);
        if (!cut.empty()) out.push_back(cut);
    }
    return out;
}

inline std::vector<Interval> coercivity_set(const Polynomial& P) {
    if (P.known_roots().size() != 4)
        throw std::invalid_argument("coercivity_set: need the four real roots");
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) r[i] = P.known_roots()[i].value();
    return coercivity_set(r);
}

} // namespace tfcl
