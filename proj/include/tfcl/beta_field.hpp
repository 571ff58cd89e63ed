#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "tfcl/rational.hpp"

namespace tfcl {

/// The irrational exponent generating the singular lattice: the positive
/// root of zeta^2 + zeta/2 - 3/4, i.e. (sqrt(13) - 1)/4.
inline double beta() {
    static const double b = (std::sqrt(13.0) - 1.0) / 4.0;
    return b;
}

/// Element of the quadratic field Q(beta): value a + b*beta with rational
/// a, b. Closed under +,-,* because beta^2 = 3/4 - beta/2. Comparisons are
/// exact, which is what makes set operations on the exponent lattice and
/// the weight bookkeeping reliable; conversion to double happens only at
/// the numerics boundary.
struct BetaNumber {
    Rational a{0};
    Rational b{0};

    BetaNumber() = default;
    BetaNumber(Rational a_, Rational b_ = Rational(0)) : a(a_), b(b_) {}
    BetaNumber(std::int64_t n) : a(Rational(n)), b(Rational(0)) {}

    static BetaNumber beta_unit() { return BetaNumber(Rational(0), Rational(1)); }

    double value() const { return a.value() + b.value() * beta(); }

    bool is_rational() const { return b.num == 0; }
    bool is_integer() const { return b.num == 0 && a.is_integer(); }
    bool is_half_integer() const { return b.num == 0 && (a * Rational(2)).is_integer(); }

    friend BetaNumber operator+(const BetaNumber& x, const BetaNumber& y) {
        return BetaNumber(x.a + y.a, x.b + y.b);
    }
    friend BetaNumber operator-(const BetaNumber& x, const BetaNumber& y) {
        return BetaNumber(x.a - y.a, x.b - y.b);
    }
    BetaNumber operator-() const { return BetaNumber(-a, -b); }

    // (a1 + b1 B)(a2 + b2 B) with B^2 = 3/4 - B/2
    friend BetaNumber operator*(const BetaNumber& x, const BetaNumber& y) {
        Rational aa = x.a * y.a + Rational(3, 4) * (x.b * y.b);
        Rational bb = x.a * y.b + x.b * y.a - Rational(1, 2) * (x.b * y.b);
        return BetaNumber(aa, bb);
    }

    friend bool operator==(const BetaNumber& x, const BetaNumber& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const BetaNumber& x, const BetaNumber& y) { return !(x == y); }

    /// Exact sign of a + b*beta. Reduces to the sign of q(t) = t^2 + t/2 - 3/4
    /// at the rational point t = -a/b, using that q < 0 exactly between the
    /// roots -beta - 1/2 and beta.
    int sign() const {
        if (b.num == 0) return a.sign();
        if (a.num == 0) return b.sign();
        // a + b*beta > 0  <=>  beta > -a/b (b>0)  or  beta < -a/b (b<0)
        const Rational t = -a / b;
        // position of rational t relative to beta:
        //   t < beta  iff  q(t) < 0, or (q(t) > 0 and t < 0)
        const Rational q = t * t + Rational(1, 2) * t - Rational(3, 4);
        bool t_below_beta;
        if (q.sign() < 0) t_below_beta = true;
        else if (q.sign() > 0) t_below_beta = (t.sign() < 0);
        else t_below_beta = false; // t == beta impossible for rational t, q==0 only at roots
        if (q.sign() == 0) throw std::logic_error("BetaNumber: rational point equals irrational root");
        const bool positive = (b.sign() > 0) ? t_below_beta : !t_below_beta;
        return positive ? 1 : -1;
    }

    friend bool operator<(const BetaNumber& x, const BetaNumber& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const BetaNumber& x, const BetaNumber& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const BetaNumber& x, const BetaNumber& y) { return y < x; }
    friend bool operator>=(const BetaNumber& x, const BetaNumber& y) { return y <= x; }

    /// Exact floor. For b != 0 the value is irrational, so the floor is the
    /// unique integer k with k < a + b*beta < k+1, found by exact comparison.
    std::int64_t floor() const {
        if (b.num == 0) return a.floor();
        std::int64_t k = static_cast<std::int64_t>(std::floor(value()));
        // correct against exact comparisons in case of double round-off
        while (BetaNumber(Rational(k)) > *this) --k;
        while (BetaNumber(Rational(k + 1)) < *this) ++k;
        return k;
    }

    std::string str() const {
        if (b.num == 0) return a.str();
        std::string s;
        if (a.num != 0) s += a.str() + (b.sign() > 0 ? "+" : "");
        if (b == Rational(1)) s += "b";
        else if (b == Rational(-1)) s += "-b";
        else s += b.str() + "b";
        return s;
    }
};

} // namespace tfcl
