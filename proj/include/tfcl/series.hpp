#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tfcl/exponents.hpp"

namespace tfcl {

/// Truncated generalized power series sum_i c_i x^i with exponents on the
/// beta-lattice (kept exact as (n1,n2) pairs) and double coefficients.
/// Terms with exponent >= N0 are dropped on every operation, so products
/// and compositions stay finite.
class PowerSeries {
public:
    struct Term {
        AdmissibleExponent e;
        double c;
    };

    explicit PowerSeries(int trunc_order) : N0_(trunc_order) {
        if (trunc_order < 1) throw std::invalid_argument("PowerSeries: truncation order >= 1");
    }

    static PowerSeries constant(double c, int trunc_order) {
        PowerSeries s(trunc_order);
        s.add_term({0, 0}, c);
        return s;
    }

    int truncation_order() const { return N0_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double coefficient(const AdmissibleExponent& e) const {
        for (const auto& t : terms_)
            if (t.e == e) return t.c;
        return 0.0;
    }

    double constant_term() const { return coefficient({0, 0}); }

    /// Smallest exponent with nonzero coefficient; throws when empty.
    AdmissibleExponent min_exponent() const {
        if (terms_.empty()) throw std::logic_error("PowerSeries: empty");
        return terms_.front().e;
    }

    void add_term(const AdmissibleExponent& e, double c) {
        if (c == 0.0) return;
        if (!(e.exact() < BetaNumber(Rational(N0_)))) return; // truncated away
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const AdmissibleExponent& x) { return t.e < x; });
        if (it != terms_.end() && it->e == e) {
            it->c += c;
            if (it->c == 0.0) terms_.erase(it);
        } else {
            terms_.insert(it, Term{e, c});
        }
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries out = a;
        for (const auto& t : b.terms_) out.add_term(t.e, t.c);
        return out;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries out = a;
        for (const auto& t : b.terms_) out.add_term(t.e, -t.c);
        return out;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries out(std::min(a.N0_, b.N0_));
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) out.add_term(ta.e + tb.e, ta.c * tb.c);
        return out;
    }
    PowerSeries scaled(double c) const {
        PowerSeries out(N0_);
        for (const auto& t : terms_) out.add_term(t.e, c * t.c);
        return out;
    }
    /// Multiply by the monomial x^{e}.
    PowerSeries shifted(const AdmissibleExponent& e) const {
        PowerSeries out(N0_);
        for (const auto& t : terms_) out.add_term(t.e + e, t.c);
        return out;
    }
    /// Term-wise (D + c): x^i -> (i + c) x^i.
    PowerSeries d_plus(double c) const {
        PowerSeries out(N0_);
        for (const auto& t : terms_) out.add_term(t.e, (t.e.value() + c) * t.c);
        return out;
    }
    /// Term-wise division by (1 + i), the antiderivative factor.
    PowerSeries integrated_factors() const {
        PowerSeries out(N0_);
        for (const auto& t : terms_) out.add_term(t.e, t.c / (1.0 + t.e.value()));
        return out;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (const auto& t : terms_) acc += t.c * std::pow(x, t.e.value());
        return acc;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].e == b.terms_[i].e) || a.terms_[i].c != b.terms_[i].c) return false;
        return true;
    }

private:
    int N0_;
    std::vector<Term> terms_;
};

/// (1 + S)^r with real exponent r, for S with strictly positive exponents:
/// the binomial series sum_k C(r,k) S^k terminates under truncation.
inline PowerSeries binomial_power(const PowerSeries& S, double r) {
    if (!S.empty() && !(BetaNumber(0) < S.min_exponent().exact()))
        throw std::invalid_argument("binomial_power: series must have positive exponents");
    PowerSeries acc = PowerSeries::constant(1.0, S.truncation_order());
    PowerSeries power = PowerSeries::constant(1.0, S.truncation_order());
    double coeff = 1.0;
    for (int k = 1;; ++k) {
        power = power * S;
        if (power.empty()) break;
        coeff *= (r - (k - 1)) / k;
        acc = acc + power.scaled(coeff);
        if (coeff == 0.0) break;
    }
    return acc;
}

/// 1/F for a series with nonzero constant term.
inline PowerSeries reciprocal(const PowerSeries& F) {
    const double f0 = F.constant_term();
    if (f0 == 0.0) throw std::invalid_argument("reciprocal: zero constant term");
    PowerSeries rest = F - PowerSeries::constant(f0, F.truncation_order());
    return binomial_power(rest.scaled(1.0 / f0), -1.0).scaled(1.0 / f0);
}

/// A(x) evaluated at x = c * y * (1 + S(y)): generalized composition; the
/// result is a series in y. Requires positive exponents in S.
inline PowerSeries compose_scaled(const PowerSeries& A, double c, const PowerSeries& S) {
    PowerSeries out(A.truncation_order());
    for (const auto& t : A.terms()) {
        const double r = t.e.value();
        PowerSeries factor = binomial_power(S, r).scaled(t.c * std::pow(c, r));
        out = out + factor.shifted(t.e);
    }
    return out;
}

/// Inverts y = x * H(x) (H with nonzero constant) into x = y * G(y) by
/// fixed-point substitution G <- 1/(H o (y*G)); each sweep freezes the next
/// lattice exponent, so |lattice| + 2 sweeps are always enough.
inline PowerSeries invert_series(const PowerSeries& H) {
    const double h0 = H.constant_term();
    if (h0 == 0.0) throw std::invalid_argument("invert_series: zero leading coefficient");
    const int N0 = H.truncation_order();
    PowerSeries G = PowerSeries::constant(1.0 / h0, N0);
    const int sweeps = static_cast<int>(lattice(N0).entries.size()) + 2;
    for (int it = 0; it < sweeps; ++it) {
        // sigma(y): x = y*G = (1/g0-ish scaling) -- write G = g0 (1 + S)
        const double g0 = G.constant_term();
        PowerSeries S = (G - PowerSeries::constant(g0, N0)).scaled(1.0 / g0);
        PowerSeries H_of_x = compose_scaled(H, g0, S);
        PowerSeries G_next = reciprocal(H_of_x);
        if (G_next == G) break;
        G = G_next;
    }
    return G;
}

} // namespace tfcl
