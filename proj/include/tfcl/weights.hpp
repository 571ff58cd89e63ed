#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcl/beta_field.hpp"
#include "tfcl/exponents.hpp"

namespace tfcl {

/// Which generation rule produced a weight pair. Class (a) weights control
/// expansion coefficients; class (b) weights absorb the time-weight remnant
/// terms (spatial weight shifted by -1/2).
enum class WeightRule {
    A_expansion,      // alpha in (I_{N0} - N0 + 1) u {beta}, N = 2..N0
    A_expansion_N1,   // same alpha set, intersected with (1/2,1), N = 1
    A_zero,           // (0, N), N = 2..N0
    A_one,            // (1, N), N = 1..N0-1
    B_shifted,        // alpha in ((I_{N0} - N0 + 1/2) u {beta-1/2}) n (0,1/2), N = 2..N0
    B_shifted_N1,     // alpha in (I_{N0} - N0 + 3/2) n (1/2,1), N = 1..N0-1
    B_half,           // (1/2, N), N = 1..N0
};

inline const char* weight_rule_name(WeightRule r) {
    switch (r) {
        case WeightRule::A_expansion: return "a:expansion";
        case WeightRule::A_expansion_N1: return "a:expansion-N1";
        case WeightRule::A_zero: return "a:zero";
        case WeightRule::A_one: return "a:one";
        case WeightRule::B_shifted: return "b:shifted";
        case WeightRule::B_shifted_N1: return "b:shifted-N1";
        case WeightRule::B_half: return "b:half";
    }
    return "?";
}

struct WeightPair {
    BetaNumber alpha;
    int N = 0;
    WeightRule rule{};

    friend bool operator==(const WeightPair& x, const WeightPair& y) {
        return x.alpha == y.alpha && x.N == y.N;
    }
    friend bool operator<(const WeightPair& x, const WeightPair& y) {
        if (x.N != y.N) return x.N < y.N;
        return x.alpha < y.alpha;
    }
};

/// The weight set A of spatial weights used by the parabolic norms.
struct WeightSet {
    int N0 = 0;
    std::vector<WeightPair> pairs; // sorted by (N, alpha)
};

inline WeightSet weight_set(int N0) {
    if (N0 < 1) throw std::invalid_argument("weight_set: N0 must be >= 1");
    const BetaNumber half(Rational(1, 2));
    const BetaNumber one(1), zero(0);

    // alpha candidates of class (a): (I_{N0} - N0 + 1) u {beta}
    std::vector<BetaNumber> base_a;
    for (const auto& e : index_set_I(N0))
        base_a.push_back(e.exact() - BetaNumber(N0 - 1));
    base_a.push_back(BetaNumber::beta_unit());
    std::sort(base_a.begin(), base_a.end());
    base_a.erase(std::unique(base_a.begin(), base_a.end()), base_a.end());

    std::vector<WeightPair> pairs;
    for (const auto& a : base_a)
        for (int N = 2; N <= N0; ++N)
            pairs.push_back({a, N, WeightRule::A_expansion});
    for (const auto& a : base_a)
        if (half < a && a < one)
            pairs.push_back({a, 1, WeightRule::A_expansion_N1});
    for (int N = 2; N <= N0; ++N) pairs.push_back({zero, N, WeightRule::A_zero});
    for (int N = 1; N <= N0 - 1; ++N) pairs.push_back({one, N, WeightRule::A_one});

    // class (b): absorption weights
    std::vector<BetaNumber> base_b1;
    for (const auto& e : index_set_I(N0))
        base_b1.push_back(e.exact() - BetaNumber(N0) + half);
    base_b1.push_back(BetaNumber::beta_unit() - half);
    std::sort(base_b1.begin(), base_b1.end());
    base_b1.erase(std::unique(base_b1.begin(), base_b1.end()), base_b1.end());
    for (const auto& a : base_b1)
        if (zero < a && a < half)
            for (int N = 2; N <= N0; ++N)
                pairs.push_back({a, N, WeightRule::B_shifted});

    for (const auto& e : index_set_I(N0)) {
        BetaNumber a = e.exact() - BetaNumber(N0) + BetaNumber(Rational(3, 2));
        if (half < a && a < one)
            for (int N = 1; N <= N0 - 1; ++N)
                pairs.push_back({a, N, WeightRule::B_shifted_N1});
    }
    for (int N = 1; N <= N0; ++N) pairs.push_back({half, N, WeightRule::B_half});

    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i] == pairs[i - 1])
            throw std::logic_error("weight_set: a pair was generated by two rules");

    return WeightSet{N0, std::move(pairs)};
}

/// A shifted weight alpha' = alpha + sign*delta, kept symbolic so that
/// branch decisions (which side of 1/2, collision with half-integers) are
/// exact. delta itself only matters numerically.
struct ShiftedWeight {
    BetaNumber alpha;
    int sign = +1; // alpha' = alpha + sign*delta

    double value(double delta) const { return alpha.value() + sign * delta; }

    std::string str() const {
        return alpha.str() + (sign > 0 ? "+d" : "-d");
    }

    /// alpha' in (0, 1/2): exact for small delta since alpha is never
    /// within delta of 0 or 1/2 by the validation rule.
    bool in_lower_half() const {
        const BetaNumber half(Rational(1, 2));
        if (alpha == BetaNumber(0)) return sign > 0;
        if (alpha == half) return sign < 0;
        return BetaNumber(0) < alpha && alpha < half;
    }
    bool in_upper_half() const {
        const BetaNumber half(Rational(1, 2)), one(1);
        if (alpha == half) return sign > 0;
        if (alpha == one) return sign < 0;
        return half < alpha && alpha < one;
    }
    bool in_unit_interval() const { return in_lower_half() || in_upper_half(); }

    /// alpha' - 1/2 and alpha' + 1/2 as shifted weights (same delta side).
    ShiftedWeight down_half() const { return {alpha - BetaNumber(Rational(1, 2)), sign}; }
    ShiftedWeight up_half() const { return {alpha + BetaNumber(Rational(1, 2)), sign}; }
};

} // namespace tfcl
