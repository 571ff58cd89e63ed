#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tfcl/beta_field.hpp"

namespace tfcl {

/// A point n1 + beta*n2 of the singular expansion lattice.
struct AdmissibleExponent {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;

    BetaNumber exact() const { return BetaNumber(Rational(n1), Rational(n2)); }
    double value() const { return exact().value(); }

    friend bool operator==(const AdmissibleExponent& x, const AdmissibleExponent& y) {
        return x.n1 == y.n1 && x.n2 == y.n2;
    }
    friend bool operator<(const AdmissibleExponent& x, const AdmissibleExponent& y) {
        return x.exact() < y.exact();
    }

    friend AdmissibleExponent operator+(const AdmissibleExponent& x, const AdmissibleExponent& y) {
        return {x.n1 + y.n1, x.n2 + y.n2};
    }
};

/// All lattice points n1 + beta*n2 < N0, sorted ascending.
struct ExponentLattice {
    int N0 = 0;
    std::vector<AdmissibleExponent> entries;

    bool contains(const BetaNumber& v) const {
        return std::any_of(entries.begin(), entries.end(),
                           [&](const AdmissibleExponent& e) { return e.exact() == v; });
    }
};

inline ExponentLattice lattice(int N0) {
    if (N0 < 1) throw std::invalid_argument("lattice: N0 must be >= 1");
    ExponentLattice lat;
    lat.N0 = N0;
    const BetaNumber bound{Rational(N0)};
    for (std::int64_t n1 = 0; n1 < N0; ++n1) {
        for (std::int64_t n2 = 0;; ++n2) {
            AdmissibleExponent e{n1, n2};
            if (!(e.exact() < bound)) break;
            lat.entries.push_back(e);
        }
    }
    std::sort(lat.entries.begin(), lat.entries.end());
    for (std::size_t i = 1; i < lat.entries.size(); ++i)
        if (lat.entries[i] == lat.entries[i - 1])
            throw std::logic_error("lattice: duplicate entry");
    return lat;
}

/// Index families of the derived-equation cascade:
///   I_n: lattice points strictly between n-1 and n, excluding n-1+beta;
///   J_n: union of I_1..I_n (equivalently (0,n) minus integers and
///        integer+beta points).
struct IndexFamily {
    int n = 0;
    std::vector<AdmissibleExponent> I; ///< I_n
    std::vector<AdmissibleExponent> J; ///< J_n
};

inline std::vector<AdmissibleExponent> index_set_I(int n) {
    if (n < 1) throw std::invalid_argument("index_set_I: n must be >= 1");
    std::vector<AdmissibleExponent> out;
    const BetaNumber lo{Rational(n - 1)}, hi{Rational(n)};
    // n2 >= 2 suffices (n2 = 0 gives integers, n2 = 1 gives the excluded
    // n-1+beta), but we enumerate from 0 and filter to stay literal.
    for (std::int64_t n2 = 0; BetaNumber(Rational(0), Rational(n2)) < hi; ++n2) {
        for (std::int64_t n1 = 0; n1 <= n; ++n1) {
            AdmissibleExponent e{n1, n2};
            if (!(lo < e.exact() && e.exact() < hi)) continue;
            if (e.exact() == BetaNumber(Rational(n - 1), Rational(1))) continue;
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline IndexFamily index_sets(int n) {
    if (n < 1) throw std::invalid_argument("index_sets: n must be >= 1");
    IndexFamily fam;
    fam.n = n;
    fam.I = index_set_I(n);
    for (int k = 1; k <= n; ++k) {
        auto Ik = index_set_I(k);
        fam.J.insert(fam.J.end(), Ik.begin(), Ik.end());
    }
    std::sort(fam.J.begin(), fam.J.end());
    return fam;
}

} // namespace tfcl
