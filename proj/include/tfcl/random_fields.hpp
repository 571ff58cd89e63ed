#pragma once

#include <cmath>
#include <random>

#include "tfcl/grid.hpp"

namespace tfcl {

/// Random smooth field: a handful of Gaussian bumps in s, confined to a
/// window well inside the grid so the function is compactly supported for
/// all practical purposes. Used by the coercivity/Hardy benches and the
/// property tests.
inline GridFunction random_bump_field(const LogGrid& g, std::mt19937_64& rng,
                                      double s_lo, double s_hi, int n_bumps = 5) {
    std::uniform_real_distribution<double> center(s_lo + 1.0, s_hi - 1.0);
    std::uniform_real_distribution<double> width(0.4, 1.2);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    GridFunction u(g, 0.0);
    for (int b = 0; b < n_bumps; ++b) {
        const double c = center(rng), w = width(rng), a = amp(rng);
        for (std::size_t j = 0; j < g.count; ++j) {
            const double z = (g.s(j) - c) / w;
            u.values[j] += a * std::exp(-0.5 * z * z);
        }
    }
    // taper hard to zero outside [s_lo, s_hi]
    for (std::size_t j = 0; j < g.count; ++j) {
        const double s = g.s(j);
        double taper = 1.0;
        if (s < s_lo || s > s_hi) taper = 0.0;
        else {
            const double dl = (s - s_lo), dr = (s_hi - s);
            const double m = std::min(dl, dr);
            taper = (m >= 1.0) ? 1.0 : std::exp(1.0 - 1.0 / std::max(m, 1e-12));
            if (m < 1e-12) taper = 0.0;
        }
        u.values[j] *= taper;
    }
    return u;
}

} // namespace tfcl
