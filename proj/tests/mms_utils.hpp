#pragma once

// Manufactured-solution family u*(t,x) = e^{-t} x^a e^{-x}: closed under D
// (D maps x^{a+k} e^{-x} to (a+k) x^{a+k} e^{-x} - x^{a+k+1} e^{-x}), so the
// forcing f = x du*/dt + p(D) u* is available in closed form.

#include <cmath>
#include <vector>

#include "tfcl/grid.hpp"
#include "tfcl/linear_solver.hpp"
#include "tfcl/polynomial.hpp"

namespace tfcl_test {

struct MmsProblem {
    double a = 2.0;
    tfcl::LogGrid grid;

    // coefficients over k of sum_k c_k x^{a+k} e^{-x}
    std::vector<double> apply_d(const std::vector<double>& c) const {
        std::vector<double> out(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            out[k] += (a + static_cast<double>(k)) * c[k];
            out[k + 1] -= c[k];
        }
        return out;
    }

    std::vector<double> apply_poly(const tfcl::Polynomial& P, std::vector<double> c) const {
        std::vector<double> acc(c.size(), 0.0);
        const int d = P.degree();
        for (std::size_t k = 0; k < c.size(); ++k) acc[k] = P.coefficient(d).value() * c[k];
        for (int kk = d - 1; kk >= 0; --kk) {
            acc = apply_d(acc);
            const double ck = P.coefficient(kk).value();
            if (ck != 0.0) {
                if (acc.size() < c.size()) acc.resize(c.size(), 0.0);
                for (std::size_t k = 0; k < c.size(); ++k) acc[k] += ck * c[k];
            }
        }
        return acc;
    }

    tfcl::GridFunction sample_family(const std::vector<double>& c, double time_factor) const {
        return tfcl::GridFunction::sample(grid, [&](double x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k)
                acc += c[k] * std::pow(x, a + static_cast<double>(k));
            return time_factor * acc * std::exp(-x);
        });
    }

    tfcl::GridFunction exact(double t) const { return sample_family({1.0}, std::exp(-t)); }

    /// f = x du*/dt + p(D) u* = e^{-t} (-x^{a+1} + p(D)-image) e^{-x}
    tfcl::GridFunction forcing(double t) const {
        std::vector<double> c = apply_poly(tfcl::p_polynomial(), {1.0});
        if (c.size() < 2) c.resize(2, 0.0);
        c[1] -= 1.0; // x * d/dt e^{-t} x^a e^{-x} = -e^{-t} x^{a+1} e^{-x}
        return sample_family(c, std::exp(-t));
    }

    tfcl::Forcing forcing_fn() const {
        return [self = *this](double t) { return self.forcing(t); };
    }
};

} // namespace tfcl_test
