#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tfcl {

/// Uniform grid in the logarithmic variable s = ln x. The default window
/// [-12, 6] spans x in [6e-6, 403]: enough room below the fit window and a
/// far field for the truncation sponge.
struct LogGrid {
    double s_min = -12.0;
    double s_max = 6.0;
    std::size_t count = 1024;

    LogGrid() = default;
    LogGrid(double smin, double smax, std::size_t n) : s_min(smin), s_max(smax), count(n) {
        if (count < 16) throw std::invalid_argument("LogGrid: need at least 16 points");
        if (!(s_min < 0.0 && 0.0 < s_max)) throw std::invalid_argument("LogGrid: require s_min < 0 < s_max");
    }

    double spacing() const { return (s_max - s_min) / static_cast<double>(count - 1); }
    double s(std::size_t j) const { return s_min + spacing() * static_cast<double>(j); }
    double x(std::size_t j) const { return std::exp(s(j)); }

    friend bool operator==(const LogGrid& a, const LogGrid& b) {
        return a.s_min == b.s_min && a.s_max == b.s_max && a.count == b.count;
    }
    friend bool operator!=(const LogGrid& a, const LogGrid& b) { return !(a == b); }
};

/// Real values on a LogGrid. Plain value type; arithmetic requires
/// identical grids.
struct GridFunction {
    LogGrid grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const LogGrid& g, double fill = 0.0)
        : grid(g), values(g.count, fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t j) { return values[j]; }
    double operator[](std::size_t j) const { return values[j]; }

    template <typename F>
    static GridFunction sample(const LogGrid& g, F&& f) {
        GridFunction u(g);
        for (std::size_t j = 0; j < g.count; ++j) u.values[j] = f(g.x(j));
        return u;
    }

    template <typename F>
    static GridFunction sample_s(const LogGrid& g, F&& f) {
        GridFunction u(g);
        for (std::size_t j = 0; j < g.count; ++j) u.values[j] = f(g.s(j));
        return u;
    }

    void check_same_grid(const GridFunction& o) const {
        if (grid != o.grid) throw std::invalid_argument("GridFunction: grid mismatch");
    }

    GridFunction& operator+=(const GridFunction& o) {
        check_same_grid(o);
        for (std::size_t j = 0; j < values.size(); ++j) values[j] += o.values[j];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        check_same_grid(o);
        for (std::size_t j = 0; j < values.size(); ++j) values[j] -= o.values[j];
        return *this;
    }
    GridFunction& operator*=(double c) {
        for (double& v : values) v *= c;
        return *this;
    }
    GridFunction& operator+=(double c) {
        for (double& v : values) v += c;
        return *this;
    }

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
    friend GridFunction operator*(GridFunction a, double c) { return a *= c; }
    friend GridFunction operator+(GridFunction a, double c) { return a += c; }

    /// Pointwise product.
    friend GridFunction hadamard(GridFunction a, const GridFunction& b) {
        a.check_same_grid(b);
        for (std::size_t j = 0; j < a.values.size(); ++j) a.values[j] *= b.values[j];
        return a;
    }

    double min_value() const {
        double m = values[0];
        for (double v : values) m = std::min(m, v);
        return m;
    }
};

/// max_j |u_j|
inline double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

/// Smooth cutoff in x: identically 1 on (0, x_on], identically 0 on
/// [x_off, inf), C^inf transition in between (standard exp-based bump).
struct CutoffSpec {
    double x_on = 0.25;
    double x_off = 4.0;

    double operator()(double x) const {
        if (x <= x_on) return 1.0;
        if (x >= x_off) return 0.0;
        // smoothstep via phi(t) = e^{-1/t}; transition parametrized in ln x
        const double t = (std::log(x) - std::log(x_on)) / (std::log(x_off) - std::log(x_on));
        const double a = std::exp(-1.0 / t);
        const double b = std::exp(-1.0 / (1.0 - t));
        return b / (a + b);
    }
};

inline GridFunction cutoff_function(const LogGrid& g, const CutoffSpec& spec = {}) {
    return GridFunction::sample(g, [&](double x) { return spec(x); });
}

} // namespace tfcl
