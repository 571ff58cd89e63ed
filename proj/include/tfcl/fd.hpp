#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tfcl/grid.hpp"
#include "tfcl/polynomial.hpp"

namespace tfcl {

/// Fourth-order finite-difference stencils for d^order/ds^order on a
/// uniform grid, as offset/coefficient rows. Interior rows are centered;
/// the first and last `band` rows are one-sided. Row sums are forced to
/// exactly zero so constants are annihilated bit-exactly.
struct StencilRow {
    int first_offset = 0;            // offset of the first coefficient
    std::vector<double> c;           // coefficients, to be divided by h^order
};

namespace detail {

inline void zero_row_sum(std::vector<double>& c, std::size_t pivot) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != pivot) s += c[i];
    c[pivot] = -s;
}

/// FD weights of the `order`-th derivative at offset 0 over the given
/// integer offsets: the Vandermonde system sum_i w_i o_i^k = k! d_{k,order}
/// solved exactly in rational arithmetic (stencils are tiny).
inline std::vector<double> fd_weights(const std::vector<int>& offsets, int order) {
    const std::size_t n = offsets.size();
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational p(1);
            for (std::size_t e = 0; e < k; ++e) p = p * Rational(offsets[i]);
            A[k][i] = p;
        }
        if (k == static_cast<std::size_t>(order)) {
            Rational fact(1);
            for (std::size_t e = 2; e <= k; ++e) fact = fact * Rational(static_cast<std::int64_t>(e));
            A[k][n] = fact;
        }
    }
    // Gaussian elimination with partial (nonzero) pivoting
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].num == 0) ++piv;
        if (piv == n) throw std::logic_error("fd_weights: singular Vandermonde system");
        std::swap(A[col], A[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].num == 0) continue;
            const Rational f = A[r][col] / A[col][col];
            for (std::size_t c = col; c <= n; ++c) A[r][c] = A[r][c] - f * A[col][c];
        }
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (A[i][n] / A[i][i]).value();
    return w;
}

} // namespace detail

/// Stencil table for D^order, fourth-order accurate. Width: 5 points for
/// orders 1-2, 7 points for orders 3-4.
class Stencil {
public:
    explicit Stencil(int order) : order_(order) {
        if (order < 1 || order > 4) throw std::invalid_argument("Stencil: order must be 1..4");
        half_ = (order <= 2) ? 2 : 3;          // centered half-width
        const int npts_sided = order + 4;      // one-sided points for 4th order
        {
            std::vector<int> offs;
            for (int o = -half_; o <= half_; ++o) offs.push_back(o);
            centered_.first_offset = -half_;
            centered_.c = detail::fd_weights(offs, order);
            detail::zero_row_sum(centered_.c, static_cast<std::size_t>(half_));
        }
        // skewed rows for boundary positions 0..half-1 (left edge)
        for (int pos = 0; pos < half_; ++pos) {
            std::vector<int> offs;
            for (int o = -pos; o < npts_sided - pos; ++o) offs.push_back(o);
            StencilRow row;
            row.first_offset = -pos;
            row.c = detail::fd_weights(offs, order);
            detail::zero_row_sum(row.c, static_cast<std::size_t>(pos));
            left_.push_back(row);
        }
    }

    int order() const { return order_; }
    int half_width() const { return half_; }
    const StencilRow& centered() const { return centered_; }
    const std::vector<StencilRow>& left_rows() const { return left_; }

    /// Row for grid position j of n total points; right-edge rows are the
    /// left rows mirrored with sign (-1)^order.
    StencilRow row(std::size_t j, std::size_t n) const {
        if (j >= n) throw std::out_of_range("Stencil::row");
        if (j >= static_cast<std::size_t>(half_) && j + half_ < n) return centered_;
        if (j < static_cast<std::size_t>(half_)) return left_[j];
        const StencilRow& l = left_[n - 1 - j];
        StencilRow r;
        r.c.resize(l.c.size());
        const double sgn = (order_ % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < l.c.size(); ++i)
            r.c[l.c.size() - 1 - i] = sgn * l.c[i];
        r.first_offset = -(l.first_offset + static_cast<int>(l.c.size()) - 1);
        return r;
    }

private:
    int order_;
    int half_ = 2;
    StencilRow centered_;
    std::vector<StencilRow> left_;
};

inline const Stencil& stencil(int order) {
    static const std::array<Stencil, 4> table{Stencil(1), Stencil(2), Stencil(3), Stencil(4)};
    return table.at(static_cast<std::size_t>(order - 1));
}

/// D^order u, D = x d/dx = d/ds, via the fourth-order stencils; orders
/// above 4 by composition.
inline GridFunction d_apply(const GridFunction& u, int order = 1) {
    if (order < 1) throw std::invalid_argument("d_apply: order must be >= 1");
    if (order > 4) {
        GridFunction v = d_apply(u, 4);
        return d_apply(v, order - 4);
    }
    const Stencil& st = stencil(order);
    const std::size_t n = u.size();
    if (n < 2 * static_cast<std::size_t>(st.half_width()) + 3)
        throw std::invalid_argument("d_apply: grid too small for the stencil");
    const double h = u.grid.spacing();
    double hk = 1.0;
    for (int i = 0; i < order; ++i) hk *= h;

    GridFunction out(u.grid);
    for (std::size_t j = 0; j < n; ++j) {
        const StencilRow row = st.row(j, n);
        // summing c_i (u_i - u_j) keeps constants annihilated bit-exactly
        const double uc = u.values[j];
        double acc = 0.0;
        for (std::size_t i = 0; i < row.c.size(); ++i)
            acc += row.c[i] *
                   (u.values[j + static_cast<std::size_t>(row.first_offset + static_cast<int>(i))] - uc);
        out.values[j] = acc / hk;
    }
    return out;
}

namespace detail {

/// Weights extracting the order-th derivative at window node `center` from
/// a degree-d Chebyshev least-squares fit over 2W+1 uniform nodes. Scaled
/// to the window coordinate t in [-1,1]; divide by (half-width in s)^order
/// at apply time. Composed narrow stencils amplify sample roundoff like
/// (c/h)^order, which drowns the signal beyond order ~6; a wide fit window
/// keeps the amplification bounded by the window width instead.
inline std::vector<double> windowed_derivative_weights(int order, int degree, int W, int center) {
    const int n = 2 * W + 1;
    if (degree + 2 > n) throw std::invalid_argument("windowed weights: window too small");
    Eigen::MatrixXd V(n, degree + 1);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i - W) / W;
        double t0 = 1.0, t1 = t;
        for (int k = 0; k <= degree; ++k) {
            double Tk = (k == 0) ? 1.0 : (k == 1 ? t : 2.0 * t * t1 - t0);
            if (k >= 2) { t0 = t1; t1 = Tk; }
            V(i, k) = Tk;
        }
    }
    // monomial coefficients of T_k, then the derivative functional at t_c
    std::vector<std::vector<double>> T(degree + 1);
    T[0] = {1.0};
    if (degree >= 1) T[1] = {0.0, 1.0};
    for (int k = 2; k <= degree; ++k) {
        T[k].assign(k + 1, 0.0);
        for (std::size_t j = 0; j < T[k - 1].size(); ++j) T[k][j + 1] += 2.0 * T[k - 1][j];
        for (std::size_t j = 0; j < T[k - 2].size(); ++j) T[k][j] -= T[k - 2][j];
    }
    const double tc = static_cast<double>(center - W) / W;
    Eigen::VectorXd r(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        double acc = 0.0;
        for (int m = order; m <= k; ++m) {
            double fall = 1.0;
            for (int e = 0; e < order; ++e) fall *= (m - e);
            acc += T[k][static_cast<std::size_t>(m)] * fall * std::pow(tc, m - order);
        }
        r(k) = acc;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, degree + 1);
    const Eigen::MatrixXd R =
        qr.matrixQR().topRows(degree + 1).triangularView<Eigen::Upper>();
    const Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(r);
    const Eigen::VectorXd w = Q * z;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = w(i);
    return out;
}

inline const std::vector<double>& cached_windowed_weights(int order, int degree, int W,
                                                          int center) {
    static std::map<std::uint64_t, std::vector<double>> cache;
    static std::mutex mtx;
    const std::uint64_t key = (static_cast<std::uint64_t>(order) << 48) ^
                              (static_cast<std::uint64_t>(degree) << 36) ^
                              (static_cast<std::uint64_t>(W) << 18) ^
                              static_cast<std::uint64_t>(center);
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, windowed_derivative_weights(order, degree, W, center)).first;
    return it->second;
}

/// Order-th derivative by windowed least-squares fit. The window has fixed
/// physical half-width 0.15*order in s (so the noise amplification does not
/// grow under grid refinement), degree order+4.
inline GridFunction d_apply_windowed(const GridFunction& u, int order) {
    const double h = u.grid.spacing();
    const int degree = order + 4;
    int W = static_cast<int>(std::lround(0.15 * order / h));
    W = std::max(W, (degree + 4) / 2 + 1);
    if (2 * W + 1 > static_cast<int>(u.size()))
        throw std::invalid_argument("log_derivative: grid too small for window");
    const double Lh = W * h;
    double scale = 1.0;
    for (int e = 0; e < order; ++e) scale /= Lh;

    GridFunction out(u.grid);
    const int n = static_cast<int>(u.size());
    for (int j = 0; j < n; ++j) {
        const int lo = std::max(0, std::min(j - W, n - (2 * W + 1)));
        const int center = j - lo;
        const auto& w = cached_windowed_weights(order, degree, W, center);
        double acc = 0.0;
        for (int i = 0; i < 2 * W + 1; ++i) acc += w[static_cast<std::size_t>(i)] * u.values[static_cast<std::size_t>(lo + i)];
        out.values[static_cast<std::size_t>(j)] = acc * scale;
    }
    return out;
}

} // namespace detail

/// D^order u with the scheme appropriate to the order: tight fourth-order
/// stencils for orders 1-2 (roundoff amplification eps/h^2 stays below
/// 1e-9 on any admissible grid), windowed least-squares differentiation
/// beyond, where narrow stencils turn noise-dominated.
inline GridFunction log_derivative(const GridFunction& u, int order) {
    if (order == 0) return u;
    if (order <= 2) return d_apply(u, order);
    return detail::d_apply_windowed(u, order);
}

/// P(D) u. Low-degree polynomials go through Horner composition of
/// first-order D applications, so algebraically equal low-order operator
/// expressions agree to rounding (the slot-sum identity depends on this).
/// High-degree operators (the cascade polynomials) are evaluated as
/// monomial sums over stable per-order derivatives instead.
inline GridFunction poly_of_d(const GridFunction& u, const Polynomial& P);

/// Horner-composition path, valid for any degree but noise-amplifying for
/// high ones.
inline GridFunction poly_of_d_horner(const GridFunction& u, const Polynomial& P) {
    const auto& c = P.coefficients();
    const int d = P.degree();
    GridFunction acc(u.grid, 0.0);
    if (d == 0) {
        acc = u;
        acc *= c[0].value();
        return acc;
    }
    // acc = c_d * u, then acc = D acc + c_{d-1} u, ...
    acc = u;
    acc *= c[static_cast<std::size_t>(d)].value();
    for (int k = d - 1; k >= 0; --k) {
        acc = d_apply(acc, 1);
        const double ck = c[static_cast<std::size_t>(k)].value();
        if (ck != 0.0) {
            GridFunction t = u;
            t *= ck;
            acc += t;
        }
    }
    return acc;
}

inline GridFunction poly_of_d(const GridFunction& u, const Polynomial& P) {
    if (P.degree() <= 4) return poly_of_d_horner(u, P);
    GridFunction acc = u;
    acc *= P.coefficient(0).value();
    for (int k = 1; k <= P.degree(); ++k) {
        const double ck = P.coefficient(k).value();
        if (ck == 0.0) continue;
        GridFunction t = log_derivative(u, k);
        t *= ck;
        acc += t;
    }
    return acc;
}

/// (D + c) u — single first-order factor, used by the multilinear chains.
inline GridFunction d_plus(const GridFunction& u, double c) {
    GridFunction v = d_apply(u, 1);
    if (c != 0.0) {
        GridFunction t = u;
        t *= c;
        v += t;
    }
    return v;
}

/// x * u, i.e. multiplication by e^s.
inline GridFunction x_multiply(const GridFunction& u) {
    GridFunction v = u;
    for (std::size_t j = 0; j < v.size(); ++j) v.values[j] *= v.grid.x(j);
    return v;
}

} // namespace tfcl
