#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

#include "tfcl/fd.hpp"
#include "tfcl/grid.hpp"
#include "tfcl/polynomial.hpp"

namespace tfcl {

/// Banded matrix in LAPACK general-band storage (column major, with kl
/// extra rows reserved for LU fill-in). Entry (i,j) lives at
/// ab[j*ldab + kl + ku + i - j] for j-ku <= i <= j+kl.
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(ldab_ * n, 0.0) {}

    std::size_t size() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }
    int ldab() const { return ldab_; }
    double* data() { return ab_.data(); }
    const double* data() const { return ab_.data(); }

    bool in_band(std::ptrdiff_t i, std::ptrdiff_t j) const {
        return i >= 0 && j >= 0 && i < static_cast<std::ptrdiff_t>(n_) &&
               j < static_cast<std::ptrdiff_t>(n_) && i - j <= kl_ && j - i <= ku_;
    }

    double& at(std::size_t i, std::size_t j) {
        return ab_[j * static_cast<std::size_t>(ldab_) +
                   static_cast<std::size_t>(kl_ + ku_ + static_cast<std::ptrdiff_t>(i) -
                                            static_cast<std::ptrdiff_t>(j))];
    }
    double get(std::size_t i, std::size_t j) const {
        if (!in_band(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j))) return 0.0;
        return ab_[j * static_cast<std::size_t>(ldab_) +
                   static_cast<std::size_t>(kl_ + ku_ + static_cast<std::ptrdiff_t>(i) -
                                            static_cast<std::ptrdiff_t>(j))];
    }

    void add(std::size_t i, std::size_t j, double v) {
        if (!in_band(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j)))
            throw std::out_of_range("BandedMatrix: entry outside band");
        at(i, j) += v;
    }

    std::vector<double> multiply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(j) - ku_);
            const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n_) - 1,
                                                               static_cast<std::ptrdiff_t>(j) + kl_);
            for (std::ptrdiff_t i = lo; i <= hi; ++i)
                y[static_cast<std::size_t>(i)] += get(static_cast<std::size_t>(i), j) * x[j];
        }
        return y;
    }

    GridFunction apply(const GridFunction& u) const {
        if (u.size() != n_) throw std::invalid_argument("BandedMatrix: size mismatch");
        GridFunction v = u;
        v.values = multiply(u.values);
        return v;
    }

    friend BandedMatrix product(const BandedMatrix& A, const BandedMatrix& B) {
        if (A.size() != B.size()) throw std::invalid_argument("BandedMatrix: size mismatch");
        BandedMatrix C(A.size(), A.kl_ + B.kl_, A.ku_ + B.ku_);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.size());
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const std::ptrdiff_t klo = std::max<std::ptrdiff_t>(0, i - A.kl_);
            const std::ptrdiff_t khi = std::min(n - 1, i + static_cast<std::ptrdiff_t>(A.ku_));
            for (std::ptrdiff_t k = klo; k <= khi; ++k) {
                const double a = A.get(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
                if (a == 0.0) continue;
                const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(0, k - B.kl_);
                const std::ptrdiff_t jhi = std::min(n - 1, k + static_cast<std::ptrdiff_t>(B.ku_));
                for (std::ptrdiff_t j = jlo; j <= jhi; ++j)
                    C.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
                        a * B.get(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
            }
        }
        return C;
    }

    friend BandedMatrix sum(const BandedMatrix& A, const BandedMatrix& B) {
        BandedMatrix C(A.size(), std::max(A.kl_, B.kl_), std::max(A.ku_, B.ku_));
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(A.size());
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - C.kl_);
            const std::ptrdiff_t hi = std::min(n - 1, i + static_cast<std::ptrdiff_t>(C.ku_));
            for (std::ptrdiff_t j = lo; j <= hi; ++j)
                C.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    A.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +
                    B.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        return C;
    }

    void scale(double c) {
        for (double& v : ab_) v *= c;
    }

private:
    std::size_t n_;
    int kl_, ku_, ldab_;
    std::vector<double> ab_;
};

/// LU factorization of a banded matrix (LAPACK dgbtrf), reusable across
/// solves. Throws on singular pivots with the pivot location.
class BandedLU {
public:
    explicit BandedLU(BandedMatrix A) : A_(std::move(A)), ipiv_(A_.size()) {
        const lapack_int n = static_cast<lapack_int>(A_.size());
        const lapack_int info =
            LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, A_.kl(), A_.ku(), A_.data(), A_.ldab(),
                           ipiv_.data());
        if (info != 0)
            throw std::runtime_error("BandedLU: singular factorization at pivot " +
                                     std::to_string(info));
    }

    void solve_in_place(std::vector<double>& rhs) const {
        const lapack_int n = static_cast<lapack_int>(A_.size());
        const lapack_int info =
            LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, A_.kl(), A_.ku(), 1, A_.data(), A_.ldab(),
                           ipiv_.data(), rhs.data(), n);
        if (info != 0) throw std::runtime_error("BandedLU: solve failed");
    }

private:
    BandedMatrix A_;
    std::vector<lapack_int> ipiv_;
};

/// First-derivative matrix for d/ds on the grid (fourth-order stencils,
/// skewed rows in the boundary bands).
inline BandedMatrix d1_matrix(const LogGrid& g) {
    const Stencil& st = stencil(1);
    const int reach = 4; // skewed edge rows span 5 points
    BandedMatrix D(g.count, reach, reach);
    const double h = g.spacing();
    for (std::size_t j = 0; j < g.count; ++j) {
        const StencilRow row = st.row(j, g.count);
        for (std::size_t i = 0; i < row.c.size(); ++i)
            D.at(j, j + static_cast<std::size_t>(row.first_offset + static_cast<int>(i))) +=
                row.c[i] / h;
    }
    return D;
}

inline BandedMatrix identity_matrix(const LogGrid& g, double c = 1.0) {
    BandedMatrix I(g.count, 0, 0);
    for (std::size_t j = 0; j < g.count; ++j) I.at(j, j) = c;
    return I;
}

inline BandedMatrix diagonal_matrix(const std::vector<double>& d) {
    BandedMatrix M(d.size(), 0, 0);
    for (std::size_t j = 0; j < d.size(); ++j) M.at(j, j) = d[j];
    return M;
}

/// Discretization of P(d/ds) by Horner composition of the first-derivative
/// matrix; matches poly_of_d on vectors up to rounding. Bandwidth grows as
/// (stencil reach) * deg P on each side.
inline BandedMatrix assemble(const Polynomial& P, const LogGrid& g) {
    const int d = P.degree();
    const std::size_t min_count = 2 * 4 * static_cast<std::size_t>(std::max(d, 1)) + 3;
    if (g.count < min_count) throw std::invalid_argument("assemble: grid too small for composed stencils");
    if (d == 0) return identity_matrix(g, P.coefficient(0).value());
    const BandedMatrix D1 = d1_matrix(g);
    BandedMatrix acc = identity_matrix(g, P.coefficient(d).value());
    for (int k = d - 1; k >= 0; --k) {
        acc = product(D1, acc);
        const double ck = P.coefficient(k).value();
        if (ck != 0.0)
            for (std::size_t j = 0; j < g.count; ++j) acc.at(j, j) += ck;
    }
    return acc;
}

} // namespace tfcl
