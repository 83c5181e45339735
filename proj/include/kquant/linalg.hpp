#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kquant/errors.hpp"

namespace kquant {

/// Dense square matrix of complex entries with Hermitian-structure helpers.
/// Row-major; sized at construction. Real must be double or long double.
template <class Real = double>
class SquareMatrix {
public:
    using C = std::complex<Real>;

    explicit SquareMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    int size() const { return n_; }
    C& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const C& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    bool is_hermitian(Real tol) const {
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                    return false;
        return true;
    }

    /// Determinant and inverse via Gauss-Jordan with partial pivoting.
    C determinant() const {
        SquareMatrix tmp(*this);
        return tmp.reduce(nullptr);
    }

    SquareMatrix inverse() const {
        SquareMatrix tmp(*this);
        SquareMatrix inv = identity(n_);
        tmp.reduce(&inv);
        return inv;
    }

    static SquareMatrix identity(int n) {
        SquareMatrix m(n);
        for (int i = 0; i < n; ++i)
            m(i, i) = C(1);
        return m;
    }

    /// Positive definiteness through a Cholesky attempt (Hermitian input assumed).
    bool is_positive_definite() const {
        SquareMatrix L(n_);
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j <= i; ++j) {
                C s = (*this)(i, j);
                for (int k = 0; k < j; ++k)
                    s -= L(i, k) * std::conj(L(j, k));
                if (i == j) {
                    if (!(s.real() > Real(0)))
                        return false;
                    L(i, i) = std::sqrt(s.real());
                } else {
                    L(i, j) = s / L(j, j);
                }
            }
        }
        return true;
    }

private:
    C reduce(SquareMatrix* aug) {
        C det(1);
        for (int c = 0; c < n_; ++c) {
            int p = c;
            for (int r = c + 1; r < n_; ++r)
                if (std::abs((*this)(r, c)) > std::abs((*this)(p, c)))
                    p = r;
            if (std::abs((*this)(p, c)) == Real(0))
                throw domain_error("SquareMatrix: singular matrix");
            if (p != c) {
                for (int k = 0; k < n_; ++k) {
                    std::swap((*this)(p, k), (*this)(c, k));
                    if (aug)
                        std::swap((*aug)(p, k), (*aug)(c, k));
                }
                det = -det;
            }
            const C piv = (*this)(c, c);
            det *= piv;
            for (int k = 0; k < n_; ++k) {
                (*this)(c, k) /= piv;
                if (aug)
                    (*aug)(c, k) /= piv;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == c)
                    continue;
                const C f = (*this)(r, c);
                if (f == C(0))
                    continue;
                for (int k = 0; k < n_; ++k) {
                    (*this)(r, k) -= f * (*this)(c, k);
                    if (aug)
                        (*aug)(r, k) -= f * (*aug)(c, k);
                }
            }
        }
        return det;
    }

    int n_;
    std::vector<C> a_;
};

using HermitianMatrix = SquareMatrix<double>;

/// Least-squares solve min ||A x - y||_2 by Householder QR.
/// Returns the coefficient vector; residual_out (optional) receives the
/// 2-norm of the residual, cond_out a crude R-diagonal condition estimate.
inline std::vector<double> least_squares(std::vector<std::vector<double>> A, std::vector<double> y,
                                         double* residual_out = nullptr, double* cond_out = nullptr) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    if (m < n || n == 0)
        throw domain_error("least_squares: need at least as many rows as unknowns");
    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = k; i < m; ++i)
            norm += A[i][k] * A[i][k];
        norm = std::sqrt(norm);
        if (norm == 0.0)
            throw domain_error("least_squares: rank-deficient design matrix");
        if (A[k][k] > 0.0)
            norm = -norm;
        std::vector<double> v(m, 0.0);
        v[k] = A[k][k] - norm;
        for (int i = k + 1; i < m; ++i)
            v[i] = A[i][k];
        double vtv = 0.0;
        for (int i = k; i < m; ++i)
            vtv += v[i] * v[i];
        if (vtv == 0.0)
            continue;
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < m; ++i)
                dot += v[i] * A[i][j];
            const double f = 2.0 * dot / vtv;
            for (int i = k; i < m; ++i)
                A[i][j] -= f * v[i];
        }
        double dot = 0.0;
        for (int i = k; i < m; ++i)
            dot += v[i] * y[i];
        const double f = 2.0 * dot / vtv;
        for (int i = k; i < m; ++i)
            y[i] -= f * v[i];
    }
    std::vector<double> x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j)
            s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    if (residual_out) {
        double r2 = 0.0;
        for (int i = n; i < m; ++i)
            r2 += y[i] * y[i];
        *residual_out = std::sqrt(r2);
    }
    if (cond_out) {
        double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            dmax = std::max(dmax, std::fabs(A[i][i]));
            dmin = std::min(dmin, std::fabs(A[i][i]));
        }
        *cond_out = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    }
    return x;
}

} // namespace kquant
