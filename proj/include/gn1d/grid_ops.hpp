#pragma once

#include "gn1d/core_types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace gn1d {

/// Real n x n matrix whose nonzeros lie on the periodic band |i - j| <= p (mod n).
/// Row i stores the coefficients of columns (i + k) mod n for k in [-p, p].
template <typename Scalar>
class PeriodicBand {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    PeriodicBand() = default;
    PeriodicBand(int n, int half_band) : n_(n), p_(half_band), coef_(Coefficients::Zero(n, 2 * half_band + 1))
    {
        if (n <= 0 || half_band < 0)
            throw std::invalid_argument("PeriodicBand: bad dimensions");
    }

    static PeriodicBand diagonal(const Eigen::Ref<const Vector>& d)
    {
        PeriodicBand m(static_cast<int>(d.size()), 0);
        m.coef_.col(0) = d;
        return m;
    }

    int size() const { return n_; }
    int half_band() const { return p_; }

    Scalar& at(int row, int offset) { return coef_(row, offset + p_); }
    Scalar at(int row, int offset) const { return coef_(row, offset + p_); }

    /// Coefficient of A(i, j); offsets that alias onto the same column (small n) are summed.
    Scalar entry(int i, int j) const
    {
        Scalar s(0);
        for (int k = -p_; k <= p_; ++k)
            if (wrap(i + k) == j)
                s += at(i, k);
        return s;
    }

    Vector apply(const Eigen::Ref<const Vector>& x) const
    {
        assert(x.size() == n_);
        Vector y(n_);
        for (int i = 0; i < n_; ++i) {
            // mirrored offsets summed in pairs: an antisymmetric stencil is exactly zero on constants
            Scalar s = at(i, 0) * x[i];
            for (int k = 1; k <= p_; ++k)
                s += at(i, k) * x[wrap(i + k)] + at(i, -k) * x[wrap(i - k)];
            y[i] = s;
        }
        return y;
    }

    PeriodicBand transpose() const
    {
        PeriodicBand t(n_, p_);
        for (int i = 0; i < n_; ++i)
            for (int k = -p_; k <= p_; ++k)
                t.at(i, k) = at(wrap(i + k), -k);
        return t;
    }

    /// diag(d) * A
    PeriodicBand scale_rows(const Eigen::Ref<const Vector>& d) const
    {
        PeriodicBand r = *this;
        for (int i = 0; i < n_; ++i)
            r.coef_.row(i) *= d[i];
        return r;
    }

    PeriodicBand operator+(const PeriodicBand& other) const
    {
        if (other.n_ != n_)
            throw std::invalid_argument("PeriodicBand: size mismatch");
        const int p = std::max(p_, other.p_);
        PeriodicBand r(n_, p);
        for (int i = 0; i < n_; ++i) {
            for (int k = -p; k <= p; ++k) {
                Scalar a = std::abs(k) <= p_ ? at(i, k) : Scalar(0);
                Scalar b = std::abs(k) <= other.p_ ? other.at(i, k) : Scalar(0);
                r.at(i, k) = a + b;
            }
        }
        return r;
    }

    PeriodicBand operator-(const PeriodicBand& other) const { return *this + other * Scalar(-1); }

    PeriodicBand operator*(Scalar s) const
    {
        PeriodicBand r = *this;
        r.coef_ *= s;
        return r;
    }

    /// A^T diag(w) A. Entries (i, j) and (j, i) are accumulated from the same products
    /// in the same order, so the result is symmetric bit for bit.
    PeriodicBand gram(const Eigen::Ref<const Vector>& w) const
    {
        assert(w.size() == n_);
        const int q = 2 * p_;
        PeriodicBand g(n_, q);
        for (int i = 0; i < n_; ++i) {
            for (int k = -q; k <= q; ++k) {
                const int c1 = i;
                const int c2 = i + k;
                const int lo = std::max(c1, c2) - p_;
                const int hi = std::min(c1, c2) + p_;
                Scalar s(0);
                for (int m = lo; m <= hi; ++m) {
                    const int row = wrap(m);
                    s += w[row] * (at(row, c1 - m) * at(row, c2 - m));
                }
                g.at(i, k) = s;
            }
        }
        return g;
    }

    Dense dense() const
    {
        Dense a = Dense::Zero(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int k = -p_; k <= p_; ++k)
                a(i, wrap(i + k)) += at(i, k);
        return a;
    }

    /// Exact elementwise symmetry of the stored band.
    bool is_symmetric() const
    {
        for (int i = 0; i < n_; ++i)
            for (int k = -p_; k <= p_; ++k)
                if (at(i, k) != at(wrap(i + k), -k))
                    return false;
        return true;
    }

    int wrap(int j) const
    {
        j %= n_;
        return j < 0 ? j + n_ : j;
    }

private:
    using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    int n_ = 0;
    int p_ = 0;
    Coefficients coef_;
};

using BandedOperator = PeriodicBand<double>;

/// Fourth-order centered first derivative on the periodic grid. Exactly antisymmetric.
BandedOperator d1_fd(const Grid& grid);

/// Physical wavenumber of half-spectrum bin j (0 <= j <= n/2).
double wavenumber(int j, const Grid& grid);

/// Half spectrum (bins 0..n/2) of a real field, unnormalized.
Eigen::VectorXcd to_fourier(const Field& f);
Field from_fourier(const Eigen::VectorXcd& half_spectrum, int n);

/// Applies a real, even Fourier multiplier given on bins 0..n/2.
Field apply_multiplier(const Field& f, const Field& half_symbol);

/// Derivative of the trigonometric interpolant; the Nyquist mode is dropped.
Field d1_spectral(const Field& f, const Grid& grid);
Field d2_spectral(const Field& f, const Grid& grid);

/// Bessel potential (1 - d^2/dx^2)^{s/2}.
Field lambda_s(const Field& f, double s, const Grid& grid);
Field lambda_symbol(double s, const Grid& grid);

/// |f|_{H^s} through Parseval.
double sobolev_norm(const Field& f, double s, const Grid& grid);

/// Rectangle-rule inner product dx * sum f_i g_i.
double inner_product(const Field& f, const Field& g, const Grid& grid);
double l2_norm(const Field& f, const Grid& grid);

/// Zeroes every mode with |j| > n/3.
Field two_thirds_filter(const Field& f);

}  // namespace gn1d
