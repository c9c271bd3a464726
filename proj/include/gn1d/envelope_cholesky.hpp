#pragma once

#include "gn1d/grid_ops.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

namespace gn1d {

/// Cholesky factorization A = L L^T of a symmetric positive-definite periodic band
/// matrix, without pivoting.
///
/// The wrap-around corners of a periodic band make the last p rows of L fill in
/// completely while every other row keeps its band profile. L is therefore stored
/// row by row over its envelope [first(i), i], which holds all of the fill, and the
/// cost stays O(n p^2).
template <typename Scalar>
class EnvelopeCholesky {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    /// Returns std::nullopt when a nonpositive (or non-finite) pivot shows that A is
    /// not positive definite; `failed_row` then receives the offending row.
    static std::optional<EnvelopeCholesky> factorize(const PeriodicBand<Scalar>& a, int* failed_row = nullptr)
    {
        EnvelopeCholesky f;
        const int n = a.size();
        const int p = a.half_band();
        f.n_ = n;
        f.first_.resize(n);
        f.start_.resize(n + 1);
        for (int i = 0; i < n; ++i) {
            f.first_[i] = (i >= n - p) ? 0 : std::max(0, i - p);
            f.start_[i + 1] = f.start_[i] + (i - f.first_[i] + 1);
        }
        f.values_.assign(f.start_[n], Scalar(0));

        // scatter the lower triangle of A into the envelope
        for (int i = 0; i < n; ++i) {
            for (int k = -p; k <= p; ++k) {
                const int j = a.wrap(i + k);
                if (j <= i)
                    f.ref(i, j) += a.at(i, k);
            }
        }

        for (int i = 0; i < n; ++i) {
            const int fi = f.first_[i];
            for (int j = fi; j <= i; ++j) {
                const int fj = f.first_[j];
                Scalar s = f.ref(i, j);
                for (int k = std::max(fi, fj); k < j; ++k)
                    s -= f.ref(i, k) * f.ref(j, k);
                if (j < i) {
                    f.ref(i, j) = s / f.ref(j, j);
                } else {
                    if (!(s > Scalar(0)) || !std::isfinite(static_cast<double>(s))) {
                        if (failed_row)
                            *failed_row = i;
                        return std::nullopt;
                    }
                    f.ref(i, i) = std::sqrt(s);
                }
            }
        }
        return f;
    }

    int size() const { return n_; }

    Vector solve(const Eigen::Ref<const Vector>& b) const
    {
        Vector y = b;
        // L y = b
        for (int i = 0; i < n_; ++i) {
            Scalar s = y[i];
            for (int k = first_[i]; k < i; ++k)
                s -= ref(i, k) * y[k];
            y[i] = s / ref(i, i);
        }
        // L^T x = y, column sweep over the rows of L
        for (int i = n_ - 1; i >= 0; --i) {
            y[i] /= ref(i, i);
            const Scalar xi = y[i];
            for (int k = first_[i]; k < i; ++k)
                y[k] -= ref(i, k) * xi;
        }
        return y;
    }

    Scalar diagonal(int i) const { return ref(i, i); }

    /// log det A = 2 sum log L_ii
    Scalar log_determinant() const
    {
        Scalar s(0);
        for (int i = 0; i < n_; ++i)
            s += std::log(ref(i, i));
        return 2 * s;
    }

private:
    Scalar& ref(int i, int j) { return values_[start_[i] + (j - first_[i])]; }
    const Scalar& ref(int i, int j) const { return values_[start_[i] + (j - first_[i])]; }

    int n_ = 0;
    std::vector<int> first_;
    std::vector<std::size_t> start_;
    std::vector<Scalar> values_;
};

}  // namespace gn1d
