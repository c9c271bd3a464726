#include "gn1d/grid_ops.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace gn1d {

namespace {

Eigen::FFT<double>& fft()
{
    thread_local Eigen::FFT<double> engine = [] {
        Eigen::FFT<double> f;
        f.SetFlag(Eigen::FFT<double>::HalfSpectrum);
        return f;
    }();
    return engine;
}

void require_even(Eigen::Index n)
{
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("spectral operations need an even, positive number of samples");
}

}  // namespace

BandedOperator d1_fd(const Grid& grid)
{
    const int n = grid.n();
    if (n < 8)
        throw std::invalid_argument("d1_fd: grid needs at least 8 points");
    const double c1 = 2.0 / (3.0 * grid.dx());
    const double c2 = 1.0 / (12.0 * grid.dx());
    BandedOperator d(n, 2);
    for (int i = 0; i < n; ++i) {
        d.at(i, -2) = c2;
        d.at(i, -1) = -c1;
        d.at(i, 1) = c1;
        d.at(i, 2) = -c2;
    }
    return d;
}

double wavenumber(int j, const Grid& grid)
{
    return 2.0 * std::numbers::pi * j / grid.length();
}

Eigen::VectorXcd to_fourier(const Field& f)
{
    require_even(f.size());
    Eigen::VectorXcd out;
    fft().fwd(out, f);
    return out;
}

Field from_fourier(const Eigen::VectorXcd& half_spectrum, int n)
{
    require_even(n);
    if (half_spectrum.size() != n / 2 + 1)
        throw std::invalid_argument("from_fourier: half spectrum has the wrong length");
    Field out;
    fft().inv(out, half_spectrum, n);
    return out;
}

Field apply_multiplier(const Field& f, const Field& half_symbol)
{
    const auto n = static_cast<int>(f.size());
    Eigen::VectorXcd c = to_fourier(f);
    if (half_symbol.size() != c.size())
        throw std::invalid_argument("apply_multiplier: symbol length mismatch");
    for (Eigen::Index j = 0; j < c.size(); ++j)
        c[j] *= half_symbol[j];
    return from_fourier(c, n);
}

Field d1_spectral(const Field& f, const Grid& grid)
{
    require_same_size(grid, f, "d1_spectral");
    const int n = grid.n();
    Eigen::VectorXcd c = to_fourier(f);
    for (int j = 0; j < n / 2; ++j)
        c[j] *= std::complex<double>(0.0, wavenumber(j, grid));
    c[n / 2] = 0.0;
    return from_fourier(c, n);
}

Field d2_spectral(const Field& f, const Grid& grid)
{
    require_same_size(grid, f, "d2_spectral");
    const int n = grid.n();
    Eigen::VectorXcd c = to_fourier(f);
    for (int j = 0; j <= n / 2; ++j) {
        const double k = wavenumber(j, grid);
        c[j] *= -k * k;
    }
    return from_fourier(c, n);
}

Field lambda_symbol(double s, const Grid& grid)
{
    const int n = grid.n();
    Field sym(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) {
        const double k = wavenumber(j, grid);
        sym[j] = std::pow(1.0 + k * k, 0.5 * s);
    }
    return sym;
}

Field lambda_s(const Field& f, double s, const Grid& grid)
{
    require_same_size(grid, f, "lambda_s");
    if (s == 0.0)
        return f;
    return apply_multiplier(f, lambda_symbol(s, grid));
}

double sobolev_norm(const Field& f, double s, const Grid& grid)
{
    require_same_size(grid, f, "sobolev_norm");
    const int n = grid.n();
    const Eigen::VectorXcd c = to_fourier(f);
    const Field sym = lambda_symbol(2.0 * s, grid);
    double acc = 0.0;
    for (int j = 0; j <= n / 2; ++j) {
        const double weight = (j == 0 || j == n / 2) ? 1.0 : 2.0;
        acc += weight * sym[j] * std::norm(c[j]);
    }
    // |f|^2 = L * sum |c_j / n|^2
    return std::sqrt(acc * grid.length()) / n;
}

double inner_product(const Field& f, const Field& g, const Grid& grid)
{
    if (f.size() != g.size())
        throw std::invalid_argument("inner_product: length mismatch");
    return grid.dx() * f.dot(g);
}

double l2_norm(const Field& f, const Grid& grid)
{
    return std::sqrt(inner_product(f, f, grid));
}

Field two_thirds_filter(const Field& f)
{
    const auto n = static_cast<int>(f.size());
    Eigen::VectorXcd c = to_fourier(f);
    for (int j = 0; j <= n / 2; ++j)
        if (3 * j > n)
            c[j] = 0.0;
    return from_fourier(c, n);
}

}  // namespace gn1d
