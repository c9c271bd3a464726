#include "gn1d/random_fields.hpp"

#include "gn1d/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace gn1d {

Field random_smooth_field(const Grid& grid, int max_mode, double amplitude, Rng& rng)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const int n = grid.n();
    // a cos(k x) + b sin(k x) has forward coefficient (n / 2)(a - i b) at +k
    Eigen::VectorXcd spectrum = Eigen::VectorXcd::Zero(n / 2 + 1);
    for (int m = 1; m <= std::min(max_mode, n / 2); ++m) {
        const double a = coef(rng) / m;
        const double b = coef(rng) / m;
        spectrum[m] = (m == n / 2) ? std::complex<double>(n * a, 0.0) : 0.5 * n * std::complex<double>(a, -b);
    }
    Field f = from_fourier(spectrum, n);
    const double peak = f.cwiseAbs().maxCoeff();
    if (peak > 0.0)
        f *= amplitude / peak;
    return f;
}

Field random_white_field(int n, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Field f(n);
    for (int i = 0; i < n; ++i)
        f[i] = normal(rng);
    return f;
}

Bathymetry random_bathymetry(const Grid& grid, int max_mode, double amplitude, Rng& rng)
{
    Bathymetry bathy;
    bathy.b = random_smooth_field(grid, max_mode, amplitude, rng);
    bathy.b_x = d1_spectral(bathy.b, grid);
    bathy.b_xx = d2_spectral(bathy.b, grid);
    return bathy;
}

std::pair<State, Bathymetry> random_depth_state(const Grid& grid, const Parameters& params, Rng& rng,
                                                const RandomStateOptions& options)
{
    const double eps = params.epsilon;
    Bathymetry bathy = random_bathymetry(grid, options.max_mode, options.bottom_amplitude / eps, rng);
    // target depth in [floor, floor + range], then zeta = b + (h - 1) / eps
    const Field r = random_smooth_field(grid, options.max_mode, 1.0, rng);
    const double floor = options.floor_margin * params.h0;
    const Field h = (floor + 0.5 * options.depth_range * (1.0 + r.array())).matrix();
    State state = State::rest(grid);
    state.zeta = bathy.b + (h.array() - 1.0).matrix() / eps;
    state.u = random_smooth_field(grid, options.max_mode, options.velocity_amplitude, rng);
    return {std::move(state), std::move(bathy)};
}

}  // namespace gn1d
