#pragma once

#include "gn1d/core_types.hpp"

#include <random>
#include <utility>

namespace gn1d {

using Rng = std::mt19937_64;

/// Random trigonometric polynomial sum_{1 <= m <= max_mode} a_m cos(k_m x) + b_m sin(k_m x)
/// with coefficients decaying like 1/m and overall sup-norm scaled to `amplitude`.
Field random_smooth_field(const Grid& grid, int max_mode, double amplitude, Rng& rng);

/// Independent standard normal samples.
Field random_white_field(int n, Rng& rng);

/// Bathymetry that is a random trigonometric polynomial of sup-norm `amplitude`, with
/// spectral derivatives (exact for the resolved modes).
Bathymetry random_bathymetry(const Grid& grid, int max_mode, double amplitude, Rng& rng);

struct RandomStateOptions {
    int max_mode = 8;
    double bottom_amplitude = 0.3;  // sup |eps b|
    double depth_range = 0.5;       // h varies in [floor, floor + depth_range]
    double velocity_amplitude = 0.5;
    double floor_margin = 1.05;     // min h >= floor_margin * h0
};

/// Random smooth (zeta, u) over random bumpy bathymetry whose depth stays at or above
/// floor_margin * h0 for this epsilon.
std::pair<State, Bathymetry> random_depth_state(const Grid& grid, const Parameters& params, Rng& rng,
                                                const RandomStateOptions& options = {});

}  // namespace gn1d
