#pragma once

#include "gn1d/core_types.hpp"

#include <cmath>
#include <functional>

namespace gn1d::test {

inline Field sample(const Grid& grid, const std::function<double(double)>& f)
{
    Field out(grid.n());
    for (int i = 0; i < grid.n(); ++i)
        out[i] = f(grid.x(i));
    return out;
}

inline double max_abs(const Field& f) { return f.cwiseAbs().maxCoeff(); }

inline double rel_gap(const Field& a, const Field& b)
{
    const double scale = std::max(max_abs(a), max_abs(b));
    return scale == 0.0 ? 0.0 : max_abs(a - b) / scale;
}

/// Symbol of the fourth-order centered difference: D e^{ikx} = i k_fd e^{ikx}.
inline double k_fd(double k, double dx)
{
    return (8.0 * std::sin(k * dx) - std::sin(2.0 * k * dx)) / (6.0 * dx);
}

inline Grid two_pi_grid(int n) { return Grid(n, 2.0 * M_PI); }

}  // namespace gn1d::test
