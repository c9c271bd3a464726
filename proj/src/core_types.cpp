#include "gn1d/core_types.hpp"

#include <cmath>
#include <sstream>

namespace gn1d {

void Parameters::validate() const
{
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (!(mu > 0.0 && mu <= 1.0))
        throw std::invalid_argument("mu must lie in (0, 1]");
    if (!(h0 > 0.0) || !std::isfinite(h0))
        throw std::invalid_argument("h0 must be positive");
}

Grid::Grid(int n, double length) : n_(n), length_(length), dx_(length / n)
{
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("grid size must be positive and even");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("grid length must be positive");
}

Field Grid::coordinates() const
{
    Field x(n_);
    for (int i = 0; i < n_; ++i)
        x[i] = this->x(i);
    return x;
}

double Grid::periodic_offset(int i, double x0) const
{
    double d = std::fmod(x(i) - x0, length_);
    if (d < -0.5 * length_)
        d += length_;
    else if (d >= 0.5 * length_)
        d -= length_;
    return d;
}

Bathymetry Bathymetry::flat(const Grid& grid)
{
    return {Field::Zero(grid.n()), Field::Zero(grid.n()), Field::Zero(grid.n())};
}

bool Bathymetry::is_flat() const
{
    return (b.array() == 0.0).all() && (b_x.array() == 0.0).all() && (b_xx.array() == 0.0).all();
}

State State::rest(const Grid& grid)
{
    return {Field::Zero(grid.n()), Field::Zero(grid.n()), 0.0};
}

bool State::all_finite() const
{
    return zeta.allFinite() && u.allFinite() && std::isfinite(time);
}

DepthField compute_depth(const State& state, const Bathymetry& bathy, const Parameters& params)
{
    if (state.zeta.size() != bathy.b.size())
        throw std::invalid_argument("state and bathymetry lengths differ");
    return {(1.0 + params.epsilon * (state.zeta - bathy.b).array()).matrix()};
}

DepthVerdict check_depth_condition(const DepthField& depth, const Parameters& params)
{
    DepthVerdict v;
    if (depth.h.size() == 0)
        return v;
    v.min_value = depth.h[0];
    v.location = 0;
    for (Eigen::Index i = 0; i < depth.h.size(); ++i) {
        const double hi = depth.h[i];
        if (std::isnan(hi)) {
            // a NaN depth is always a violation; report it where it first appears
            return {false, hi, static_cast<int>(i)};
        }
        if (hi < v.min_value) {
            v.min_value = hi;
            v.location = static_cast<int>(i);
        }
    }
    v.ok = v.min_value >= params.h0;
    return v;
}

namespace {
std::string depth_message(double min_h, int location, double h0)
{
    std::ostringstream os;
    os << "depth condition violated: min h = " << min_h << " at index " << location
       << " (floor h0 = " << h0 << ")";
    return os.str();
}
}  // namespace

DepthConditionError::DepthConditionError(double min_h, int location, double h0)
    : std::runtime_error(depth_message(min_h, location, h0)), min_h_(min_h), location_(location)
{
}

void require_same_size(const Grid& grid, const Field& f, const char* what)
{
    if (f.size() != grid.n()) {
        std::ostringstream os;
        os << what << ": expected " << grid.n() << " samples, got " << f.size();
        throw std::invalid_argument(os.str());
    }
}

}  // namespace gn1d
