#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gn1d {

using Field = Eigen::VectorXd;
using FieldRef = Eigen::Ref<const Eigen::VectorXd>;

/// Nondimensional model parameters. epsilon is the nonlinearity (amplitude over
/// depth), mu the shallowness (depth over wavelength, squared), h0 the floor the
/// water depth must stay above.
struct Parameters {
    double epsilon = 0.1;
    double mu = 0.1;
    double h0 = 0.5;

    /// Throws std::invalid_argument when a field leaves its admissible range.
    void validate() const;
};

/// Uniform periodic grid, x_i = i * dx for i in [0, n), x_n identified with x_0.
class Grid {
public:
    Grid(int n, double length);

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return dx_; }
    double x(int i) const { return i * dx_; }
    Field coordinates() const;

    /// Signed distance from x0 to x_i on the circle, in [-L/2, L/2).
    double periodic_offset(int i, double x0) const;

private:
    int n_;
    double length_;
    double dx_;
};

/// Bottom elevation and its first two derivatives on the grid.
struct Bathymetry {
    Field b;
    Field b_x;
    Field b_xx;

    static Bathymetry flat(const Grid& grid);
    bool is_flat() const;
};

struct State {
    Field zeta;
    Field u;
    double time = 0.0;

    static State rest(const Grid& grid);
    bool all_finite() const;
    int size() const { return static_cast<int>(zeta.size()); }
};

/// Water depth h = 1 + epsilon (zeta - b).
struct DepthField {
    Field h;
};

struct DepthVerdict {
    bool ok = true;
    double min_value = 0.0;
    int location = -1;

    explicit operator bool() const { return ok; }
};

DepthField compute_depth(const State& state, const Bathymetry& bathy, const Parameters& params);

/// ok iff min(h) >= h0 (inclusive). On failure the verdict carries the minimum and
/// its first index.
DepthVerdict check_depth_condition(const DepthField& depth, const Parameters& params);

/// Raised when the depth floor is crossed in a context that cannot continue.
class DepthConditionError : public std::runtime_error {
public:
    DepthConditionError(double min_h, int location, double h0);
    double min_h() const { return min_h_; }
    int location() const { return location_; }

private:
    double min_h_;
    int location_;
};

/// Raised when a field that should be finite is not.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void require_same_size(const Grid& grid, const Field& f, const char* what);

}  // namespace gn1d
