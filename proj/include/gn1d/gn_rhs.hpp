#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/t_operator.hpp"

namespace gn1d {

/// Time derivative of (zeta, u). Also used for any (zeta, u)-shaped pair of fields.
struct Tendency {
    Field dzeta;
    Field du;

    bool all_finite() const { return dzeta.allFinite() && du.allFinite(); }
};

struct RhsOptions {
    /// Apply the 2/3-rule filter to the tendency. Off by default.
    bool dealias = false;
};

/// Q[h, eps b](u) with spectral derivatives:
///   2/(3h) (h^3 u_x^2)_x + eps h u_x^2 b_x + eps/(2h) (h^2 u^2 b_xx)_x + eps^2 u^2 b_xx b_x
Field q_total(const DepthField& depth, const Field& u, const Bathymetry& bathy, const Parameters& params,
              const Grid& grid);

/// Q1[Ubar] f = 2/3 eps mu (h^3 u_x f)_x + eps^2 mu h^2 b_x u_x f + eps^2 mu h^2 b_xx u f
Field q1_apply(const State& ubar, const Field& f, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid);

/// q2(Ubar) = eps^3 mu h b_xx b_x u^2 + 1/2 eps^2 mu (h^2 b_xx)_x u^2
Field q2_eval(const State& ubar, const Bathymetry& bathy, const Parameters& params, const Grid& grid);

/// Direct form of the momentum balance:
///   zeta_t = -(h u)_x,   u_t = -eps u u_x - T^{-1}(h zeta_x + eps mu h Q(u)).
/// Throws DepthConditionError below the floor, FactorizationError on solve failure and
/// NonFiniteError when the state or result is not finite.
Tendency nonlinear_rhs(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                       const RhsOptions& options = {});

/// Coefficients of the quasilinear form frozen at a reference state.
struct FrozenCoefficients {
    State ubar;
    Field ubar_x;
    DepthField depth;
    TOperator op;
    Bathymetry bathy;
    Parameters params;
    Grid grid;
};

/// Checks the depth condition at ubar and assembles T(h(ubar)).
FrozenCoefficients freeze(const State& ubar, const Bathymetry& bathy, const Parameters& params, const Grid& grid);

/// A[Ubar] applied to (dzeta, du):
///   ( eps ubar dzeta + h du,
///     T^{-1}(h dzeta) + eps ubar du + T^{-1} Q1[Ubar] du )
Tendency apply_A(const FrozenCoefficients& frozen, const Field& dzeta, const Field& du);

/// B(Ubar) = ( -eps b_x ubar, T^{-1} q2(Ubar) ).
Tendency eval_B(const FrozenCoefficients& frozen);

}  // namespace gn1d
