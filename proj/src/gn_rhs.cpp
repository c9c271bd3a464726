#include "gn1d/gn_rhs.hpp"

#include "gn1d/grid_ops.hpp"

namespace gn1d {

Field q_total(const DepthField& depth, const Field& u, const Bathymetry& bathy, const Parameters& params,
              const Grid& grid)
{
    const double eps = params.epsilon;
    const auto h = depth.h.array();
    const Field ux = d1_spectral(u, grid);
    const auto ux2 = ux.array().square();
    const auto u2 = u.array().square();
    const auto bx = bathy.b_x.array();
    const auto bxx = bathy.b_xx.array();

    const Field flux1 = (h.cube() * ux2).matrix();
    const Field flux2 = (h.square() * u2 * bxx).matrix();
    const Field d1 = d1_spectral(flux1, grid);
    const Field d2 = d1_spectral(flux2, grid);

    return ((2.0 / 3.0) * d1.array() / h + eps * h * ux2 * bx + (0.5 * eps) * d2.array() / h +
            eps * eps * u2 * bxx * bx)
        .matrix();
}

Field q1_apply(const State& ubar, const Field& f, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid)
{
    const double eps = params.epsilon;
    const double mu = params.mu;
    const DepthField depth = compute_depth(ubar, bathy, params);
    const auto h = depth.h.array();
    const auto u = ubar.u.array();
    const Field ux = d1_spectral(ubar.u, grid);
    const auto fa = f.array();

    const Field flux = (h.cube() * ux.array() * fa).matrix();
    const Field dflux = d1_spectral(flux, grid);
    return ((2.0 / 3.0) * eps * mu * dflux.array() + eps * eps * mu * h.square() * bathy.b_x.array() * ux.array() * fa +
            eps * eps * mu * h.square() * bathy.b_xx.array() * u * fa)
        .matrix();
}

Field q2_eval(const State& ubar, const Bathymetry& bathy, const Parameters& params, const Grid& grid)
{
    const double eps = params.epsilon;
    const double mu = params.mu;
    const DepthField depth = compute_depth(ubar, bathy, params);
    const auto h = depth.h.array();
    const auto u2 = ubar.u.array().square();
    const Field coeff = (h.square() * bathy.b_xx.array()).matrix();
    const Field dcoeff = d1_spectral(coeff, grid);
    return (eps * eps * eps * mu * h * bathy.b_xx.array() * bathy.b_x.array() * u2 +
            0.5 * eps * eps * mu * dcoeff.array() * u2)
        .matrix();
}

namespace {

DepthField checked_depth(const State& state, const Bathymetry& bathy, const Parameters& params)
{
    if (!state.all_finite())
        throw NonFiniteError("state contains non-finite values");
    DepthField depth = compute_depth(state, bathy, params);
    const DepthVerdict verdict = check_depth_condition(depth, params);
    if (!verdict)
        throw DepthConditionError(verdict.min_value, verdict.location, params.h0);
    return depth;
}

}  // namespace

Tendency nonlinear_rhs(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                       const RhsOptions& options)
{
    require_same_size(grid, state.zeta, "zeta");
    require_same_size(grid, state.u, "u");
    const DepthField depth = checked_depth(state, bathy, params);
    const TOperator op = assemble_T(depth, bathy, params, grid);

    const Field& h = depth.h;
    const Field& u = state.u;
    const Field ux = d1_spectral(u, grid);
    const Field zeta_x = d1_spectral(state.zeta, grid);
    const Field flux = h.cwiseProduct(u);

    const Field forcing = h.cwiseProduct(zeta_x) +
                          (params.epsilon * params.mu) * h.cwiseProduct(q_total(depth, u, bathy, params, grid));

    Tendency out;
    out.dzeta = -d1_spectral(flux, grid);
    out.du = -params.epsilon * u.cwiseProduct(ux) - op.solve(forcing);
    if (options.dealias) {
        out.dzeta = two_thirds_filter(out.dzeta);
        out.du = two_thirds_filter(out.du);
    }
    if (!out.all_finite())
        throw NonFiniteError("tendency contains non-finite values");
    return out;
}

FrozenCoefficients freeze(const State& ubar, const Bathymetry& bathy, const Parameters& params, const Grid& grid)
{
    DepthField depth = checked_depth(ubar, bathy, params);
    TOperator op = assemble_T(depth, bathy, params, grid);
    Field ux = d1_spectral(ubar.u, grid);
    return FrozenCoefficients{ubar, std::move(ux), std::move(depth), std::move(op), bathy, params, grid};
}

Tendency apply_A(const FrozenCoefficients& frozen, const Field& dzeta, const Field& du)
{
    const Grid& grid = frozen.grid;
    require_same_size(grid, dzeta, "apply_A dzeta");
    require_same_size(grid, du, "apply_A du");
    const double eps = frozen.params.epsilon;
    const Field& h = frozen.depth.h;
    const Field& ubar = frozen.ubar.u;

    Tendency out;
    out.dzeta = eps * ubar.cwiseProduct(dzeta) + h.cwiseProduct(du);
    const Field coupled =
        h.cwiseProduct(dzeta) + q1_apply(frozen.ubar, du, frozen.bathy, frozen.params, grid);
    out.du = frozen.op.solve(coupled) + eps * ubar.cwiseProduct(du);
    return out;
}

Tendency eval_B(const FrozenCoefficients& frozen)
{
    Tendency out;
    out.dzeta = -frozen.params.epsilon * frozen.bathy.b_x.cwiseProduct(frozen.ubar.u);
    out.du = frozen.op.solve(q2_eval(frozen.ubar, frozen.bathy, frozen.params, frozen.grid));
    return out;
}

}  // namespace gn1d
