#include "gn1d/diagnostics.hpp"

#include "gn1d/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gn1d {

double conserved_energy(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid)
{
    const DepthField depth = compute_depth(state, bathy, params);
    const FactorOps ops = make_factor_ops(depth, bathy, params, grid);
    const Field& h = depth.h;
    const Field& u = state.u;
    const Field t1u = ops.apply_t1(u);
    const Field t2u = ops.apply_t2(u);
    return inner_product(state.zeta, state.zeta, grid) + inner_product(h.cwiseProduct(u), u, grid) +
           params.mu * inner_product(h.cwiseProduct(t1u), t1u, grid) +
           params.mu * inner_product(h.cwiseProduct(t2u), t2u, grid);
}

double xs_norm(const State& state, double s, const Parameters& params, const Grid& grid)
{
    const double z = sobolev_norm(state.zeta, s, grid);
    const double u = sobolev_norm(state.u, s, grid);
    const double ux = sobolev_norm(d1_spectral(state.u, grid), s, grid);
    return std::sqrt(z * z + u * u + params.mu * ux * ux);
}

double es_norm(const State& state, double s, const TOperator& symmetrizer)
{
    const Grid& grid = symmetrizer.grid();
    const Field lz = lambda_s(state.zeta, s, grid);
    const Field lu = lambda_s(state.u, s, grid);
    const double sq = inner_product(lz, lz, grid) + inner_product(symmetrizer.apply(lu), lu, grid);
    return std::sqrt(std::max(sq, 0.0));
}

double es_norm(const State& state, double s, const State& ubar, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid)
{
    const TOperator op = assemble_T(compute_depth(ubar, bathy, params), bathy, params, grid);
    return es_norm(state, s, op);
}

EquivalenceReport equivalence_report(const std::vector<State>& samples, double s, const TOperator& symmetrizer)
{
    EquivalenceReport report;
    for (const State& sample : samples) {
        const double e = es_norm(sample, s, symmetrizer);
        const double x = xs_norm(sample, s, symmetrizer.params(), symmetrizer.grid());
        if (!(e > 0.0) || !(x > 0.0))
            throw std::invalid_argument("equivalence_report: samples must be nonzero");
        report.max_upper_ratio = std::max(report.max_upper_ratio, e / x);
        report.max_lower_ratio = std::max(report.max_lower_ratio, x / e);
    }
    return report;
}

double mass(const State& state, const Grid& grid)
{
    return grid.dx() * state.zeta.sum();
}

DiagnosticRecord make_record(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                             double s)
{
    DiagnosticRecord r;
    r.t = state.time;
    r.energy = conserved_energy(state, bathy, params, grid);
    r.mass = mass(state, grid);
    r.min_h = compute_depth(state, bathy, params).h.minCoeff();
    r.xs_norm = xs_norm(state, s, params, grid);
    r.es_norm = es_norm(state, s, state, bathy, params, grid);
    return r;
}

}  // namespace gn1d
