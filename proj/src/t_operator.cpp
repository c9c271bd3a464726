#include "gn1d/t_operator.hpp"

#include "gn1d/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gn1d {

namespace {

std::string factorization_message(double min_h, int row)
{
    std::ostringstream os;
    os << "dispersive operator is not positive definite (pivot failure at row " << row << ", min h = " << min_h
       << ")";
    return os.str();
}

}  // namespace

FactorizationError::FactorizationError(double min_h, int row)
    : std::runtime_error(factorization_message(min_h, row)), min_h_(min_h), row_(row)
{
}

FactorOps make_factor_ops(const DepthField& depth, const Bathymetry& bathy, const Parameters& params,
                          const Grid& grid)
{
    require_same_size(grid, depth.h, "depth");
    require_same_size(grid, bathy.b_x, "bathymetry b_x");
    const double sqrt3 = std::sqrt(3.0);
    const BandedOperator d = d1_fd(grid);
    const Field row_scale = depth.h / sqrt3;
    const Field shift = (0.5 * sqrt3 * params.epsilon) * bathy.b_x;
    FactorOps ops;
    ops.t1 = d.scale_rows(row_scale) - BandedOperator::diagonal(shift);
    ops.t2 = (0.5 * params.epsilon) * bathy.b_x;
    return ops;
}

TOperator assemble_T(const DepthField& depth, const Bathymetry& bathy, const Parameters& params, const Grid& grid)
{
    if (grid.n() < 16)
        throw std::invalid_argument("assemble_T: grid needs at least 16 points");
    FactorOps factors = make_factor_ops(depth, bathy, params, grid);
    const Field& h = depth.h;

    BandedOperator t2 = BandedOperator::diagonal(factors.t2);
    BandedOperator matrix =
        BandedOperator::diagonal(h) + factors.t1.gram(h) * params.mu + t2.gram(h) * params.mu;

    int failed_row = -1;
    auto factor = EnvelopeCholesky<double>::factorize(matrix, &failed_row);
    if (!factor)
        throw FactorizationError(h.minCoeff(), failed_row);
    return TOperator(std::move(matrix), std::move(*factor), std::move(factors), d1_fd(grid), depth, params, grid);
}

Field apply_T(const TOperator& op, const Field& w)
{
    require_same_size(op.grid(), w, "apply_T");
    return op.apply(w);
}

Field solve_T(const TOperator& op, const Field& f)
{
    require_same_size(op.grid(), f, "solve_T");
    return op.solve(f);
}

Field solve_T_dx(const TOperator& op, const Field& g)
{
    require_same_size(op.grid(), g, "solve_T_dx");
    return op.solve(op.derivative().apply(g));
}

double energy_form(const TOperator& op, const Field& v)
{
    const Grid& grid = op.grid();
    const Field& h = op.depth().h;
    const Field t1v = op.factors().apply_t1(v);
    const Field t2v = op.factors().apply_t2(v);
    const double mu = op.params().mu;
    return inner_product(h.cwiseProduct(v), v, grid) + mu * inner_product(h.cwiseProduct(t1v), t1v, grid) +
           mu * inner_product(h.cwiseProduct(t2v), t2v, grid);
}

double star_norm_squared(const TOperator& op, const Field& v)
{
    const Field dv = op.derivative().apply(v);
    return inner_product(v, v, op.grid()) + op.params().mu * inner_product(dv, dv, op.grid());
}

double coercivity_constant(double h0)
{
    return h0 / std::max(1.0, 18.0 / (h0 * h0));
}

CoercivityReport coercivity_report(const TOperator& op, int trials, std::uint64_t seed)
{
    const Grid& grid = op.grid();
    Rng rng(seed);
    CoercivityReport report;
    report.bound = coercivity_constant(op.params().h0);
    report.min_ratio = std::numeric_limits<double>::infinity();
    std::uniform_int_distribution<int> mode(1, grid.n() / 2);
    for (int t = 0; t < trials; ++t) {
        // alternate rough, smooth and localized trial fields
        Field v;
        switch (t % 3) {
        case 0: v = random_white_field(grid.n(), rng); break;
        case 1: v = random_smooth_field(grid, mode(rng), 1.0, rng); break;
        default: {
            const Field w = random_white_field(grid.n(), rng);
            const int centre = std::uniform_int_distribution<int>(0, grid.n() - 1)(rng);
            v = Field::Zero(grid.n());
            for (int i = 0; i < grid.n(); ++i) {
                const double d = grid.periodic_offset(i, grid.x(centre)) / (8.0 * grid.dx());
                v[i] = w[i] * std::exp(-d * d);
            }
        }
        }
        const double ratio = inner_product(op.apply(v), v, grid) / star_norm_squared(op, v);
        report.min_ratio = std::min(report.min_ratio, ratio);
        ++report.trials;
    }
    return report;
}

namespace {

double hs_norm(const Field& f, double s, const Grid& grid)
{
    return sobolev_norm(f, s, grid);
}

// x -> K^T K x for K = Lambda^s T^{-1} Lambda^{-s} stacked over sqrt(mu) Lambda^s D T^{-1} Lambda^{-s}
Field normal_r1(const TOperator& op, const Field& x, double s)
{
    const Grid& grid = op.grid();
    const double mu = op.params().mu;
    const BandedOperator& d = op.derivative();
    const Field w = op.solve(lambda_s(x, -s, grid));
    const Field a = lambda_s(w, 2.0 * s, grid);
    const Field b = lambda_s(d.apply(w), 2.0 * s, grid);
    // D^T = -D
    const Field back = a - mu * d.apply(b);
    return lambda_s(op.solve(back), -s, grid);
}

// x -> G^T G x for G = sqrt(mu) Lambda^s T^{-1} D Lambda^{-s}
Field normal_r2(const TOperator& op, const Field& x, double s)
{
    const Grid& grid = op.grid();
    const double mu = op.params().mu;
    const BandedOperator& d = op.derivative();
    const Field w = op.solve(d.apply(lambda_s(x, -s, grid)));
    const Field a = lambda_s(w, 2.0 * s, grid);
    return -mu * lambda_s(d.apply(op.solve(a)), -s, grid);
}

template <typename Normal>
Field power_iterate(Normal&& normal, Field x, int iterations)
{
    x.normalize();
    for (int it = 0; it < iterations; ++it) {
        Field y = normal(x);
        const double nrm = y.norm();
        if (!(nrm > 0.0))
            break;
        x = y / nrm;
    }
    return x;
}

}  // namespace

double inverse_ratio(const TOperator& op, const Field& f, double s)
{
    const Grid& grid = op.grid();
    const Field w = op.solve(f);
    const double num = hs_norm(w, s, grid) + std::sqrt(op.params().mu) * hs_norm(op.derivative().apply(w), s, grid);
    return num / hs_norm(f, s, grid);
}

double inverse_dx_ratio(const TOperator& op, const Field& g, double s)
{
    const Grid& grid = op.grid();
    return std::sqrt(op.params().mu) * hs_norm(solve_T_dx(op, g), s, grid) / hs_norm(g, s, grid);
}

InverseBoundReport inverse_bound_sweep(const std::vector<std::pair<State, Bathymetry>>& states,
                                       const std::vector<std::pair<double, double>>& eps_mu_grid, const Grid& grid,
                                       const BoundSweepOptions& options)
{
    InverseBoundReport report;
    Rng rng(options.seed);
    const double s = options.s;
    for (const auto& [eps, mu] : eps_mu_grid) {
        BoundSample sample{eps, mu, 0.0, 0.0};
        const Parameters params{eps, mu, options.h0};
        for (const auto& [state, bathy] : states) {
            const DepthField depth = compute_depth(state, bathy, params);
            if (!check_depth_condition(depth, params))
                continue;
            const TOperator op = assemble_T(depth, bathy, params, grid);
            for (int t = 0; t < options.random_trials; ++t) {
                const Field f = (t % 2 == 0) ? random_white_field(grid.n(), rng)
                                             : random_smooth_field(grid, grid.n() / 8, 1.0, rng);
                sample.r1 = std::max(sample.r1, inverse_ratio(op, f, s));
                sample.r2 = std::max(sample.r2, inverse_dx_ratio(op, f, s));
            }
            const Field start = random_white_field(grid.n(), rng);
            const Field x1 = power_iterate([&](const Field& x) { return normal_r1(op, x, s); }, start,
                                           options.power_iterations);
            const Field x2 = power_iterate([&](const Field& x) { return normal_r2(op, x, s); }, start,
                                           options.power_iterations);
            sample.r1 = std::max(sample.r1, inverse_ratio(op, lambda_s(x1, -s, grid), s));
            sample.r2 = std::max(sample.r2, inverse_dx_ratio(op, lambda_s(x2, -s, grid), s));
        }
        report.samples.push_back(sample);
    }
    // spread over mu at fixed epsilon; the constants legitimately depend on the depth range
    for (const auto& smp : report.samples) {
        report.max_r1 = std::max(report.max_r1, smp.r1);
        report.max_r2 = std::max(report.max_r2, smp.r2);
        double lo1 = smp.r1, hi1 = smp.r1, lo2 = smp.r2, hi2 = smp.r2;
        for (const auto& other : report.samples) {
            if (other.epsilon != smp.epsilon)
                continue;
            lo1 = std::min(lo1, other.r1);
            hi1 = std::max(hi1, other.r1);
            lo2 = std::min(lo2, other.r2);
            hi2 = std::max(hi2, other.r2);
        }
        report.spread_r1 = std::max(report.spread_r1, hi1 / lo1);
        report.spread_r2 = std::max(report.spread_r2, hi2 / lo2);
    }
    return report;
}

}  // namespace gn1d
