#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/envelope_cholesky.hpp"
#include "gn1d/grid_ops.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gn1d {

/// First-order factors of the dispersive operator:
///   T1 u = (h / sqrt 3) D u - (sqrt 3 / 2) eps b_x u,   T2 u = (eps / 2) b_x u.
struct FactorOps {
    BandedOperator t1;
    Field t2;  // diagonal of T2

    Field apply_t1(const Field& u) const { return t1.apply(u); }
    Field apply_t2(const Field& u) const { return t2.cwiseProduct(u); }
};

FactorOps make_factor_ops(const DepthField& depth, const Bathymetry& bathy, const Parameters& params,
                          const Grid& grid);

/// The assembled operator lost positive definiteness.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(double min_h, int row);
    double min_h() const { return min_h_; }
    int row() const { return row_; }

private:
    double min_h_;
    int row_;
};

/// Elliptic operator h + mu h T[h, eps b] in the factored form
///   diag(h) + mu T1^T diag(h) T1 + mu T2^T diag(h) T2,
/// which is symmetric by construction and positive definite whenever h > 0.
class TOperator {
public:
    const BandedOperator& matrix() const { return matrix_; }
    const FactorOps& factors() const { return factors_; }
    const DepthField& depth() const { return depth_; }
    const Parameters& params() const { return params_; }
    const Grid& grid() const { return grid_; }
    const BandedOperator& derivative() const { return d_; }

    Field apply(const Field& w) const { return matrix_.apply(w); }
    Field solve(const Field& f) const { return factor_.solve(f); }

private:
    friend TOperator assemble_T(const DepthField&, const Bathymetry&, const Parameters&, const Grid&);
    TOperator(BandedOperator matrix, EnvelopeCholesky<double> factor, FactorOps factors, BandedOperator d,
              DepthField depth, Parameters params, Grid grid)
        : matrix_(std::move(matrix)),
          factor_(std::move(factor)),
          factors_(std::move(factors)),
          d_(std::move(d)),
          depth_(std::move(depth)),
          params_(params),
          grid_(grid)
    {
    }

    BandedOperator matrix_;
    EnvelopeCholesky<double> factor_;
    FactorOps factors_;
    BandedOperator d_;
    DepthField depth_;
    Parameters params_;
    Grid grid_;
};

/// Builds and factorizes the operator. Throws FactorizationError (with min h) if the
/// Cholesky pivots are not all positive. Needs n >= 16.
TOperator assemble_T(const DepthField& depth, const Bathymetry& bathy, const Parameters& params, const Grid& grid);

Field apply_T(const TOperator& op, const Field& w);
Field solve_T(const TOperator& op, const Field& f);
/// T^{-1} (D g) with the same banded derivative used inside the operator.
Field solve_T_dx(const TOperator& op, const Field& g);

/// a(v, v) = (h v, v) + mu (h T1 v, T1 v) + mu (h T2 v, T2 v), evaluated from the factors.
double energy_form(const TOperator& op, const Field& v);

/// |v|_*^2 = |v|^2 + mu |D v|^2
double star_norm_squared(const TOperator& op, const Field& v);

/// h0 / max{1, 18 / h0^2}
double coercivity_constant(double h0);

struct CoercivityReport {
    double min_ratio = 0.0;
    double bound = 0.0;
    int trials = 0;
    bool satisfied() const { return min_ratio >= bound; }
};

/// Minimum of a(v, v) / |v|_*^2 over random trial fields, against the floor h0 of op.params().
CoercivityReport coercivity_report(const TOperator& op, int trials, std::uint64_t seed);

struct BoundSample {
    double epsilon = 0.0;
    double mu = 0.0;
    double r1 = 0.0;  // (|T^{-1} f|_s + sqrt(mu) |D T^{-1} f|_s) / |f|_s
    double r2 = 0.0;  // sqrt(mu) |T^{-1} D g|_s / |g|_s
};

struct InverseBoundReport {
    std::vector<BoundSample> samples;  // one per (epsilon, mu), maximized over states and trials
    double max_r1 = 0.0;
    double max_r2 = 0.0;
    double spread_r1 = 0.0;  // max / min over mu at fixed epsilon, worst epsilon
    double spread_r2 = 0.0;
};

struct BoundSweepOptions {
    double s = 0.0;
    double h0 = 0.1;
    int random_trials = 8;
    int power_iterations = 40;
    std::uint64_t seed = 1;
};

/// Measures the inverse-operator constants across a parameter grid. Each constant is
/// the maximum of the ratio over random fields and over a power-iteration estimate of
/// the corresponding operator norm. States that violate the depth floor are skipped.
InverseBoundReport inverse_bound_sweep(const std::vector<std::pair<State, Bathymetry>>& states,
                                       const std::vector<std::pair<double, double>>& eps_mu_grid, const Grid& grid,
                                       const BoundSweepOptions& options);

/// Ratio r1 and r2 for one field each, on an assembled operator.
double inverse_ratio(const TOperator& op, const Field& f, double s);
double inverse_dx_ratio(const TOperator& op, const Field& g, double s);

}  // namespace gn1d
