#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/gn_rhs.hpp"
#include "gn1d/time_integrator.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gn1d {

/// Smooth cutoff: 1 on [0, 1], 0 on [2, inf), C-infinity monotone bridge built from
/// exp(-1/x) partition functions. Even in r.
double mollifier_profile(double r);

/// Fourier multiplier J = phi(delta |D|) sampled on bins 0..n/2.
struct Mollifier {
    double delta = 0.0;
    Field symbol;
};

Mollifier make_mollifier(double delta, const Grid& grid);
Field mollify(const Field& f, const Mollifier& m);

/// Uniformly spaced snapshots of a trajectory, linearly interpolated in time.
class ReferenceTrajectory {
public:
    ReferenceTrajectory() = default;
    ReferenceTrajectory(double t0, double spacing, std::vector<State> snapshots);

    /// Two copies of `state` spanning [t0, t1]; interpolates to a constant.
    static ReferenceTrajectory constant(const State& state, double t0, double t1);
    /// `count` + 1 copies of `state` on a uniform grid over [t0, t1].
    static ReferenceTrajectory constant(const State& state, double t0, double t1, int count);

    double t_begin() const { return t0_; }
    double t_end() const { return t0_ + spacing_ * static_cast<double>(snapshots_.size() - 1); }
    double spacing() const { return spacing_; }
    std::size_t size() const { return snapshots_.size(); }
    const State& operator[](std::size_t i) const { return snapshots_[i]; }
    const std::vector<State>& snapshots() const { return snapshots_; }
    double time(std::size_t i) const { return t0_ + spacing_ * static_cast<double>(i); }

    bool covers(double t0, double t1) const;
    /// Linear interpolation; throws std::out_of_range outside the window.
    State at(double t) const;

private:
    double t0_ = 0.0;
    double spacing_ = 1.0;
    std::vector<State> snapshots_;
};

/// Nonlinear RK4 trajectory from U0 with `steps` uniform steps over [0, t_end], one
/// snapshot per step. Stage failures propagate as exceptions.
ReferenceTrajectory nonlinear_reference(const State& U0, double t_end, int steps, const Bathymetry& bathy,
                                        const Parameters& params, const Grid& grid, const RhsOptions& options = {});

/// -A[Ubar(t)] dU/dx - B(Ubar(t)), or -J A J dU/dx - B with a mollifier.
Tendency linear_rhs(const ReferenceTrajectory& ref, double t, const State& U, const Bathymetry& bathy,
                    const Parameters& params, const Grid& grid, const Mollifier* mollifier = nullptr);

/// Same with the coefficients already frozen.
Tendency linear_rhs(const FrozenCoefficients& frozen, const State& U, const Mollifier* mollifier = nullptr);

struct LinearOptions {
    int steps = 0;                        // 0: derived from the CFL bound at U0
    const Mollifier* mollifier = nullptr;
    double norm_threshold_factor = 1e3;
    double s = 2.0;
    bool include_forcing = true;          // false drops B(Ubar)
    bool dealias = false;                 // 2/3-rule filter on the tendency
};

struct LinearSolution {
    RunStatus status = RunStatus::completed;
    ReferenceTrajectory trajectory;  // one snapshot per step, including t = 0
    std::string message;
};

/// RK4 on the linear problem around `ref` over [0, control.t_end] with uniform steps.
LinearSolution solve_linear(const ReferenceTrajectory& ref, const State& U0, const StepControl& control,
                            const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                            const LinearOptions& options = {});

/// Number of uniform steps used by solve_linear when LinearOptions::steps is 0.
int linear_step_count(const State& U0, const StepControl& control, const Bathymetry& bathy, const Parameters& params,
                      const Grid& grid);

struct PicardOptions {
    int max_iters = 12;
    double tol = 1e-10;
    double s = 2.0;
    int steps = 0;
    bool dealias = false;
};

struct PicardResult {
    std::vector<ReferenceTrajectory> iterates;  // U^0, U^1, ...
    std::vector<double> gaps;                   // gaps[k] = sup_t E^s(U^{k+1} - U^k), symmetrizer of U^k
    bool converged = false;
    RunStatus status = RunStatus::completed;
    std::string message;

    const ReferenceTrajectory& final() const { return iterates.back(); }
};

/// U^0 = U0 constant in time; U^{k+1} solves the linear problem around U^k from U0.
PicardResult picard_solve(const State& U0, const StepControl& control, const Bathymetry& bathy,
                          const Parameters& params, const Grid& grid, const PicardOptions& options = {},
                          const std::function<void(int iteration, double gap)>& sink = {});

/// sup_j E^s_{a_j}(b_j - a_j) over matching snapshots.
double trajectory_gap(const ReferenceTrajectory& reference, const ReferenceTrajectory& other, double s,
                      const Bathymetry& bathy, const Parameters& params, const Grid& grid);

/// Envelope E(t) <= e^{eps lambda t} E(0) + eps int_0^t e^{eps lambda (t - t')} C dt'.
struct EnvelopeFit {
    double lambda = 0.0;
    double forcing = 0.0;  // C
};

/// C is the largest sampled forcing level; lambda is the smallest rate for which the
/// envelope bounds every sample (found by bisection, may be negative).
EnvelopeFit fit_energy_envelope(const std::vector<double>& times, const std::vector<double>& energy,
                                const std::vector<double>& forcing, double epsilon);

double envelope_value(const EnvelopeFit& fit, double e0, double t, double epsilon);

}  // namespace gn1d
