#include "gn1d/linearized.hpp"

#include "gn1d/diagnostics.hpp"
#include "gn1d/grid_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace gn1d {

double mollifier_profile(double r)
{
    r = std::abs(r);
    if (r <= 1.0)
        return 1.0;
    if (r >= 2.0)
        return 0.0;
    auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double a = f(2.0 - r);
    const double b = f(r - 1.0);
    return a / (a + b);
}

Mollifier make_mollifier(double delta, const Grid& grid)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("mollifier delta must be positive");
    Mollifier m;
    m.delta = delta;
    m.symbol.resize(grid.n() / 2 + 1);
    for (int j = 0; j <= grid.n() / 2; ++j)
        m.symbol[j] = mollifier_profile(delta * wavenumber(j, grid));
    return m;
}

Field mollify(const Field& f, const Mollifier& m)
{
    return apply_multiplier(f, m.symbol);
}

ReferenceTrajectory::ReferenceTrajectory(double t0, double spacing, std::vector<State> snapshots)
    : t0_(t0), spacing_(spacing), snapshots_(std::move(snapshots))
{
    if (snapshots_.empty())
        throw std::invalid_argument("ReferenceTrajectory: no snapshots");
    if (!(spacing_ > 0.0))
        throw std::invalid_argument("ReferenceTrajectory: time samples must be strictly increasing");
}

ReferenceTrajectory ReferenceTrajectory::constant(const State& state, double t0, double t1)
{
    return constant(state, t0, t1, 1);
}

ReferenceTrajectory ReferenceTrajectory::constant(const State& state, double t0, double t1, int count)
{
    if (count < 1)
        throw std::invalid_argument("ReferenceTrajectory::constant: count must be positive");
    const double spacing = t1 > t0 ? (t1 - t0) / count : 1.0;
    std::vector<State> snaps;
    snaps.reserve(static_cast<std::size_t>(count) + 1);
    for (int i = 0; i <= count; ++i) {
        State s = state;
        s.time = t0 + spacing * i;
        snaps.push_back(std::move(s));
    }
    return ReferenceTrajectory(t0, spacing, std::move(snaps));
}

bool ReferenceTrajectory::covers(double t0, double t1) const
{
    const double tol = 1e-12 * std::max(1.0, std::abs(t_end()));
    return t0 >= t_begin() - tol && t1 <= t_end() + tol;
}

State ReferenceTrajectory::at(double t) const
{
    const double tol = 1e-12 * std::max(1.0, std::abs(t_end()));
    if (t < t_begin() - tol || t > t_end() + tol)
        throw std::out_of_range("ReferenceTrajectory::at: time outside the stored window");
    if (snapshots_.size() == 1)
        return snapshots_.front();
    const double pos = std::clamp((t - t0_) / spacing_, 0.0, static_cast<double>(snapshots_.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(pos), snapshots_.size() - 2);
    const double theta = pos - static_cast<double>(i);
    const State& a = snapshots_[i];
    const State& b = snapshots_[i + 1];
    if (theta == 0.0) {
        State s = a;
        s.time = t;
        return s;
    }
    return {(1.0 - theta) * a.zeta + theta * b.zeta, (1.0 - theta) * a.u + theta * b.u, t};
}

namespace {

Tendency linear_rhs_impl(const FrozenCoefficients& frozen, const State& U, const Mollifier* mollifier,
                         bool include_forcing, bool dealias = false)
{
    const Grid& grid = frozen.grid;
    Field dz = d1_spectral(U.zeta, grid);
    Field du = d1_spectral(U.u, grid);
    if (mollifier) {
        dz = mollify(dz, *mollifier);
        du = mollify(du, *mollifier);
    }
    Tendency a = apply_A(frozen, dz, du);
    if (mollifier) {
        a.dzeta = mollify(a.dzeta, *mollifier);
        a.du = mollify(a.du, *mollifier);
    }
    Tendency out{-a.dzeta, -a.du};
    if (include_forcing) {
        const Tendency b = eval_B(frozen);
        out.dzeta -= b.dzeta;
        out.du -= b.du;
    }
    if (dealias) {
        out.dzeta = two_thirds_filter(out.dzeta);
        out.du = two_thirds_filter(out.du);
    }
    if (!out.all_finite())
        throw NonFiniteError("linearized tendency contains non-finite values");
    return out;
}

// Frozen coefficients for the last few stage times; RK4 revisits t + dt/2 and t + dt.
class FrozenCache {
public:
    FrozenCache(const ReferenceTrajectory& ref, const Bathymetry& bathy, const Parameters& params, const Grid& grid)
        : ref_(ref), bathy_(bathy), params_(params), grid_(grid)
    {
    }

    const FrozenCoefficients& at(double t)
    {
        for (auto& e : entries_)
            if (e && e->first == t)
                return e->second;
        auto& slot = entries_[next_];
        next_ = (next_ + 1) % entries_.size();
        slot.emplace(t, freeze(ref_.at(t), bathy_, params_, grid_));
        return slot->second;
    }

private:
    const ReferenceTrajectory& ref_;
    const Bathymetry& bathy_;
    const Parameters& params_;
    const Grid& grid_;
    std::array<std::optional<std::pair<double, FrozenCoefficients>>, 3> entries_;
    std::size_t next_ = 0;
};

State advance(const State& s, double dt, const Tendency& k)
{
    return {s.zeta + dt * k.dzeta, s.u + dt * k.du, s.time + dt};
}

}  // namespace

ReferenceTrajectory nonlinear_reference(const State& U0, double t_end, int steps, const Bathymetry& bathy,
                                        const Parameters& params, const Grid& grid, const RhsOptions& options)
{
    if (steps < 1 || !(t_end > 0.0))
        throw std::invalid_argument("nonlinear_reference: need t_end > 0 and at least one step");
    const double dt = t_end / steps;
    std::vector<State> snaps;
    snaps.reserve(static_cast<std::size_t>(steps) + 1);
    State current = U0;
    current.time = 0.0;
    snaps.push_back(current);
    for (int j = 0; j < steps; ++j) {
        current = rk4_step(current, dt, bathy, params, grid, options);
        current.time = (j + 1) * dt;
        snaps.push_back(current);
    }
    return ReferenceTrajectory(0.0, dt, std::move(snaps));
}

Tendency linear_rhs(const FrozenCoefficients& frozen, const State& U, const Mollifier* mollifier)
{
    return linear_rhs_impl(frozen, U, mollifier, true);
}

Tendency linear_rhs(const ReferenceTrajectory& ref, double t, const State& U, const Bathymetry& bathy,
                    const Parameters& params, const Grid& grid, const Mollifier* mollifier)
{
    const FrozenCoefficients frozen = freeze(ref.at(t), bathy, params, grid);
    return linear_rhs_impl(frozen, U, mollifier, true);
}

int linear_step_count(const State& U0, const StepControl& control, const Bathymetry& bathy, const Parameters& params,
                      const Grid& grid)
{
    if (control.t_end <= 0.0)
        return 1;
    const double dt0 = cfl_dt(U0, bathy, params, grid, control);
    return std::max(1, static_cast<int>(std::ceil(control.t_end / dt0 - 1e-9)));
}

LinearSolution solve_linear(const ReferenceTrajectory& ref, const State& U0, const StepControl& control,
                            const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                            const LinearOptions& options)
{
    control.validate();
    if (!ref.covers(0.0, control.t_end))
        throw std::invalid_argument("solve_linear: reference trajectory does not cover [0, t_end]");
    const int steps = options.steps > 0 ? options.steps : linear_step_count(U0, control, bathy, params, grid);
    const double dt = control.t_end / steps;

    LinearSolution out;
    std::vector<State> snaps;
    snaps.reserve(static_cast<std::size_t>(steps) + 1);
    State current = U0;
    current.time = 0.0;
    snaps.push_back(current);

    const double threshold =
        options.norm_threshold_factor * std::max(xs_norm(U0, options.s, params, grid), 1e-300);
    FrozenCache cache(ref, bathy, params, grid);
    const Mollifier* m = options.mollifier;
    const bool forcing = options.include_forcing;
    const bool dealias = options.dealias;

    try {
        for (int j = 0; j < steps; ++j) {
            const double t = j * dt;
            const double t_half = t + 0.5 * dt;
            const double t_next = (j + 1) * dt;
            const Tendency k1 = linear_rhs_impl(cache.at(t), current, m, forcing, dealias);
            const Tendency k2 = linear_rhs_impl(cache.at(t_half), advance(current, 0.5 * dt, k1), m, forcing, dealias);
            const Tendency k3 = linear_rhs_impl(cache.at(t_half), advance(current, 0.5 * dt, k2), m, forcing, dealias);
            const Tendency k4 = linear_rhs_impl(cache.at(t_next), advance(current, dt, k3), m, forcing, dealias);
            current.zeta += (dt / 6.0) * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta);
            current.u += (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
            current.time = t_next;
            if (!current.all_finite() || !(xs_norm(current, options.s, params, grid) <= threshold)) {
                out.status = RunStatus::blowup_norm;
                out.message = "linearized solution exceeded the X^s threshold";
                break;
            }
            snaps.push_back(current);
        }
    } catch (const DepthConditionError& e) {
        out.status = RunStatus::blowup_depth;
        out.message = e.what();
    } catch (const FactorizationError& e) {
        out.status = RunStatus::solver_failure;
        out.message = e.what();
    } catch (const NonFiniteError& e) {
        out.status = RunStatus::blowup_norm;
        out.message = e.what();
    }
    out.trajectory = ReferenceTrajectory(0.0, dt, std::move(snaps));
    return out;
}

double trajectory_gap(const ReferenceTrajectory& reference, const ReferenceTrajectory& other, double s,
                      const Bathymetry& bathy, const Parameters& params, const Grid& grid)
{
    if (reference.size() != other.size())
        throw std::invalid_argument("trajectory_gap: trajectories have different lengths");
    double gap = 0.0;
    for (std::size_t j = 0; j < reference.size(); ++j) {
        const State& a = reference[j];
        const State& b = other[j];
        const TOperator sym = assemble_T(compute_depth(a, bathy, params), bathy, params, grid);
        const State diff{b.zeta - a.zeta, b.u - a.u, a.time};
        gap = std::max(gap, es_norm(diff, s, sym));
    }
    return gap;
}

PicardResult picard_solve(const State& U0, const StepControl& control, const Bathymetry& bathy,
                          const Parameters& params, const Grid& grid, const PicardOptions& options,
                          const std::function<void(int, double)>& sink)
{
    control.validate();
    PicardResult result;
    const DepthVerdict verdict = check_depth_condition(compute_depth(U0, bathy, params), params);
    if (!verdict) {
        result.status = RunStatus::blowup_depth;
        result.message = DepthConditionError(verdict.min_value, verdict.location, params.h0).what();
        return result;
    }
    const int steps = options.steps > 0 ? options.steps : linear_step_count(U0, control, bathy, params, grid);
    State start = U0;
    start.time = 0.0;
    result.iterates.push_back(ReferenceTrajectory::constant(start, 0.0, control.t_end, steps));

    LinearOptions lin;
    lin.steps = steps;
    lin.s = options.s;
    lin.dealias = options.dealias;
    for (int it = 1; it <= options.max_iters; ++it) {
        LinearSolution next = solve_linear(result.iterates.back(), start, control, bathy, params, grid, lin);
        if (next.status != RunStatus::completed) {
            result.status = next.status;
            result.message = "iteration " + std::to_string(it) + ": " + next.message;
            return result;
        }
        double gap = 0.0;
        try {
            gap = trajectory_gap(result.iterates.back(), next.trajectory, options.s, bathy, params, grid);
        } catch (const FactorizationError& e) {
            result.status = RunStatus::solver_failure;
            result.message = e.what();
            return result;
        }
        result.gaps.push_back(gap);
        result.iterates.push_back(std::move(next.trajectory));
        if (sink)
            sink(it, gap);
        if (gap <= options.tol) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged)
        result.message = "no convergence within " + std::to_string(options.max_iters) + " iterations";
    return result;
}

double envelope_value(const EnvelopeFit& fit, double e0, double t, double epsilon)
{
    const double x = epsilon * fit.lambda * t;
    if (fit.lambda == 0.0)
        return e0 + epsilon * fit.forcing * t;
    return std::exp(x) * e0 + fit.forcing * std::expm1(x) / fit.lambda;
}

EnvelopeFit fit_energy_envelope(const std::vector<double>& times, const std::vector<double>& energy,
                                const std::vector<double>& forcing, double epsilon)
{
    if (times.size() != energy.size() || times.empty())
        throw std::invalid_argument("fit_energy_envelope: times and energies must be nonempty and aligned");
    EnvelopeFit fit;
    for (double c : forcing)
        fit.forcing = std::max(fit.forcing, c);
    const double e0 = energy.front();
    auto holds = [&](double lambda) {
        EnvelopeFit trial{lambda, fit.forcing};
        for (std::size_t j = 1; j < times.size(); ++j)
            if (energy[j] > envelope_value(trial, e0, times[j] - times.front(), epsilon))
                return false;
        return true;
    };
    double lo = -1.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && !holds(hi); ++i)
        hi *= 2.0;
    for (int i = 0; i < 200 && holds(lo); ++i)
        lo *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    fit.lambda = hi;
    return fit;
}

}  // namespace gn1d
