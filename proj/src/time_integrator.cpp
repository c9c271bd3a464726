#include "gn1d/time_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gn1d {

void StepControl::validate() const
{
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(dt_max > 0.0))
        throw std::invalid_argument("dt_max must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw std::invalid_argument("t_end must be finite and nonnegative");
}

std::string_view to_string(RunStatus status)
{
    switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_norm: return "blowup_norm";
    case RunStatus::blowup_depth: return "blowup_depth";
    case RunStatus::solver_failure: return "solver_failure";
    }
    return "unknown";
}

double cfl_dt(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
              const StepControl& control)
{
    const DepthField depth = compute_depth(state, bathy, params);
    const double speed =
        (params.epsilon * state.u.cwiseAbs().array() + depth.h.cwiseMax(0.0).cwiseSqrt().array()).maxCoeff();
    if (!(speed > 0.0))
        return control.dt_max;
    return std::min(control.dt_max, control.cfl * grid.dx() / speed);
}

namespace {

State advance(const State& s, double dt, const Tendency& k)
{
    return {s.zeta + dt * k.dzeta, s.u + dt * k.du, s.time + dt};
}

}  // namespace

State rk4_step(const State& state, double dt, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
               const RhsOptions& options)
{
    const Tendency k1 = nonlinear_rhs(state, bathy, params, grid, options);
    const Tendency k2 = nonlinear_rhs(advance(state, 0.5 * dt, k1), bathy, params, grid, options);
    const Tendency k3 = nonlinear_rhs(advance(state, 0.5 * dt, k2), bathy, params, grid, options);
    const Tendency k4 = nonlinear_rhs(advance(state, dt, k3), bathy, params, grid, options);
    State next;
    next.zeta = state.zeta + (dt / 6.0) * (k1.dzeta + 2.0 * k2.dzeta + 2.0 * k3.dzeta + k4.dzeta);
    next.u = state.u + (dt / 6.0) * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
    next.time = state.time + dt;
    return next;
}

RunOutcome run(const State& initial, const StepControl& control, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid, const RunOptions& options, const RunSinks& sinks)
{
    control.validate();
    RunOutcome out;
    out.final_state = initial;

    auto emit = [&](int step, const State& s) {
        const DiagnosticRecord rec = make_record(s, bathy, params, grid, options.s);
        out.history.push_back(rec);
        if (sinks.record)
            sinks.record(rec);
        if (sinks.snapshot)
            sinks.snapshot(step, s);
    };

    const DepthVerdict initial_depth = check_depth_condition(compute_depth(initial, bathy, params), params);
    out.min_h = initial_depth.min_value;
    if (!initial_depth) {
        out.status = RunStatus::blowup_depth;
        out.message = DepthConditionError(initial_depth.min_value, initial_depth.location, params.h0).what();
        return out;
    }
    if (!initial.all_finite()) {
        out.status = RunStatus::blowup_norm;
        out.message = "initial state is not finite";
        return out;
    }

    const double initial_norm = xs_norm(initial, options.s, params, grid);
    const double threshold = options.norm_threshold.value_or(options.norm_threshold_factor * initial_norm);
    emit(0, initial);
    if (initial_norm > threshold) {
        out.status = RunStatus::blowup_norm;
        out.message = "X^s norm above threshold at t = 0";
        return out;
    }

    const double t_stop = control.t_end;
    const double t_tol = 1e-12 * std::max(1.0, std::abs(t_stop));
    State current = initial;
    int step = 0;
    bool last_emitted = true;
    while (current.time < t_stop - t_tol) {
        double dt = cfl_dt(current, bathy, params, grid, control);
        if (current.time + dt > t_stop - t_tol)
            dt = t_stop - current.time;

        State next;
        try {
            next = rk4_step(current, dt, bathy, params, grid, options.rhs);
        } catch (const DepthConditionError& e) {
            out.status = RunStatus::blowup_depth;
            out.message = e.what();
            break;
        } catch (const FactorizationError& e) {
            out.status = RunStatus::solver_failure;
            out.message = e.what();
            break;
        } catch (const NonFiniteError& e) {
            out.status = RunStatus::blowup_norm;
            out.message = e.what();
            break;
        }
        if (std::abs(next.time - t_stop) <= t_tol)
            next.time = t_stop;

        ++step;
        current = std::move(next);
        out.final_state = current;
        out.steps = step;
        last_emitted = false;

        const DepthVerdict depth = check_depth_condition(compute_depth(current, bathy, params), params);
        out.min_h = std::min(out.min_h, depth.min_value);
        if (!depth) {
            out.status = RunStatus::blowup_depth;
            out.message = DepthConditionError(depth.min_value, depth.location, params.h0).what();
            break;
        }
        const double norm = xs_norm(current, options.s, params, grid);
        if (!(norm <= threshold)) {
            out.status = RunStatus::blowup_norm;
            out.message = "X^s norm exceeded the blow-up threshold";
            break;
        }
        if (options.snapshot_every > 0 && step % options.snapshot_every == 0) {
            emit(step, current);
            last_emitted = true;
        }
    }
    if (!last_emitted && out.final_state.all_finite() && out.status != RunStatus::blowup_depth)
        emit(step, out.final_state);
    return out;
}

}  // namespace gn1d
