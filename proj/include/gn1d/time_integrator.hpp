#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/diagnostics.hpp"
#include "gn1d/gn_rhs.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gn1d {

struct StepControl {
    double cfl = 0.5;
    double dt_max = 0.1;
    double t_end = 1.0;

    void validate() const;
};

enum class RunStatus { completed, blowup_norm, blowup_depth, solver_failure };

std::string_view to_string(RunStatus status);

struct RunOutcome {
    RunStatus status = RunStatus::completed;
    State final_state;
    std::vector<DiagnosticRecord> history;
    double min_h = 0.0;  // minimum depth over the initial state and every accepted step
    int steps = 0;
    std::string message;
};

struct RunOptions {
    double s = 2.0;                            // index of the X^s / E^s diagnostics
    double norm_threshold_factor = 1e3;        // X^s blow-up threshold relative to the initial norm
    std::optional<double> norm_threshold;      // absolute threshold, overrides the factor
    int snapshot_every = 10;                   // steps between emitted records; 0 = first and last only
    RhsOptions rhs;
};

struct RunSinks {
    std::function<void(const DiagnosticRecord&)> record;
    std::function<void(int step, const State&)> snapshot;
};

/// dt = min(dt_max, cfl dx / max_i(eps |u_i| + sqrt(h_i)))
double cfl_dt(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
              const StepControl& control);

/// One classical RK4 step of the direct form; the operator is reassembled at every stage.
/// Stage failures propagate as DepthConditionError / FactorizationError / NonFiniteError.
State rk4_step(const State& state, double dt, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
               const RhsOptions& options = {});

/// Steps from `initial` to control.t_end, stopping early when a blow-up monitor trips.
RunOutcome run(const State& initial, const StepControl& control, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid, const RunOptions& options = {}, const RunSinks& sinks = {});

}  // namespace gn1d
