#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/diagnostics.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gn1d {

enum ExitCode : int { exit_ok = 0, exit_blowup = 1, exit_config = 2, exit_verification = 3 };

enum class RunMode { nonlinear, linearized, picard, verify };

std::string_view to_string(RunMode mode);

struct RunConfig {
    std::string scenario;
    std::string bathymetry;  // optional file replacing the scenario's bottom
    // grid size, domain length and end time: unset means the scenario's recommended value
    std::optional<int> n;
    std::optional<double> length;
    double epsilon = 0.1;
    double mu = 0.1;
    std::optional<double> h0;  // unset: half the initial minimum depth
    double cfl = 0.5;
    double dt_max = 0.1;
    std::optional<double> t_end;
    int snapshot_every = 10;
    std::string output_dir = "out";
    RunMode mode = RunMode::nonlinear;
    std::uint64_t seed = 1;

    // scenario shape
    double amplitude = 0.2;
    double center = -1.0;
    double width = 2.0;
    double bar_height = 0.5;
    double bar_width = 2.0;
    double bar_center = -1.0;

    // numerics
    double s = 2.0;
    bool dealias = false;
    double norm_threshold_factor = 1e3;
    int picard_max_iters = 12;
    double picard_tol = 1e-10;
    double mollifier_delta = 0.0;  // linearized mode; 0 disables

    bool operator==(const RunConfig&) const = default;
};

/// Malformed configuration; line() is 1-based, 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// `key = value` lines, `#` starts a comment. `scenario_flag` fills the scenario key
/// when the text does not set it.
RunConfig parse_config(std::string_view text, const std::optional<std::string>& scenario_flag = {});

/// Every key, one per line, numbers in shortest round-trip form; parses back to the same config.
std::string dump_config(const RunConfig& config);

/// Two-column `x b(x)` file covering one period of the grid, resampled by trigonometric
/// interpolation. Derivatives are spectral.
Bathymetry load_bathymetry(const std::string& path, const Grid& grid);

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit_timeseries(const std::vector<DiagnosticRecord>& records, const std::string& path);
std::vector<DiagnosticRecord> read_timeseries(const std::string& path);

void emit_snapshot(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                   const std::string& path);
std::string snapshot_name(int step);

/// Runs the configured mode, writing into config.output_dir, and returns the exit code.
int run_config(const RunConfig& config, std::ostream& log);

/// Property suite with the config's seed; writes verify.txt into output_dir when it is set.
int verify_suite(const RunConfig& config, std::ostream& log, bool break_depth = false);

}  // namespace gn1d
