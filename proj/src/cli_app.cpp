#include "gn1d/cli_app.hpp"

#include "gn1d/grid_ops.hpp"
#include "gn1d/linearized.hpp"
#include "gn1d/scenarios.hpp"
#include "gn1d/time_integrator.hpp"
#include "gn1d/verification.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace gn1d {

std::string_view to_string(RunMode mode)
{
    switch (mode) {
    case RunMode::nonlinear: return "nonlinear";
    case RunMode::linearized: return "linearized";
    case RunMode::picard: return "picard";
    case RunMode::verify: return "verify";
    }
    return "unknown";
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string number(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view v, int line, std::string_view key)
{
    double out = 0.0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(line, "'" + std::string(key) + "' expects a finite number, got '" + std::string(v) + "'");
    return out;
}

template <typename Int>
Int parse_int(std::string_view v, int line, std::string_view key)
{
    Int out = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size())
        throw ConfigError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
    return out;
}

bool parse_bool(std::string_view v, int line, std::string_view key)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigError(line, "'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

[[noreturn]] void out_of_range(int line, std::string_view key, const char* bound)
{
    throw ConfigError(line, "'" + std::string(key) + "' out of range, must lie in " + bound);
}

void in_open_closed_unit(double v, int line, std::string_view key)
{
    if (!(v > 0.0 && v <= 1.0))
        out_of_range(line, key, "(0,1]");
}

void positive(double v, int line, std::string_view key)
{
    if (!(v > 0.0))
        out_of_range(line, key, "(0,inf)");
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"scenario",
         [](RunConfig& c, std::string_view v, int line) {
             try {
                 find_scenario(std::string(v));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(line, e.what());
             }
             c.scenario = v;
         }},
        {"bathymetry", [](RunConfig& c, std::string_view v, int) { c.bathymetry = v; }},
        {"n",
         [](RunConfig& c, std::string_view v, int line) {
             if (v == "auto") {
                 c.n.reset();
                 return;
             }
             const int n = parse_int<int>(v, line, "n");
             if (n < 16 || n % 2 != 0)
                 out_of_range(line, "n", "even integers >= 16");
             c.n = n;
         }},
        {"length",
         [](RunConfig& c, std::string_view v, int line) {
             if (v == "auto") {
                 c.length.reset();
                 return;
             }
             c.length = parse_double(v, line, "length");
             positive(*c.length, line, "length");
         }},
        {"epsilon",
         [](RunConfig& c, std::string_view v, int line) {
             c.epsilon = parse_double(v, line, "epsilon");
             in_open_closed_unit(c.epsilon, line, "epsilon");
         }},
        {"mu",
         [](RunConfig& c, std::string_view v, int line) {
             c.mu = parse_double(v, line, "mu");
             in_open_closed_unit(c.mu, line, "mu");
         }},
        {"h0",
         [](RunConfig& c, std::string_view v, int line) {
             if (v == "auto") {
                 c.h0.reset();
                 return;
             }
             const double h0 = parse_double(v, line, "h0");
             positive(h0, line, "h0");
             c.h0 = h0;
         }},
        {"cfl",
         [](RunConfig& c, std::string_view v, int line) {
             c.cfl = parse_double(v, line, "cfl");
             in_open_closed_unit(c.cfl, line, "cfl");
         }},
        {"dt_max",
         [](RunConfig& c, std::string_view v, int line) {
             c.dt_max = parse_double(v, line, "dt_max");
             positive(c.dt_max, line, "dt_max");
         }},
        {"t_end",
         [](RunConfig& c, std::string_view v, int line) {
             if (v == "auto") {
                 c.t_end.reset();
                 return;
             }
             c.t_end = parse_double(v, line, "t_end");
             if (!(*c.t_end >= 0.0))
                 out_of_range(line, "t_end", "[0,inf)");
         }},
        {"snapshot_every",
         [](RunConfig& c, std::string_view v, int line) {
             c.snapshot_every = parse_int<int>(v, line, "snapshot_every");
             if (c.snapshot_every < 0)
                 out_of_range(line, "snapshot_every", "[0,inf)");
         }},
        {"output_dir",
         [](RunConfig& c, std::string_view v, int line) {
             if (v.empty())
                 throw ConfigError(line, "'output_dir' must not be empty");
             c.output_dir = v;
         }},
        {"mode",
         [](RunConfig& c, std::string_view v, int line) {
             for (RunMode m : {RunMode::nonlinear, RunMode::linearized, RunMode::picard, RunMode::verify})
                 if (v == to_string(m)) {
                     c.mode = m;
                     return;
                 }
             throw ConfigError(line, "'mode' must be one of nonlinear, linearized, picard, verify");
         }},
        {"seed", [](RunConfig& c, std::string_view v, int line) { c.seed = parse_int<std::uint64_t>(v, line, "seed"); }},
        {"amplitude", [](RunConfig& c, std::string_view v, int line) { c.amplitude = parse_double(v, line, "amplitude"); }},
        {"center", [](RunConfig& c, std::string_view v, int line) { c.center = parse_double(v, line, "center"); }},
        {"width",
         [](RunConfig& c, std::string_view v, int line) {
             c.width = parse_double(v, line, "width");
             positive(c.width, line, "width");
         }},
        {"bar_height",
         [](RunConfig& c, std::string_view v, int line) { c.bar_height = parse_double(v, line, "bar_height"); }},
        {"bar_width",
         [](RunConfig& c, std::string_view v, int line) {
             c.bar_width = parse_double(v, line, "bar_width");
             positive(c.bar_width, line, "bar_width");
         }},
        {"bar_center",
         [](RunConfig& c, std::string_view v, int line) { c.bar_center = parse_double(v, line, "bar_center"); }},
        {"s",
         [](RunConfig& c, std::string_view v, int line) {
             c.s = parse_double(v, line, "s");
             if (!(c.s >= 0.0 && c.s <= 6.0))
                 out_of_range(line, "s", "[0,6]");
         }},
        {"dealias", [](RunConfig& c, std::string_view v, int line) { c.dealias = parse_bool(v, line, "dealias"); }},
        {"norm_threshold_factor",
         [](RunConfig& c, std::string_view v, int line) {
             c.norm_threshold_factor = parse_double(v, line, "norm_threshold_factor");
             positive(c.norm_threshold_factor, line, "norm_threshold_factor");
         }},
        {"picard_max_iters",
         [](RunConfig& c, std::string_view v, int line) {
             c.picard_max_iters = parse_int<int>(v, line, "picard_max_iters");
             if (c.picard_max_iters < 1)
                 out_of_range(line, "picard_max_iters", "[1,inf)");
         }},
        {"picard_tol",
         [](RunConfig& c, std::string_view v, int line) {
             c.picard_tol = parse_double(v, line, "picard_tol");
             positive(c.picard_tol, line, "picard_tol");
         }},
        {"mollifier_delta",
         [](RunConfig& c, std::string_view v, int line) {
             c.mollifier_delta = parse_double(v, line, "mollifier_delta");
             if (!(c.mollifier_delta >= 0.0))
                 out_of_range(line, "mollifier_delta", "[0,inf)");
         }},
    };
    return table;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::optional<std::string>& scenario_flag)
{
    RunConfig config;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second)
            throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
        it->second(config, value, line_no);
    }
    if (config.scenario.empty() && scenario_flag)
        setters().at("scenario")(config, *scenario_flag, 0);
    if (config.scenario.empty() && config.mode != RunMode::verify)
        throw ConfigError(0, "missing required key 'scenario'");
    return config;
}

std::string dump_config(const RunConfig& c)
{
    std::ostringstream os;
    auto put = [&](const char* key, const std::string& value) { os << key << " = " << value << '\n'; };
    put("scenario", c.scenario);
    if (!c.bathymetry.empty())
        put("bathymetry", c.bathymetry);
    put("n", c.n ? std::to_string(*c.n) : "auto");
    put("length", c.length ? number(*c.length) : "auto");
    put("epsilon", number(c.epsilon));
    put("mu", number(c.mu));
    put("h0", c.h0 ? number(*c.h0) : "auto");
    put("cfl", number(c.cfl));
    put("dt_max", number(c.dt_max));
    put("t_end", c.t_end ? number(*c.t_end) : "auto");
    put("snapshot_every", std::to_string(c.snapshot_every));
    put("output_dir", c.output_dir);
    put("mode", std::string(to_string(c.mode)));
    put("seed", std::to_string(c.seed));
    put("amplitude", number(c.amplitude));
    put("center", number(c.center));
    put("width", number(c.width));
    put("bar_height", number(c.bar_height));
    put("bar_width", number(c.bar_width));
    put("bar_center", number(c.bar_center));
    put("s", number(c.s));
    put("dealias", c.dealias ? "true" : "false");
    put("norm_threshold_factor", number(c.norm_threshold_factor));
    put("picard_max_iters", std::to_string(c.picard_max_iters));
    put("picard_tol", number(c.picard_tol));
    put("mollifier_delta", number(c.mollifier_delta));
    std::string out = os.str();
    if (c.scenario.empty())
        out.erase(0, out.find('\n') + 1);
    return out;
}

namespace {

// a_j cos(k_j x) + b_j sin(k_j x), j = 0..m/2, of the interpolant through the samples
struct TrigSeries {
    Field a;
    Field b;
};

TrigSeries trig_interpolant(const std::vector<double>& xs, const std::vector<double>& bs, double period)
{
    const int m = static_cast<int>(xs.size());
    const int top = m / 2;
    const double k1 = 2.0 * M_PI / period;
    TrigSeries t{Field::Zero(top + 1), Field::Zero(top + 1)};

    const double spacing = period / m;
    bool uniform = true;
    for (int i = 0; i < m && uniform; ++i)
        uniform = std::abs(xs[i] - (xs[0] + i * spacing)) <= 1e-12 * period;

    if (uniform) {
        Field samples(m);
        for (int i = 0; i < m; ++i)
            samples[i] = bs[i];
        const Eigen::VectorXcd c = to_fourier(samples);
        for (int j = 0; j <= top; ++j) {
            const std::complex<double> d = c[j] * std::polar(1.0, -k1 * j * xs[0]);
            if (j == 0) {
                t.a[j] = d.real() / m;
            } else if (2 * j == m) {
                // cos(k (x - x0)) carries the Nyquist content
                t.a[j] = c[j].real() * std::cos(k1 * j * xs[0]) / m;
                t.b[j] = c[j].real() * std::sin(k1 * j * xs[0]) / m;
            } else {
                t.a[j] = 2.0 * d.real() / m;
                t.b[j] = -2.0 * d.imag() / m;
            }
        }
        return t;
    }

    // general abscissae: square collocation system in the same basis
    Eigen::MatrixXd basis(m, m);
    for (int i = 0; i < m; ++i) {
        int col = 0;
        basis(i, col++) = 1.0;
        for (int j = 1; j <= top; ++j) {
            basis(i, col++) = std::cos(k1 * j * xs[i]);
            if (col < m && !(2 * j == m))
                basis(i, col++) = std::sin(k1 * j * xs[i]);
        }
    }
    Field rhs(m);
    for (int i = 0; i < m; ++i)
        rhs[i] = bs[i];
    const Field coef = basis.colPivHouseholderQr().solve(rhs);
    int col = 0;
    t.a[0] = coef[col++];
    for (int j = 1; j <= top; ++j) {
        t.a[j] = coef[col++];
        if (col < m && !(2 * j == m))
            t.b[j] = coef[col++];
    }
    return t;
}

}  // namespace

Bathymetry load_bathymetry(const std::string& path, const Grid& grid)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "cannot open bathymetry file '" + path + "'");
    std::vector<double> xs, bs;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        ++row;
        std::istringstream fields{std::string(t)};
        std::string xs_text, bs_text;
        if (!(fields >> xs_text >> bs_text))
            throw ConfigError(row, "bathymetry row " + std::to_string(row) + " needs two columns");
        const double x = std::strtod(xs_text.c_str(), nullptr);
        const double b = std::strtod(bs_text.c_str(), nullptr);
        if (!std::isfinite(x) || !std::isfinite(b))
            throw ConfigError(row, "bathymetry row " + std::to_string(row) + " has a non-finite entry");
        if (!xs.empty() && !(x > xs.back()))
            throw ConfigError(row, "bathymetry row " + std::to_string(row) + ": x is not strictly increasing");
        xs.push_back(x);
        bs.push_back(b);
    }
    if (xs.size() < 8)
        throw ConfigError(0, "bathymetry file '" + path + "' needs at least 8 rows, has " + std::to_string(xs.size()));
    if (!(xs.back() - xs.front() < grid.length()))
        throw ConfigError(0, "bathymetry abscissae span more than one period of the grid");

    const TrigSeries series = trig_interpolant(xs, bs, grid.length());
    const int n = grid.n();
    Eigen::VectorXcd spectrum = Eigen::VectorXcd::Zero(n / 2 + 1);
    for (int j = 0; j < static_cast<int>(series.a.size()) && j <= n / 2; ++j) {
        if (j == 0)
            spectrum[j] = n * series.a[j];
        else if (2 * j == n)
            spectrum[j] = n * series.a[j];  // sin vanishes on the grid
        else
            spectrum[j] = 0.5 * n * std::complex<double>(series.a[j], -series.b[j]);
    }
    Bathymetry bathy;
    bathy.b = from_fourier(spectrum, n);
    bathy.b_x = d1_spectral(bathy.b, grid);
    bathy.b_xx = d2_spectral(bathy.b, grid);
    return bathy;
}

void emit_timeseries(const std::vector<DiagnosticRecord>& records, const std::string& path)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw OutputError("cannot write '" + path + "'");
    std::fputs("# t energy mass min_h xs_norm es_norm\n", f);
    for (const DiagnosticRecord& r : records)
        std::fprintf(f, "%.17g %.17g %.17g %.17g %.17g %.17g\n", r.t, r.energy, r.mass, r.min_h, r.xs_norm,
                     r.es_norm);
    if (std::fclose(f) != 0)
        throw OutputError("error while writing '" + path + "'");
}

std::vector<DiagnosticRecord> read_timeseries(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw OutputError("cannot read '" + path + "'");
    std::vector<DiagnosticRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream row(line);
        std::string cols[6];
        for (auto& c : cols)
            if (!(row >> c))
                throw OutputError("short row in '" + path + "'");
        DiagnosticRecord r;
        double* dst[] = {&r.t, &r.energy, &r.mass, &r.min_h, &r.xs_norm, &r.es_norm};
        for (int i = 0; i < 6; ++i)
            *dst[i] = std::strtod(cols[i].c_str(), nullptr);
        out.push_back(r);
    }
    return out;
}

void emit_snapshot(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                   const std::string& path)
{
    const DepthField depth = compute_depth(state, bathy, params);
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f)
        throw OutputError("cannot write '" + path + "'");
    std::fputs("# x zeta u b h\n", f);
    for (int i = 0; i < grid.n(); ++i)
        std::fprintf(f, "%.17g %.17g %.17g %.17g %.17g\n", grid.x(i), state.zeta[i], state.u[i], bathy.b[i],
                     depth.h[i]);
    if (std::fclose(f) != 0)
        throw OutputError("error while writing '" + path + "'");
}

std::string snapshot_name(int step)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%06d.dat", step);
    return buf;
}

namespace {

struct Setup {
    Grid grid;
    Parameters params;
    State initial;
    Bathymetry bathy;
    StepControl control;
};

Setup prepare(const RunConfig& config)
{
    const Scenario& scenario = find_scenario(config.scenario);
    const Grid grid(config.n.value_or(scenario.recommended_n), config.length.value_or(scenario.recommended_length));
    Parameters params{config.epsilon, config.mu, 0.5};
    ScenarioSettings settings;
    settings.amplitude = config.amplitude;
    settings.center = config.center;
    settings.width = config.width;
    settings.bar_height = config.bar_height;
    settings.bar_width = config.bar_width;
    settings.bar_center = config.bar_center;
    auto [state, bathy] = scenario.build(settings, params, grid);
    if (!config.bathymetry.empty())
        bathy = load_bathymetry(config.bathymetry, grid);
    params.h0 = config.h0 ? *config.h0 : 0.5 * compute_depth(state, bathy, params).h.minCoeff();
    if (!(params.h0 > 0.0))
        throw ConfigError(0, "initial depth is not positive; set h0 explicitly or change the scenario");
    params.validate();
    const StepControl control{config.cfl, config.dt_max, config.t_end.value_or(scenario.recommended_t_end)};
    control.validate();
    if (config.mode != RunMode::nonlinear && !(control.t_end > 0.0))
        throw ConfigError(0, std::string(to_string(config.mode)) + " mode needs t_end > 0");
    return {grid, params, std::move(state), std::move(bathy), control};
}

std::string path_in(const RunConfig& config, const std::string& name)
{
    return (std::filesystem::path(config.output_dir) / name).string();
}

int status_code(RunStatus status)
{
    return status == RunStatus::completed ? exit_ok : exit_blowup;
}

// Records and snapshots for a stored trajectory, each measured against its own
// reference symmetrizer when one is given.
std::vector<DiagnosticRecord> write_trajectory(const RunConfig& config, const Setup& s,
                                               const ReferenceTrajectory& traj, const ReferenceTrajectory* reference)
{
    std::vector<DiagnosticRecord> records;
    const std::size_t last = traj.size() - 1;
    for (std::size_t j = 0; j <= last; ++j) {
        const bool emit = j == last || (config.snapshot_every > 0 && j % config.snapshot_every == 0) || j == 0;
        if (!emit)
            continue;
        DiagnosticRecord rec = make_record(traj[j], s.bathy, s.params, s.grid, config.s);
        if (reference)
            rec.es_norm = es_norm(traj[j], config.s, (*reference)[j], s.bathy, s.params, s.grid);
        records.push_back(rec);
        emit_snapshot(traj[j], s.bathy, s.params, s.grid, path_in(config, snapshot_name(static_cast<int>(j))));
    }
    emit_timeseries(records, path_in(config, "timeseries.dat"));
    return records;
}

int run_nonlinear(const RunConfig& config, const Setup& s, std::ostream& log)
{
    std::vector<DiagnosticRecord> records;
    RunOptions options;
    options.s = config.s;
    options.norm_threshold_factor = config.norm_threshold_factor;
    options.snapshot_every = config.snapshot_every;
    options.rhs.dealias = config.dealias;
    RunSinks sinks;
    sinks.record = [&](const DiagnosticRecord& r) { records.push_back(r); };
    sinks.snapshot = [&](int step, const State& state) {
        emit_snapshot(state, s.bathy, s.params, s.grid, path_in(config, snapshot_name(step)));
    };
    const RunOutcome out =
        run(s.initial, s.control, s.bathy, s.params, s.grid, options, sinks);
    emit_timeseries(records, path_in(config, "timeseries.dat"));
    log << "status " << to_string(out.status) << ", t = " << out.final_state.time << ", steps " << out.steps
        << ", min h " << out.min_h << '\n';
    if (!out.message.empty())
        log << out.message << '\n';
    if (records.size() >= 2) {
        const double e0 = records.front().energy;
        log << "relative energy drift " << (records.back().energy - e0) / e0 << '\n';
    }
    return status_code(out.status);
}

int run_linearized(const RunConfig& config, const Setup& s, std::ostream& log)
{
    const StepControl& control = s.control;
    const int steps = linear_step_count(s.initial, control, s.bathy, s.params, s.grid);
    RhsOptions rhs;
    rhs.dealias = config.dealias;
    ReferenceTrajectory reference;
    try {
        reference = nonlinear_reference(s.initial, control.t_end, steps, s.bathy, s.params, s.grid, rhs);
    } catch (const std::runtime_error& e) {
        log << "reference trajectory failed: " << e.what() << '\n';
        return exit_blowup;
    }
    std::optional<Mollifier> mollifier;
    if (config.mollifier_delta > 0.0)
        mollifier = make_mollifier(config.mollifier_delta, s.grid);
    LinearOptions options;
    options.steps = steps;
    options.s = config.s;
    options.norm_threshold_factor = config.norm_threshold_factor;
    options.dealias = config.dealias;
    options.mollifier = mollifier ? &*mollifier : nullptr;
    const LinearSolution sol = solve_linear(reference, s.initial, control, s.bathy, s.params, s.grid, options);
    const auto records = write_trajectory(config, s, sol.trajectory, &reference);

    std::vector<double> times, energy, forcing;
    for (std::size_t j = 0; j < sol.trajectory.size(); ++j) {
        const FrozenCoefficients frozen = freeze(reference[j], s.bathy, s.params, s.grid);
        const Tendency b = eval_B(frozen);
        times.push_back(sol.trajectory.time(j));
        energy.push_back(es_norm(sol.trajectory[j], config.s, frozen.op));
        forcing.push_back(es_norm(State{b.dzeta, b.du, 0.0}, config.s, frozen.op) / s.params.epsilon);
    }
    const EnvelopeFit fit = fit_energy_envelope(times, energy, forcing, s.params.epsilon);
    log << "status " << to_string(sol.status) << ", steps " << steps << ", envelope lambda " << fit.lambda << ", C "
        << fit.forcing << '\n';
    if (!sol.message.empty())
        log << sol.message << '\n';
    return status_code(sol.status);
}

int run_picard(const RunConfig& config, const Setup& s, std::ostream& log)
{
    std::FILE* gaps = std::fopen(path_in(config, "picard.dat").c_str(), "w");
    if (!gaps)
        throw OutputError("cannot write '" + path_in(config, "picard.dat") + "'");
    std::fputs("# iteration gap\n", gaps);
    PicardOptions options;
    options.max_iters = config.picard_max_iters;
    options.tol = config.picard_tol;
    options.s = config.s;
    options.dealias = config.dealias;
    const PicardResult result = picard_solve(s.initial, s.control, s.bathy,
                                             s.params, s.grid, options, [&](int it, double gap) {
                                                 std::fprintf(gaps, "%d %.17g\n", it, gap);
                                                 log << "iteration " << it << " gap " << gap << '\n';
                                             });
    std::fclose(gaps);
    if (!result.iterates.empty())
        write_trajectory(config, s, result.final(), nullptr);
    log << "status " << to_string(result.status) << (result.converged ? ", converged" : ", not converged") << '\n';
    if (!result.message.empty())
        log << result.message << '\n';
    return status_code(result.status);
}

}  // namespace

int run_config(const RunConfig& config, std::ostream& log)
{
    if (config.mode == RunMode::verify)
        return verify_suite(config, log);
    Setup setup = [&] {
        try {
            return prepare(config);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(0, e.what());
        }
    }();
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw OutputError("cannot create output directory '" + config.output_dir + "': " + ec.message());
    log << "gn1d " << to_string(config.mode) << ": scenario " << config.scenario << ", n " << setup.grid.n() << ", L "
        << setup.grid.length() << ", t_end " << setup.control.t_end << ", eps "
        << setup.params.epsilon << ", mu " << setup.params.mu << ", h0 " << setup.params.h0 << '\n';
    switch (config.mode) {
    case RunMode::nonlinear: return run_nonlinear(config, setup, log);
    case RunMode::linearized: return run_linearized(config, setup, log);
    case RunMode::picard: return run_picard(config, setup, log);
    case RunMode::verify: break;
    }
    return exit_ok;
}

int verify_suite(const RunConfig& config, std::ostream& log, bool break_depth)
{
    VerifyOptions options;
    options.seed = config.seed;
    options.break_depth = break_depth;
    const auto results = run_verification(options, [&](const CheckResult& r) {
        print_check(log, r);
        log.flush();
    });
    bool ok = true;
    for (const CheckResult& r : results)
        ok = ok && r.passed;
    log << (ok ? "all checks passed" : "verification failed") << '\n';
    if (!config.output_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        std::ofstream report(path_in(config, "verify.txt"));
        if (!report)
            throw OutputError("cannot write '" + path_in(config, "verify.txt") + "'");
        print_report(report, results);
    }
    return ok ? exit_ok : exit_verification;
}

}  // namespace gn1d
