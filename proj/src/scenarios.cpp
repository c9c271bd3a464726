#include "gn1d/scenarios.hpp"

#include <cmath>
#include <sstream>

namespace gn1d {

double solitary_speed(double amplitude, const Parameters& params)
{
    return std::sqrt(1.0 + params.epsilon * amplitude);
}

double solitary_kappa(double amplitude, const Parameters& params)
{
    const double ea = params.epsilon * amplitude;
    return std::sqrt(3.0 * ea / (4.0 * params.mu * (1.0 + ea)));
}

State solitary_wave(double amplitude, const Parameters& params, const Grid& grid, double x0)
{
    if (amplitude < 0.0)
        throw std::invalid_argument("solitary_wave: amplitude must be nonnegative");
    const double kappa = solitary_kappa(amplitude, params);
    const double c = solitary_speed(amplitude, params);
    const double seam = amplitude / std::pow(std::cosh(0.5 * kappa * grid.length()), 2);
    if (seam > seam_tolerance) {
        std::ostringstream os;
        os << "solitary_wave: tail " << seam << " at the periodic seam exceeds " << seam_tolerance
           << "; lengthen the domain";
        throw DomainTooShortError(os.str());
    }
    State s = State::rest(grid);
    for (int i = 0; i < grid.n(); ++i) {
        const double sech = 1.0 / std::cosh(kappa * grid.periodic_offset(i, x0));
        s.zeta[i] = amplitude * sech * sech;
        s.u[i] = c * s.zeta[i] / (1.0 + params.epsilon * s.zeta[i]);
    }
    return s;
}

namespace {

void check_gaussian_seam(double amplitude, double width, const Grid& grid, const char* what)
{
    const double r = 0.5 * grid.length() / width;
    const double seam = std::abs(amplitude) * std::exp(-r * r);
    if (seam > seam_tolerance) {
        std::ostringstream os;
        os << what << ": tail " << seam << " at the periodic seam exceeds " << seam_tolerance;
        throw DomainTooShortError(os.str());
    }
}

}  // namespace

State gaussian_hump(double amplitude, double width, double x0, const Grid& grid)
{
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian_hump: width must be positive");
    check_gaussian_seam(amplitude, width, grid, "gaussian_hump");
    State s = State::rest(grid);
    for (int i = 0; i < grid.n(); ++i) {
        const double d = grid.periodic_offset(i, x0) / width;
        s.zeta[i] = amplitude * std::exp(-d * d);
    }
    return s;
}

Bathymetry bar_bathymetry(double height, double width, double x0, const Grid& grid)
{
    if (!(width > 0.0))
        throw std::invalid_argument("bar_bathymetry: width must be positive");
    check_gaussian_seam(height, width, grid, "bar_bathymetry");
    Bathymetry bathy = Bathymetry::flat(grid);
    const double w2 = width * width;
    for (int i = 0; i < grid.n(); ++i) {
        const double d = grid.periodic_offset(i, x0);
        const double g = height * std::exp(-d * d / w2);
        bathy.b[i] = g;
        bathy.b_x[i] = -2.0 * d / w2 * g;
        bathy.b_xx[i] = (4.0 * d * d / (w2 * w2) - 2.0 / w2) * g;
    }
    return bathy;
}

namespace {

double resolve_center(double c, const Grid& grid)
{
    return c < 0.0 ? 0.5 * grid.length() : c;
}

std::vector<Scenario> make_catalog()
{
    std::vector<Scenario> list;
    list.push_back({"solitary", "Serre solitary wave over a flat bottom", 512, 128.0, 20.0,
                    [](const ScenarioSettings& s, const Parameters& p, const Grid& g) {
                        return std::make_pair(solitary_wave(s.amplitude, p, g, resolve_center(s.center, g)),
                                              Bathymetry::flat(g));
                    }});
    list.push_back({"hump", "Gaussian surface hump released from rest over a flat bottom", 256, 64.0, 10.0,
                    [](const ScenarioSettings& s, const Parameters&, const Grid& g) {
                        return std::make_pair(gaussian_hump(s.amplitude, s.width, resolve_center(s.center, g), g),
                                              Bathymetry::flat(g));
                    }});
    list.push_back({"lake_at_rest", "Still water over a submerged bar", 256, 64.0, 10.0,
                    [](const ScenarioSettings& s, const Parameters&, const Grid& g) {
                        return std::make_pair(
                            State::rest(g),
                            bar_bathymetry(s.bar_height, s.bar_width, resolve_center(s.bar_center, g), g));
                    }});
    list.push_back({"hump_over_bar", "Gaussian hump released from rest over a submerged bar", 256, 64.0, 10.0,
                    [](const ScenarioSettings& s, const Parameters&, const Grid& g) {
                        const double bar_x = resolve_center(s.bar_center, g);
                        const double hump_x = s.center < 0.0 ? 0.25 * g.length() : s.center;
                        return std::make_pair(gaussian_hump(s.amplitude, s.width, hump_x, g),
                                              bar_bathymetry(s.bar_height, s.bar_width, bar_x, g));
                    }});
    list.push_back({"solitary_over_bar", "Solitary wave running onto a submerged bar", 768, 192.0, 30.0,
                    [](const ScenarioSettings& s, const Parameters& p, const Grid& g) {
                        const double bar_x = resolve_center(s.bar_center, g);
                        const double wave_x = s.center < 0.0 ? 0.25 * g.length() : s.center;
                        return std::make_pair(solitary_wave(s.amplitude, p, g, wave_x),
                                              bar_bathymetry(s.bar_height, s.bar_width, bar_x, g));
                    }});
    return list;
}

}  // namespace

const std::vector<Scenario>& scenario_catalog()
{
    static const std::vector<Scenario> catalog = make_catalog();
    return catalog;
}

const Scenario& find_scenario(const std::string& name)
{
    for (const Scenario& s : scenario_catalog())
        if (s.name == name)
            return s;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::pair<State, Bathymetry> build_scenario(const Scenario& scenario, const ScenarioSettings& settings,
                                            const Parameters& params, const Grid& grid)
{
    auto built = scenario.build(settings, params, grid);
    const DepthVerdict verdict = check_depth_condition(compute_depth(built.first, built.second, params), params);
    if (!verdict)
        throw DepthConditionError(verdict.min_value, verdict.location, params.h0);
    return built;
}

}  // namespace gn1d
