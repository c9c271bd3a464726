#pragma once

#include "gn1d/core_types.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gn1d {

/// The periodic domain is too short for a localized profile: its tail at the seam
/// exceeds the tolerance.
class DomainTooShortError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Amplitude below which profile tails at the periodic seam count as negligible.
inline constexpr double seam_tolerance = 1e-12;

double solitary_speed(double amplitude, const Parameters& params);
double solitary_kappa(double amplitude, const Parameters& params);

/// Classical Serre solitary wave on a flat bottom:
///   zeta = a sech^2(kappa (x - x0)),  kappa = sqrt(3 eps a / (4 mu (1 + eps a))),
///   u = c zeta / (1 + eps zeta),      c = sqrt(1 + eps a).
State solitary_wave(double amplitude, const Parameters& params, const Grid& grid, double x0);

/// zeta = a exp(-((x - x0) / width)^2), u = 0.
State gaussian_hump(double amplitude, double width, double x0, const Grid& grid);

/// Submerged bar b = height exp(-((x - x0) / width)^2) with analytic derivatives.
Bathymetry bar_bathymetry(double height, double width, double x0, const Grid& grid);

struct ScenarioSettings {
    double amplitude = 0.2;
    double center = -1.0;  // negative: middle of the domain
    double width = 2.0;
    double bar_height = 0.5;
    double bar_width = 2.0;
    double bar_center = -1.0;
};

struct Scenario {
    std::string name;
    std::string description;
    int recommended_n = 256;
    double recommended_length = 64.0;
    double recommended_t_end = 10.0;
    std::function<std::pair<State, Bathymetry>(const ScenarioSettings&, const Parameters&, const Grid&)> build;
};

const std::vector<Scenario>& scenario_catalog();

/// Throws std::invalid_argument for an unknown name.
const Scenario& find_scenario(const std::string& name);

/// Builds the scenario and checks that its initial state satisfies the depth floor.
std::pair<State, Bathymetry> build_scenario(const Scenario& scenario, const ScenarioSettings& settings,
                                            const Parameters& params, const Grid& grid);

}  // namespace gn1d
