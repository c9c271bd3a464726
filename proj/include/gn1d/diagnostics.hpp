#pragma once

#include "gn1d/core_types.hpp"
#include "gn1d/t_operator.hpp"

#include <vector>

namespace gn1d {

struct DiagnosticRecord {
    double t = 0.0;
    double energy = 0.0;
    double mass = 0.0;
    double min_h = 0.0;
    double xs_norm = 0.0;
    double es_norm = 0.0;
};

/// |zeta|^2 + (h u, u) + mu (h T1 u, T1 u) + mu (h T2 u, T2 u), i.e. |zeta|^2 + (T u, u).
double conserved_energy(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid);

/// |U|_{X^s} = (|zeta|_{H^s}^2 + |u|_{H^s}^2 + mu |u_x|_{H^s}^2)^{1/2}, spectral derivative.
double xs_norm(const State& state, double s, const Parameters& params, const Grid& grid);

/// E^s(U) = (|Lambda^s zeta|^2 + (T(hbar) Lambda^s u, Lambda^s u))^{1/2}; `symmetrizer` is T(hbar).
double es_norm(const State& state, double s, const TOperator& symmetrizer);

/// Same, assembling the symmetrizer from ubar.
double es_norm(const State& state, double s, const State& ubar, const Bathymetry& bathy, const Parameters& params,
               const Grid& grid);

struct EquivalenceReport {
    double max_upper_ratio = 0.0;  // max E^s / |.|_{X^s}
    double max_lower_ratio = 0.0;  // max |.|_{X^s} / E^s
};

EquivalenceReport equivalence_report(const std::vector<State>& samples, double s, const TOperator& symmetrizer);

/// dx * sum zeta
double mass(const State& state, const Grid& grid);

/// Energy, mass, min depth and both norms with U as its own reference.
DiagnosticRecord make_record(const State& state, const Bathymetry& bathy, const Parameters& params, const Grid& grid,
                             double s);

}  // namespace gn1d
