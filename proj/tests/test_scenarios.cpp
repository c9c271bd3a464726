#include "gn1d/gn_rhs.hpp"
#include "gn1d/scenarios.hpp"
#include "gn1d/time_integrator.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace gn1d;

namespace {

// |rhs + c d/dx(profile)| for the travelling wave: zero for an exact solution
double solitary_residual(int n)
{
    const Grid g(n, 64.0);
    const Parameters p{0.2, 0.5, 0.5};
    const State s = solitary_wave(1.0, p, g, 32.0);
    const Tendency t = nonlinear_rhs(s, Bathymetry::flat(g), p, g);
    const double c = solitary_speed(1.0, p);
    return std::max(test::max_abs(t.dzeta + c * d1_spectral(s.zeta, g)), test::max_abs(t.du + c * d1_spectral(s.u, g)));
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("zero amplitude is rest")
{
    const Grid g(64, 32.0);
    const Parameters p{0.2, 0.5, 0.5};
    const State s = solitary_wave(0.0, p, g, 16.0);
    CHECK(test::max_abs(s.zeta) == 0.0);
    CHECK(test::max_abs(s.u) == 0.0);
    CHECK(solitary_speed(0.0, p) == 1.0);
}

TEST_CASE("solitary speed and peak depth")
{
    const Parameters p{0.21, 0.5, 0.5};
    CHECK(solitary_speed(1.0, p) == doctest::Approx(1.1).epsilon(1e-15));
    const Grid g(512, 64.0);
    const State s = solitary_wave(1.0, Parameters{0.2, 0.5, 0.5}, g, 32.0);
    const DepthField d = compute_depth(s, Bathymetry::flat(g), Parameters{0.2, 0.5, 0.5});
    CHECK(d.h.maxCoeff() == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("solitary wave residual converges at fourth order")
{
    const double r1 = solitary_residual(256), r2 = solitary_residual(512);
    CHECK(std::log2(r1 / r2) >= 3.5);
}

TEST_CASE("bar and hump shapes")
{
    const Grid g(128, 32.0);
    const Bathymetry b0 = bar_bathymetry(0.0, 2.0, 16.0, g);
    CHECK(b0.is_flat());
    const Bathymetry b = bar_bathymetry(0.4, 2.0, 16.0, g);
    CHECK(b.b.maxCoeff() == doctest::Approx(0.4));
    CHECK(test::max_abs(b.b_x - d1_spectral(b.b, g)) <= 1e-10);
    const State h = gaussian_hump(0.3, 2.0, 16.0, g);
    CHECK(h.zeta.maxCoeff() == doctest::Approx(0.3));
    CHECK(test::max_abs(h.u) == 0.0);
    CHECK_THROWS_AS(bar_bathymetry(0.4, 20.0, 16.0, g), DomainTooShortError);
}

TEST_CASE("every catalog scenario satisfies the depth floor")
{
    for (const Scenario& sc : scenario_catalog()) {
        CAPTURE(sc.name);
        const Grid g(sc.recommended_n, sc.recommended_length);
        const Parameters p{0.1, 0.1, 0.5};
        CHECK_NOTHROW(build_scenario(sc, ScenarioSettings{}, p, g));
    }
    CHECK_THROWS_AS(find_scenario("nope"), std::invalid_argument);
}

TEST_CASE("rest over the bar is an equilibrium")
{
    const Scenario& sc = find_scenario("lake_at_rest");
    const Grid g(sc.recommended_n, sc.recommended_length);
    const Parameters p{0.3, 0.3, 0.5};
    auto [s, b] = build_scenario(sc, ScenarioSettings{}, p, g);
    const RunOutcome out = run(s, StepControl{0.5, 0.1, 5.0}, b, p, g);
    CHECK(out.status == RunStatus::completed);
    CHECK(test::max_abs(out.final_state.zeta - s.zeta) <= 1e-13);
    CHECK(test::max_abs(out.final_state.u) <= 1e-13);
}

TEST_CASE("a hump splits into mirror-image waves")
{
    const Grid g(256, 64.0);
    const Parameters p{0.2, 0.3, 0.5};
    const double x0 = 32.0;
    const RunOutcome out = run(gaussian_hump(0.3, 2.0, x0, g), StepControl{0.5, 0.1, 6.0}, Bathymetry::flat(g), p, g);
    REQUIRE(out.status == RunStatus::completed);
    const Field& z = out.final_state.zeta;
    const Field& u = out.final_state.u;
    const int c = g.n() / 2;  // grid index of x0
    double zeta_asym = 0.0, u_sym = 0.0, left = 0.0, right = 0.0;
    for (int j = 1; j < c; ++j) {
        zeta_asym = std::max(zeta_asym, std::abs(z[c + j] - z[c - j]));
        u_sym = std::max(u_sym, std::abs(u[c + j] + u[c - j]));
        right += z[c + j] * z[c + j] + u[c + j] * u[c + j];
        left += z[c - j] * z[c - j] + u[c - j] * u[c - j];
    }
    CHECK(zeta_asym <= 1e-12);
    CHECK(u_sym <= 1e-12);
    CHECK(left == doctest::Approx(right).epsilon(1e-10));
    // the two crests have left the center
    CHECK(z[c] < 0.5 * z.maxCoeff());
}

}
