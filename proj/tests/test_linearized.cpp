#include "gn1d/linearized.hpp"
#include "gn1d/random_fields.hpp"
#include "gn1d/scenarios.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace gn1d;

namespace {

State combine(double a, const State& x, double b, const State& y)
{
    return State{a * x.zeta + b * y.zeta, a * x.u + b * y.u, 0.0};
}

double state_gap(const State& a, const State& b)
{
    return std::max(test::max_abs(a.zeta - b.zeta), test::max_abs(a.u - b.u));
}

double state_size(const State& a) { return std::max(test::max_abs(a.zeta), test::max_abs(a.u)); }

}  // namespace

TEST_SUITE("linearized") {

TEST_CASE("mollifier profile")
{
    CHECK(mollifier_profile(0.0) == 1.0);
    CHECK(mollifier_profile(1.0) == 1.0);
    CHECK(mollifier_profile(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mollifier_profile(2.0) == 0.0);
    CHECK(mollifier_profile(-1.7) == mollifier_profile(1.7));
    double last = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        CHECK(mollifier_profile(r) <= last);
        last = mollifier_profile(r);
    }
}

TEST_CASE("mollifier limits")
{
    const Grid g(64, 16.0);
    Rng rng(1);
    const Field f = random_white_field(64, rng);
    const double kmax = wavenumber(32, g);
    CHECK(test::max_abs(mollify(f, make_mollifier(1.0 / kmax, g)) - f) <= 1e-14);
    const double k1 = wavenumber(1, g);
    const Field mean = mollify(f, make_mollifier(2.0 / k1, g));
    CHECK(test::max_abs(mean - Field::Constant(64, f.mean())) <= 1e-15);
}

TEST_CASE("mollifier is self-adjoint")
{
    const Grid g(128, 16.0);
    Rng rng(2);
    for (double delta : {0.05, 0.2, 1.0}) {
        const Mollifier m = make_mollifier(delta, g);
        const Field f = random_white_field(128, rng), h = random_white_field(128, rng);
        CHECK(std::abs(inner_product(mollify(f, m), h, g) - inner_product(f, mollify(h, m), g)) <= 1e-13);
    }
}

TEST_CASE("reference trajectory interpolation")
{
    const Grid g(16, 1.0);
    State a = State::rest(g), b = State::rest(g);
    a.zeta.setConstant(1.0);
    b.zeta.setConstant(3.0);
    const ReferenceTrajectory ref(0.0, 0.5, {a, b});
    CHECK(ref.covers(0.0, 0.5));
    CHECK_FALSE(ref.covers(0.0, 0.6));
    CHECK(ref.at(0.0).zeta == a.zeta);
    CHECK(ref.at(0.5).zeta == b.zeta);
    CHECK(test::max_abs(ref.at(0.25).zeta - Field::Constant(16, 2.0)) <= 1e-15);
    CHECK_THROWS_AS(ref.at(0.7), std::out_of_range);
    const ReferenceTrajectory c = ReferenceTrajectory::constant(a, 0.0, 1.0, 4);
    CHECK(c.size() == 5);
    CHECK(c.spacing() == 0.25);
}

TEST_CASE("linear tendency at rest")
{
    const Grid g(64, 16.0);
    const Parameters p{0.3, 0.5, 0.5};
    const auto ref = ReferenceTrajectory::constant(State::rest(g), 0.0, 1.0);
    const Tendency t = linear_rhs(ref, 0.5, State::rest(g), Bathymetry::flat(g), p, g);
    CHECK(test::max_abs(t.dzeta) == 0.0);
    CHECK(test::max_abs(t.du) == 0.0);
}

TEST_CASE("linear tendency superposes and matches the direct form at the reference")
{
    const Grid g(128, 24.0);
    const Parameters p{0.5, 0.5, 0.2};
    Rng rng(9);
    auto [ubar, b] = random_depth_state(g, p, rng);
    const FrozenCoefficients f = freeze(ubar, b, p, g);
    const Tendency forcing = eval_B(f);
    RandomStateOptions small;
    small.velocity_amplitude = 0.2;
    const State u1 = random_depth_state(g, p, rng, small).first;
    const State u2 = random_depth_state(g, p, rng, small).first;
    const double al = 0.7, be = -1.3;

    auto homogeneous = [&](const State& u) {
        Tendency t = linear_rhs(f, u);
        t.dzeta += forcing.dzeta;
        t.du += forcing.du;
        return t;
    };
    const Tendency lhs = homogeneous(combine(al, u1, be, u2));
    const Tendency h1 = homogeneous(u1), h2 = homogeneous(u2);
    const Field rz = al * h1.dzeta + be * h2.dzeta, ru = al * h1.du + be * h2.du;
    CHECK(test::max_abs(lhs.dzeta - rz) <= 1e-12 * test::max_abs(rz));
    CHECK(test::max_abs(lhs.du - ru) <= 1e-12 * test::max_abs(ru));

    const Tendency self = linear_rhs(f, ubar);
    const Tendency direct = nonlinear_rhs(ubar, b, p, g);
    CHECK(test::rel_gap(self.dzeta, direct.dzeta) <= 1e-9);
    CHECK(test::rel_gap(self.du, direct.du) <= 1e-9);
}

TEST_CASE("zero data around rest stays zero")
{
    const Grid g(64, 16.0);
    const Parameters p{0.3, 0.5, 0.5};
    const auto ref = ReferenceTrajectory::constant(State::rest(g), 0.0, 1.0, 10);
    LinearOptions opt;
    opt.steps = 10;
    const LinearSolution sol = solve_linear(ref, State::rest(g), StepControl{0.5, 0.1, 1.0}, Bathymetry::flat(g), p, g, opt);
    REQUIRE(sol.status == RunStatus::completed);
    REQUIRE(sol.trajectory.size() == 11);
    for (const State& s : sol.trajectory.snapshots())
        CHECK(state_size(s) == 0.0);
}

TEST_CASE("homogeneous linear flow superposes over the whole window")
{
    const Grid g(256, 64.0);
    const Parameters p{0.2, 0.5, 0.3};
    const Bathymetry b = bar_bathymetry(0.4, 3.0, 36.0, g);
    const State wave = solitary_wave(1.0, p, g, 28.0);
    const StepControl c{0.5, 0.1, 1.0};
    const auto ref = nonlinear_reference(wave, 1.0, 20, b, p, g);
    LinearOptions opt;
    opt.steps = 20;
    opt.include_forcing = false;
    const State u1 = gaussian_hump(0.1, 2.0, 30.0, g);
    State u2 = State::rest(g);
    u2.u = gaussian_hump(0.05, 1.5, 38.0, g).zeta;
    const auto s1 = solve_linear(ref, u1, c, b, p, g, opt);
    const auto s2 = solve_linear(ref, u2, c, b, p, g, opt);
    const auto s12 = solve_linear(ref, combine(2.0, u1, -0.5, u2), c, b, p, g, opt);
    double worst = 0.0;
    for (std::size_t j = 0; j < s12.trajectory.size(); ++j)
        worst = std::max(worst, state_gap(s12.trajectory[j], combine(2.0, s1.trajectory[j], -0.5, s2.trajectory[j])));
    CHECK(worst <= 1e-11 * state_size(u1));
}

TEST_CASE("linear flow around the nonlinear trajectory reproduces it")
{
    // Coefficients are interpolated between snapshots, so the gap is second order in dt.
    const Grid g(256, 64.0);
    const Parameters p{0.2, 0.5, 0.3};
    const Bathymetry b = bar_bathymetry(0.3, 3.0, 36.0, g);
    const State wave = solitary_wave(1.0, p, g, 30.0);
    auto gap = [&](int steps) {
        const auto ref = nonlinear_reference(wave, 0.5, steps, b, p, g);
        LinearOptions opt;
        opt.steps = steps;
        const auto sol = solve_linear(ref, wave, StepControl{0.5, 0.1, 0.5}, b, p, g, opt);
        double worst = 0.0;
        for (std::size_t j = 0; j < ref.size(); ++j)
            worst = std::max(worst, state_gap(sol.trajectory[j], ref[j]));
        return worst;
    };
    const double g1 = gap(10), g2 = gap(20);
    CHECK(g1 <= 1e-4);
    CHECK(g1 / g2 > 3.0);
}

TEST_CASE("Picard iteration from rest")
{
    const Grid g(64, 16.0);
    const Parameters p{0.3, 0.5, 0.5};
    const PicardResult r = picard_solve(State::rest(g), StepControl{0.5, 0.1, 0.1}, Bathymetry::flat(g), p, g);
    CHECK(r.converged);
    REQUIRE(r.gaps.size() == 1);
    CHECK(r.gaps[0] == 0.0);
    for (const State& s : r.final().snapshots())
        CHECK(state_size(s) == 0.0);
}

TEST_CASE("Picard gaps contract on a short window")
{
    const Grid g(256, 96.0);
    const Parameters p{0.1, 0.5, 0.5};
    PicardOptions opt;
    opt.steps = 20;
    opt.tol = 1e-12;
    const PicardResult r = picard_solve(solitary_wave(1.0, p, g, 48.0), StepControl{0.5, 0.1, 0.1},
                                        Bathymetry::flat(g), p, g, opt);
    CHECK(r.converged);
    REQUIRE(r.gaps.size() >= 3);
    for (std::size_t k = 2; k < r.gaps.size(); ++k)
        CHECK(r.gaps[k] <= 0.5 * r.gaps[k - 1]);
}

TEST_CASE("envelope fit recovers a synthetic rate")
{
    const double eps = 0.2, lambda = 0.3, c = 0.05, e0 = 1.0;
    std::vector<double> t, e, forcing;
    for (int j = 0; j <= 50; ++j) {
        t.push_back(0.2 * j);
        e.push_back(envelope_value(EnvelopeFit{lambda, c}, e0, t.back(), eps));
        forcing.push_back(j == 25 ? c : 0.5 * c);
    }
    const EnvelopeFit fit = fit_energy_envelope(t, e, forcing, eps);
    CHECK(fit.forcing == c);
    CHECK(fit.lambda == doctest::Approx(lambda).epsilon(1e-9));
    CHECK(envelope_value(EnvelopeFit{0.0, c}, e0, 2.0, eps) == doctest::Approx(e0 + eps * c * 2.0));
}

}
