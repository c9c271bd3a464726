#include "gn1d/random_fields.hpp"
#include "gn1d/scenarios.hpp"
#include "gn1d/time_integrator.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace gn1d;

namespace {

double state_gap(const State& a, const State& b)
{
    return std::max(test::max_abs(a.zeta - b.zeta), test::max_abs(a.u - b.u));
}

State integrate(const State& s0, double t_end, int steps, const Bathymetry& b, const Parameters& p, const Grid& g)
{
    State s = s0;
    for (int j = 0; j < steps; ++j)
        s = rk4_step(s, t_end / steps, b, p, g);
    return s;
}

}  // namespace

TEST_SUITE("time_integrator") {

TEST_CASE("time step from the characteristic speed")
{
    const Parameters p{0.3, 0.2, 0.5};
    const Grid g(128, 32.0);
    const StepControl c{0.5, 10.0, 1.0};
    const State rest = State::rest(g);
    CHECK(cfl_dt(rest, Bathymetry::flat(g), p, g, c) == doctest::Approx(0.5 * g.dx()));
    CHECK(cfl_dt(rest, Bathymetry::flat(g), p, g, StepControl{0.5, 0.01, 1.0}) == 0.01);

    const Grid fine(256, 32.0);
    CHECK(cfl_dt(State::rest(fine), Bathymetry::flat(fine), p, fine, c) ==
          doctest::Approx(0.5 * cfl_dt(rest, Bathymetry::flat(g), p, g, c)));

    State moving = rest;
    double last = cfl_dt(rest, Bathymetry::flat(g), p, g, c);
    for (double amp : {0.5, 1.0, 4.0}) {
        moving.u.setConstant(amp);
        const double dt = cfl_dt(moving, Bathymetry::flat(g), p, g, c);
        CHECK(dt < last);
        last = dt;
    }
}

TEST_CASE("rest over a bar stays at rest")
{
    const Grid g(128, 32.0);
    const Parameters p{0.5, 0.5, 0.3};
    const Bathymetry b = bar_bathymetry(0.6, 2.0, 16.0, g);
    State s = State::rest(g);
    s.zeta.setZero();
    const State next = rk4_step(s, 0.05, b, p, g);
    CHECK(state_gap(next, s) <= 1e-14);
}

TEST_CASE("a step forward and back returns to the start at fifth order")
{
    const Grid g(128, 32.0);
    const Parameters p{0.3, 0.5, 0.3};
    Rng rng(2);
    auto [s0, b] = random_depth_state(g, p, rng);
    auto probe = [&](double dt) { return state_gap(rk4_step(rk4_step(s0, dt, b, p, g), -dt, b, p, g), s0); };
    const double e1 = probe(0.04), e2 = probe(0.02);
    CHECK(e1 / e2 > 20.0);
}

TEST_CASE("fourth-order convergence in time on the solitary wave")
{
    const Grid g(256, 64.0);
    const Parameters p{0.2, 0.5, 0.5};
    const State s0 = solitary_wave(1.0, p, g, 32.0);
    const Bathymetry b = Bathymetry::flat(g);
    const State a = integrate(s0, 1.0, 10, b, p, g);
    const State c = integrate(s0, 1.0, 20, b, p, g);
    const State d = integrate(s0, 1.0, 40, b, p, g);
    const double ratio = state_gap(a, c) / state_gap(c, d);
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("solitary wave run")
{
    const Grid g(256, 64.0);
    const Parameters p{0.2, 0.5, 0.5};
    std::vector<DiagnosticRecord> records;
    RunOptions opt;
    opt.snapshot_every = 1;
    const RunOutcome out = run(solitary_wave(1.0, p, g, 32.0), StepControl{0.5, 0.1, 1.0}, Bathymetry::flat(g), p,
                               g, opt, RunSinks{[&](const DiagnosticRecord& r) { records.push_back(r); }, {}});
    CHECK(out.status == RunStatus::completed);
    CHECK(out.final_state.time == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(records.size() == static_cast<std::size_t>(out.steps) + 1);
    CHECK(std::abs(records.back().energy - records.front().energy) <= 1e-6 * records.front().energy);
    double lowest = records.front().min_h;
    for (const auto& r : records)
        lowest = std::min(lowest, r.min_h);
    CHECK(out.min_h == lowest);
}

TEST_CASE("monitors trip at the start")
{
    const Grid g(128, 32.0);
    const Parameters p{0.5, 0.5, 0.9};
    State s = gaussian_hump(-0.5, 2.0, 16.0, g);  // min h = 0.75 < 0.9
    const RunOutcome shallow = run(s, StepControl{0.5, 0.1, 1.0}, Bathymetry::flat(g), p, g);
    CHECK(shallow.status == RunStatus::blowup_depth);
    CHECK(shallow.steps == 0);

    const Parameters ok{0.5, 0.5, 0.5};
    RunOptions opt;
    opt.norm_threshold = 1e-3;
    const RunOutcome big = run(s, StepControl{0.5, 0.1, 1.0}, Bathymetry::flat(g), ok, g, opt);
    CHECK(big.status == RunStatus::blowup_norm);
    CHECK(big.steps == 0);
}

TEST_CASE("lake at rest over a thousand steps")
{
    const Grid g(128, 32.0);
    const Parameters p{0.5, 0.5, 0.3};
    const Bathymetry b = bar_bathymetry(0.5, 2.0, 16.0, g);
    State s = State::rest(g);
    for (int j = 0; j < 1000; ++j)
        s = rk4_step(s, 0.1, b, p, g);
    CHECK(test::max_abs(s.zeta) <= 1e-12);
    CHECK(test::max_abs(s.u) <= 1e-12);
}

}
