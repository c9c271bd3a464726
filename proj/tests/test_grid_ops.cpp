#include "gn1d/envelope_cholesky.hpp"
#include "gn1d/grid_ops.hpp"
#include "gn1d/random_fields.hpp"
#include "support.hpp"

#include <Eigen/Cholesky>
#include <doctest.h>

using namespace gn1d;

namespace {

double fd_sine_error(int n)
{
    const Grid grid(n, 10.0);
    const double k = 2.0 * M_PI / grid.length();
    const Field f = test::sample(grid, [&](double x) { return std::sin(k * x); });
    const Field exact = test::sample(grid, [&](double x) { return k * std::cos(k * x); });
    return test::max_abs(d1_fd(grid).apply(f) - exact);
}

}  // namespace

TEST_SUITE("grid_ops") {

TEST_CASE("fourth-order difference")
{
    const Grid grid(256, 10.0);
    const BandedOperator d = d1_fd(grid);
    CHECK(test::max_abs(d.apply(Field::Constant(256, 3.7))) == 0.0);

    const double e1 = fd_sine_error(128), e2 = fd_sine_error(256), e3 = fd_sine_error(512);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.05));
    CHECK(e2 / e3 == doctest::Approx(16.0).epsilon(0.05));

    // antisymmetric bit for bit
    const Eigen::MatrixXd dense = d.dense();
    CHECK((dense + dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const BandedOperator dt = d.transpose();
    for (int i = 0; i < grid.n(); ++i)
        for (int k = -2; k <= 2; ++k)
            CHECK(dt.at(i, k) == -d.at(i, k));
}

TEST_CASE("spectral derivatives")
{
    const Grid grid = test::two_pi_grid(64);
    const Field f = test::sample(grid, [](double x) { return std::sin(5 * x); });
    CHECK(test::max_abs(d1_spectral(f, grid) - test::sample(grid, [](double x) { return 5 * std::cos(5 * x); }))
          <= 1e-12);
    CHECK(test::max_abs(d1_spectral(Field::Constant(64, 2.0), grid)) <= 1e-15);

    Rng rng(11);
    const Field g = random_smooth_field(grid, 12, 1.0, rng);
    CHECK(test::rel_gap(d1_spectral(d1_spectral(g, grid), grid), d2_spectral(g, grid)) <= 1e-12);
}

TEST_CASE("spectral and difference derivatives agree to fourth order")
{
    auto gap = [](int n) {
        const Grid grid(n, 2.0 * M_PI);
        const Field f = test::sample(grid, [](double x) { return std::sin(x) + 0.5 * std::cos(3 * x); });
        return test::max_abs(d1_fd(grid).apply(f) - d1_spectral(f, grid));
    };
    CHECK(gap(64) / gap(128) == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("inner products")
{
    const Grid grid = test::two_pi_grid(128);
    const Field one = Field::Ones(128);
    CHECK(inner_product(one, one, grid) == doctest::Approx(2 * M_PI).epsilon(1e-14));
    const Field s = test::sample(grid, [](double x) { return std::sin(x); });
    const Field c = test::sample(grid, [](double x) { return std::cos(x); });
    CHECK(std::abs(inner_product(s, c, grid)) <= 1e-14);
    const Field c3 = test::sample(grid, [](double x) { return std::cos(3 * x); });
    CHECK(inner_product(c3, c3, grid) == doctest::Approx(M_PI).epsilon(1e-14));
}

TEST_CASE("Bessel potential")
{
    const Grid grid = test::two_pi_grid(64);
    const Field c3 = test::sample(grid, [](double x) { return std::cos(3 * x); });
    CHECK(test::max_abs(lambda_s(c3, 0.0, grid) - c3) <= 1e-15);
    CHECK(test::max_abs(lambda_s(c3, 1.0, grid) - std::sqrt(10.0) * c3) <= 1e-13);

    Rng rng(3);
    for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const Field f = random_smooth_field(grid, 20, 1.0, rng);
        CHECK(l2_norm(lambda_s(f, s, grid), grid) == doctest::Approx(sobolev_norm(f, s, grid)).epsilon(1e-12));
        CHECK(test::rel_gap(lambda_s(lambda_s(f, s, grid), -s, grid), f) <= 1e-12);
    }
}

TEST_CASE("two-thirds filter keeps low modes and drops high ones")
{
    const Grid grid = test::two_pi_grid(48);
    const Field low = test::sample(grid, [](double x) { return std::cos(16 * x); });
    const Field high = test::sample(grid, [](double x) { return std::sin(17 * x); });
    CHECK(test::max_abs(two_thirds_filter(low) - low) <= 1e-14);
    CHECK(test::max_abs(two_thirds_filter(high)) <= 1e-14);
}

TEST_CASE("banded gram product matches the dense product")
{
    const Grid grid(24, 3.0);
    Rng rng(5);
    const BandedOperator d = d1_fd(grid).scale_rows(Field::Ones(24) + 0.2 * random_white_field(24, rng));
    const Field w = Field::Ones(24) + 0.1 * random_white_field(24, rng).cwiseAbs();
    const BandedOperator g = d.gram(w);
    CHECK(g.is_symmetric());
    const Eigen::MatrixXd dd = d.dense();
    const Eigen::MatrixXd oracle = dd.transpose() * w.asDiagonal() * dd;
    CHECK((g.dense() - oracle).cwiseAbs().maxCoeff() <= 1e-12 * oracle.cwiseAbs().maxCoeff());
}

TEST_CASE("envelope Cholesky against a dense factorization")
{
    for (int n : {16, 17, 40}) {
        const Grid grid(n % 2 ? n + 1 : n, 5.0);
        Rng rng(n);
        const BandedOperator d = d1_fd(grid);
        const int m = grid.n();
        const BandedOperator a = BandedOperator::diagonal(Field::Constant(m, 1.5)) + d.gram(Field::Ones(m)) * 0.3;
        const auto f = EnvelopeCholesky<double>::factorize(a);
        REQUIRE(f.has_value());
        const Field rhs = random_white_field(m, rng);
        const Field x = f->solve(rhs);
        const Field oracle = a.dense().llt().solve(rhs);
        CHECK(test::rel_gap(x, oracle) <= 1e-13);
    }

    // indefinite input is rejected with the failing row
    const Grid grid(16, 1.0);
    Field diag = Field::Ones(16);
    diag[9] = -1.0;
    int row = -1;
    CHECK_FALSE(EnvelopeCholesky<double>::factorize(BandedOperator::diagonal(diag), &row).has_value());
    CHECK(row == 9);
}

TEST_CASE("random fields are band limited and scaled")
{
    const Grid grid(128, 12.0);
    Rng rng(2);
    const Field f = random_smooth_field(grid, 6, 0.7, rng);
    CHECK(test::max_abs(f) == doctest::Approx(0.7).epsilon(1e-12));
    const Eigen::VectorXcd c = to_fourier(f);
    CHECK(c.tail(c.size() - 7).cwiseAbs().maxCoeff() <= 1e-12 * c.cwiseAbs().maxCoeff());
    CHECK(std::abs(c[0]) <= 1e-12 * c.cwiseAbs().maxCoeff());
}

}
