#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mev/linalg.hpp"
#include "mev/optim.hpp"
#include "mev/quadrature.hpp"
#include "mev/root_finding.hpp"

using namespace mev;

TEST_CASE("gauss-kronrod on smooth integrands") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    // Moderate endpoint singularity: int_0^1 x^{-1/2} dx = 2.
    const auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-14, 1.0, 1e-9, 20000);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-6));

    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
    // Reversed limits flip the sign.
    CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("quadrature failure is reported") {
    // Endpoint singularity with an interval budget too small to resolve it.
    const auto f = [](double x) { return 1.0 / std::sqrt(x); };
    const auto r = integrate(f, 1e-14, 1.0, 1e-14, 4);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(integrate_or_throw(f, 1e-14, 1.0, 1e-14, 4), NumericError);
}

TEST_CASE("brent root finding") {
    const auto root = brent([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14, 1e-15);
    CHECK(root.converged);
    CHECK(root.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(brent([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12, 1e-12),
                    NumericError);

    const auto cosr = brent([](double x) { return std::cos(x); }, 0.0, 3.0, 1e-14, 0.0);
    CHECK(cosr.root == doctest::Approx(M_PI / 2.0).epsilon(1e-10));
}

TEST_CASE("bracket expansion") {
    const auto f = [](double x) { return x - 100.0; };
    auto [lo, hi] = expand_bracket(f, -1.0, 1.0);
    CHECK(lo < 100.0);
    CHECK(hi > 100.0);
    CHECK_THROWS_AS(expand_bracket([](double) { return 1.0; }, 0.0, 1.0, 10), NumericError);
}

TEST_CASE("matrix inverse and definiteness") {
    Matrix a(2, 2);
    a(0, 0) = 4.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 3.0;
    const auto inv = invert(a);
    REQUIRE(inv);
    // A * A^{-1} = I
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 2; ++k) s += a(i, k) * (*inv)(k, j);
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    CHECK(is_positive_definite(a));

    Matrix sing(2, 2);
    sing(0, 0) = 1.0; sing(0, 1) = 2.0;
    sing(1, 0) = 2.0; sing(1, 1) = 4.0;
    CHECK_FALSE(invert(sing).has_value());
    CHECK_FALSE(is_positive_definite(sing));

    Matrix indef = Matrix::identity(2);
    indef(1, 1) = -1.0;
    CHECK_FALSE(is_positive_definite(indef));
    const double v[2] = {1.0, 2.0};
    CHECK(quadratic_form(indef, v) == doctest::Approx(1.0 - 4.0));
}

TEST_CASE("finite-difference hessian is exact for quadratics") {
    // f(x) = -1/2 x^T A x with A = [[2, 0.3], [0.3, 1]]
    Matrix a(2, 2);
    a(0, 0) = 2.0; a(0, 1) = 0.3;
    a(1, 0) = 0.3; a(1, 1) = 1.0;
    const ObjectiveFn f = [&](std::span<const double> x) {
        return -0.5 * quadratic_form(a, x);
    };
    const double x0[2] = {0.4, -1.2};
    const Matrix h = fd_hessian(f, x0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(h(i, j) == doctest::Approx(-a(i, j)).epsilon(1e-6));
    // Symmetric after symmetrization by construction.
    CHECK(h(0, 1) == h(1, 0));
}

TEST_CASE("maximize finds interior optima") {
    // Concave objective with maximum at (1, -2), value 3.
    const ObjectiveFn f = [](std::span<const double> x) {
        const double dx = x[0] - 1.0, dy = x[1] + 2.0;
        return 3.0 - dx * dx - 0.5 * dy * dy - 0.1 * dx * dx * dy * dy;
    };
    const MaximizeResult r = maximize(f, {5.0, 5.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.value == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(r.grad_norm < 1e-6);
}

TEST_CASE("maximize copes with -inf barriers") {
    const ObjectiveFn f = [](std::span<const double> x) {
        if (x[0] <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(x[0]) - x[0];
    };
    const MaximizeResult r = maximize(f, {3.0});
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
}
