#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mev/quadrature.hpp"
#include "mev/special.hpp"

using namespace mev;

TEST_CASE("standard normal cdf basics") {
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std_normal_cdf(1e10) == doctest::Approx(1.0));
    CHECK(std_normal_cdf(-1e10) == doctest::Approx(0.0));

    for (double x : {0.1, 0.5, 1.0, 2.0, 3.5, 7.0}) {
        CHECK(std::fabs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) < 1e-15);
    }
}

TEST_CASE("normal cdf against quadrature of the density") {
    // Independent oracle: integrate the density from 0 out to x.
    for (double x : {0.5, 1.0, 1.959964, 2.5}) {
        const double tail = integrate_or_throw([](double t) { return std_normal_pdf(t); }, 0.0, x,
                                               1e-14, 20000);
        CHECK(std_normal_cdf(x) == doctest::Approx(0.5 + tail).epsilon(1e-12));
    }
    CHECK(std_normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-7));
}

TEST_CASE("normal quantile inverts the cdf") {
    CHECK(std_normal_quantile(0.5) == 0.0);
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    for (double q : {1e-6, 1e-3, 0.1, 0.3, 0.5, 0.7, 0.95, 0.999, 1.0 - 1e-9}) {
        const double x = std_normal_quantile(q);
        CHECK(std_normal_cdf(x) == doctest::Approx(q).epsilon(1e-12));
    }
    CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(-0.2), std::domain_error);
}

TEST_CASE("incomplete gamma sanity") {
    // P(1, x) = 1 - exp(-x)
    for (double x : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(regularized_gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-13));
        CHECK(regularized_gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-13));
    }
    // chi-squared(2) upper tail = exp(-x/2)
    CHECK(chi_squared_upper_tail(3.0, 2.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-13));
    CHECK(chi_squared_upper_tail(0.0, 5.0) == 1.0);
}

TEST_CASE("incomplete beta against quadrature") {
    // I_x(a,b) by direct integration of the beta density.
    const double a = 2.5, b = 1.5;
    const double norm = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b));
    for (double x : {0.1, 0.4, 0.7, 0.95}) {
        const double oracle = integrate_or_throw(
            [&](double t) { return norm * std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 1.0); },
            0.0, x, 1e-13, 20000);
        CHECK(incomplete_beta(a, b, x) == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("student t cdf and quantile") {
    CHECK(student_t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-14));
    // t(1) is Cauchy: F(1) = 3/4
    CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    for (double dof : {3.0, 10.0, 120.0}) {
        for (double q : {0.6, 0.9, 0.975, 0.995}) {
            const double x = student_t_quantile(q, dof);
            CHECK(student_t_cdf(x, dof) == doctest::Approx(q).epsilon(1e-10));
            CHECK(student_t_quantile(1.0 - q, dof) == doctest::Approx(-x).epsilon(1e-10));
        }
    }
    // Known table value: t(10, 0.975) = 2.228138...
    CHECK(student_t_quantile(0.975, 10.0) == doctest::Approx(2.2281388520).epsilon(1e-8));
}

TEST_CASE("kolmogorov tail distribution") {
    CHECK(kolmogorov_q(1e-9) == 1.0);
    CHECK(kolmogorov_q(0.05) == doctest::Approx(1.0).epsilon(1e-12));
    // Classic value: Q(1.36) is close to 0.05 (the 5% critical constant).
    CHECK(kolmogorov_q(1.3581) == doctest::Approx(0.05).epsilon(0.01));
    // Monotone decreasing.
    double prev = 1.0;
    for (double l = 0.3; l < 3.0; l += 0.1) {
        const double q = kolmogorov_q(l);
        CHECK(q <= prev + 1e-12);
        prev = q;
    }
    // Continuity across the series switch at 1.18.
    CHECK(kolmogorov_q(1.18 - 1e-9) == doctest::Approx(kolmogorov_q(1.18 + 1e-9)).epsilon(1e-6));
}
