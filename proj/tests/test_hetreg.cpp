#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mev/diagnostics.hpp"
#include "mev/hetreg.hpp"
#include "mev/rng.hpp"
#include "mev/simulate.hpp"

using namespace mev;

namespace {

const HetRegModel kCase1Reg{RegFamily::linear, {-0.5, 0.7, -0.3, 0.1}};
const GevParams kCase1Gev{10.0, 0.5, -0.15};

PairedMaxima simulate_pairs(const HetRegModel& reg, std::size_t n, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    PairedMaxima d;
    d.x = sample_gev(kCase1Gev, n, rng);
    d.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NormalCond c = predict(reg, d.x[i]);
        d.y[i] = c.mean + c.sd * rng.normal();
    }
    return d;
}

}  // namespace

TEST_CASE("predict evaluates the two families") {
    const HetRegModel unit{RegFamily::linear, {0.0, 0.0, 1.0, 0.0}};
    CHECK(predict(unit, -3.7).mean == 0.0);
    CHECK(predict(unit, 12.0).sd == 1.0);

    const HetRegModel pw{RegFamily::power, {1.0, 1.0, 1.0, 0.0}};
    CHECK(predict(pw, 3.0).mean == doctest::Approx(3.0));
    CHECK(predict(pw, 3.0).sd == doctest::Approx(1.0));
    CHECK_THROWS_AS(predict(pw, -1.0), std::domain_error);

    // Case-1 truth at x = 10.
    CHECK(predict(kCase1Reg, 10.0).mean == doctest::Approx(6.5).epsilon(1e-14));
    CHECK(predict(kCase1Reg, 10.0).sd == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("fit recovers case-1 coefficients") {
    const PairedMaxima data = simulate_pairs(kCase1Reg, 1000, 17);
    const HetRegFit hf = fit_hetreg(data, RegFamily::linear);
    REQUIRE(hf.fit.converged);
    REQUIRE(hf.fit.covariance_valid);
    for (int j = 0; j < 4; ++j)
        CHECK(std::fabs(hf.fit.estimates[j] - kCase1Reg.beta[j]) < 3.0 * hf.fit.se[j]);

    // MLE dominance on its own sample.
    const double at_hat = hetreg_loglik(data, RegFamily::linear, hf.fit.estimates);
    const std::vector<double> truth(kCase1Reg.beta.begin(), kCase1Reg.beta.end());
    CHECK(at_hat >= hetreg_loglik(data, RegFamily::linear, truth) - 1e-9);

    // Stationary point.
    const ObjectiveFn ll = [&](std::span<const double> b) {
        return hetreg_loglik(data, RegFamily::linear, b);
    };
    const std::vector<double> g = fd_gradient(ll, hf.fit.estimates);
    CHECK(scaled_gradient_norm(g, hf.fit.estimates, hf.fit.loglik) < 1e-4);
}

TEST_CASE("power family fit") {
    const HetRegModel ptrue{RegFamily::power, {0.4, 0.8, 0.25, 0.3}};
    const PairedMaxima data = simulate_pairs(ptrue, 1500, 23);
    const HetRegFit hf = fit_hetreg(data, RegFamily::power);
    REQUIRE(hf.fit.converged);
    for (int j = 0; j < 4; ++j)
        CHECK(std::fabs(hf.fit.estimates[j] - ptrue.beta[j]) < 4.0 * hf.fit.se[j]);

    PairedMaxima bad = data;
    bad.x[3] = -0.5;
    CHECK_THROWS_AS(fit_hetreg(bad, RegFamily::power), std::invalid_argument);
}

TEST_CASE("homoscedastic data accepts the beta3 = 0 restriction") {
    const HetRegModel homo{RegFamily::linear, {0.2, 0.1, 0.8, 0.0}};
    int accept = 0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        const PairedMaxima data = simulate_pairs(homo, 400, 1000 + rep);
        const HetRegFit full = fit_hetreg(data, RegFamily::linear);
        HetRegOptions ropt;
        ropt.fix_beta3_zero = true;
        const HetRegFit restricted = fit_hetreg(data, RegFamily::linear, ropt);
        const LrTest lr = lr_test(full.fit.loglik, restricted.fit.loglik, 1, 0.05);
        accept += !lr.reject;

        // Nesting: the restricted optimum can never beat the free one.
        CHECK(restricted.fit.loglik <= full.fit.loglik + 1e-6);
    }
    CHECK(accept >= reps * 90 / 100);
}

TEST_CASE("degenerate variance is rejected") {
    PairedMaxima data;
    for (int i = 0; i < 40; ++i) {
        data.x.push_back(1.0 + 0.1 * i);
        data.y.push_back(2.5);  // identical responses
    }
    CHECK_THROWS_WITH_AS(fit_hetreg(data, RegFamily::linear),
                         doctest::Contains("degenerate variance"), std::invalid_argument);

    PairedMaxima tiny;
    tiny.x = {1.0, 2.0};
    tiny.y = {0.1, 0.3};
    CHECK_THROWS_AS(fit_hetreg(tiny, RegFamily::linear), std::invalid_argument);
}

TEST_CASE("studentized residuals") {
    const PairedMaxima data = simulate_pairs(kCase1Reg, 300, 3);
    const std::vector<double> r = studentized_residuals(kCase1Reg, data);
    REQUIRE(r.size() == data.x.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double raw = data.y[i] - kCase1Reg.mean(data.x[i]);
        CHECK(((r[i] > 0) == (raw > 0) || raw == 0.0));
    }

    // Exact fit leaves zero residuals.
    PairedMaxima exact;
    exact.x = {2.0, 4.0, 6.0};
    for (double x : exact.x) exact.y.push_back(kCase1Reg.mean(x));
    const std::vector<double> zero = studentized_residuals(kCase1Reg, exact);
    for (double v : zero) CHECK(v == doctest::Approx(0.0));

    // Residuals at the true parameters look standard normal (KS oracle).
    int pass = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        const PairedMaxima d = simulate_pairs(kCase1Reg, 250, 7000 + rep);
        const TestReport ks = ks_test_std_normal(studentized_residuals(kCase1Reg, d), 0.05);
        pass += !ks.reject;
    }
    CHECK(pass >= reps * 90 / 100);
}

TEST_CASE("regression bands") {
    const PairedMaxima data = simulate_pairs(kCase1Reg, 500, 77);
    const HetRegFit hf = fit_hetreg(data, RegFamily::linear);
    const std::vector<double> grid = {8.0, 9.0, 10.0, 11.0, 12.0};
    const auto band = regression_bands(hf.model, hf.fit, grid, 0.05);
    REQUIRE(band.size() == grid.size());
    for (const auto& b : band) {
        CHECK(b.mean_lo <= b.mean);
        CHECK(b.mean <= b.mean_hi);
        // Prediction band strictly contains the mean band.
        CHECK(b.pred_lo < b.mean_lo);
        CHECK(b.pred_hi > b.mean_hi);
    }

    // Analytic delta-method oracle for the linear family at x:
    // var = S00 + 2 x S01 + x^2 S11, half-width = t(0.975, n-5) * sqrt(var).
    const Matrix& s = hf.fit.covariance;
    const double x = grid[2];
    const double var = s(0, 0) + 2.0 * x * s(0, 1) + x * x * s(1, 1);
    const double tmult = student_t_quantile(0.975, 500.0 - 4.0 - 1.0);
    CHECK(band[2].mean_hi - band[2].mean == doctest::Approx(tmult * std::sqrt(var)).epsilon(1e-10));

    // Zero covariance collapses the mean band onto the curve.
    FitResult zero = hf.fit;
    zero.covariance = Matrix(4, 4);
    const auto flat = regression_bands(hf.model, zero, grid, 0.05);
    for (std::size_t i = 0; i < flat.size(); ++i) {
        CHECK(flat[i].mean_lo == doctest::Approx(flat[i].mean));
        CHECK(flat[i].mean_hi == doctest::Approx(flat[i].mean));
    }
}
