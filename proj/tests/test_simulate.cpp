#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mev/diagnostics.hpp"
#include "mev/quadrature.hpp"
#include "mev/simulate.hpp"
#include "test_support.hpp"

using namespace mev;

TEST_CASE("case 1 determinism and shape") {
    SimulationConfig cfg = SimulationConfig::case1_defaults();
    cfg.seed = 99;
    const Case1Data a = simulate_case1(cfg);
    const Case1Data b = simulate_case1(cfg);
    REQUIRE(a.x_max.size() == 1000);
    CHECK(a.x_max == b.x_max);  // bit-identical rerun
    CHECK(a.y == b.y);
    CHECK(a.z_max == b.z_max);

    cfg.seed = 100;
    const Case1Data c = simulate_case1(cfg);
    CHECK(a.x_max != c.x_max);

    for (std::size_t i = 0; i < a.x_max.size(); ++i)
        CHECK(a.z_max[i] == a.x_max[i] + a.y[i]);
}

TEST_CASE("case 1 sample moments match the gev analytic mean") {
    SimulationConfig cfg = SimulationConfig::case1_defaults();
    cfg.years = 20000;
    cfg.seed = 12;
    const Case1Data d = simulate_case1(cfg);

    // E[X] = mu + psi (Gamma(1 - xi) - 1) / xi for xi < 1.
    const double psi = cfg.gev.psi();
    const double xi = cfg.gev.xi;
    const double mean_true = cfg.gev.mu + psi * (std::tgamma(1.0 - xi) - 1.0) / xi;
    // Var[X] = psi^2 (Gamma(1-2xi) - Gamma(1-xi)^2) / xi^2 for xi < 1/2.
    const double g1 = std::tgamma(1.0 - xi), g2 = std::tgamma(1.0 - 2.0 * xi);
    const double sd_true = psi * std::sqrt(g2 - g1 * g1) / std::fabs(xi);

    double mean = 0.0;
    for (double v : d.x_max) mean += v;
    mean /= d.x_max.size();
    CHECK(std::fabs(mean - mean_true) < 3.0 * sd_true / std::sqrt(20000.0));

    // Binned conditional sd of y near x = 10: close to -0.3 + 0.1*10 = 0.7.
    std::vector<double> bin;
    for (std::size_t i = 0; i < d.x_max.size(); ++i)
        if (std::fabs(d.x_max[i] - 10.0) < 0.25) bin.push_back(d.y[i]);
    REQUIRE(bin.size() > 50);
    double bm = 0.0;
    for (double v : bin) bm += v;
    bm /= bin.size();
    double bs = 0.0;
    for (double v : bin) bs += (v - bm) * (v - bm);
    bs = std::sqrt(bs / (bin.size() - 1.0));
    CHECK(bs == doctest::Approx(0.7).epsilon(0.15));
}

TEST_CASE("inverse-cdf sampling passes ks against the model") {
    int pass = 0;
    const int reps = 20;
    const GevParams p{10.0, 0.5, -0.15};
    for (int rep = 0; rep < reps; ++rep) {
        Xoshiro256pp rng(40 + rep);
        const std::vector<double> x = sample_gev(p, 100000, rng);
        const auto pit = pit_transform(x, [&](double v) { return gev_cdf(v, p); });
        pass += !ks_test_std_normal(pit, 0.01).reject;
    }
    CHECK(pass >= reps * 95 / 100);
}

TEST_CASE("case 2 construction") {
    SimulationConfig cfg = SimulationConfig::case2_defaults();
    cfg.seed = 5;
    const Case2Data d = simulate_case2(cfg);

    CHECK(d.exceedances.size() == 25000);  // fixed-count construction
    CHECK(d.x_max.size() == 1000);
    for (int c : d.counts_per_year) CHECK(c == 25);
    for (double x : d.exceedances) CHECK(x > 2.5);

    // Determinism.
    const Case2Data d2 = simulate_case2(cfg);
    CHECK(d.exceedances == d2.exceedances);
    CHECK(d.z_max == d2.z_max);

    // Poisson-count option: counts vary, mean near lambda.
    SimulationConfig pois = cfg;
    pois.poisson_counts = true;
    const Case2Data dp = simulate_case2(pois);
    double cmean = 0.0;
    bool varies = false;
    for (int c : dp.counts_per_year) {
        cmean += c;
        varies = varies || c != dp.counts_per_year[0];
    }
    cmean /= dp.counts_per_year.size();
    CHECK(varies);
    CHECK(cmean == doctest::Approx(25.0).epsilon(0.02));
}

TEST_CASE("case 2 empirical annual-max cdf tracks the analytic form") {
    const auto sup_distance = [](const std::vector<double>& x_max,
                                 const ParetoPoissonParams& pp) {
        std::vector<double> sorted = x_max;
        std::sort(sorted.begin(), sorted.end());
        double sup = 0.0;
        const double n = static_cast<double>(sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const double f = pp_cdf(sorted[i], pp);
            sup = std::max(sup, std::fabs((i + 1.0) / n - f));
            sup = std::max(sup, std::fabs(f - i / n));
        }
        return sup;
    };

    SimulationConfig cfg = SimulationConfig::case2_defaults();
    cfg.seed = 4;
    CHECK(sup_distance(simulate_case2(cfg).x_max, cfg.pp) <= 0.03);

    // Across seeds, nearly all draws stay inside the 95% DKW band
    // sqrt(ln(2/0.05) / (2n)) = 0.0429 at n = 1000. Poisson counts make the
    // analytic CDF exact; the fixed-count construction adds a small bias.
    cfg.poisson_counts = true;
    int inside = 0;
    const int reps = 12;
    for (int seed = 1; seed <= reps; ++seed) {
        cfg.seed = seed;
        inside += sup_distance(simulate_case2(cfg).x_max, cfg.pp) <= 0.0429;
    }
    CHECK(inside >= reps - 1);
}

TEST_CASE("mixed sampler oracle properties") {
    // Degenerate regression: the sample equals the EV sample.
    MixedModel m = mev::testing::true_case1_model();
    m.reg.beta = {0.0, 0.0, 1e-10, 0.0};
    const std::vector<double> zs = sample_mixed(m, 2000, 21);
    Xoshiro256pp rng(21);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double x = gev_quantile(rng.uniform01(), std::get<GevParams>(m.ev));
        rng.normal();  // consumed by the conditional draw
        // Equal up to the sigma clamp 1e-6 * psi.
        CHECK(std::fabs(zs[i] - x) < 1e-4);
    }

    // Deterministic under fixed seed.
    const MixedModel full = mev::testing::true_case1_model();
    CHECK(sample_mixed(full, 100, 5) == sample_mixed(full, 100, 5));

    // Empirical mean converges to the quadrature moment of f_Z.
    const double zlo = mixed_quantile(1e-9, full);
    const double zhi = mixed_quantile(1.0 - 1e-9, full);
    const double m1 = integrate_or_throw([&](double z) { return z * mixed_pdf(z, full); }, zlo,
                                         zhi, 1e-7, 40000);
    const double m2 = integrate_or_throw(
        [&](double z) { return (z - m1) * (z - m1) * mixed_pdf(z, full); }, zlo, zhi, 1e-7, 40000);
    const std::size_t n = 200000;
    const std::vector<double> draws = sample_mixed(full, n, 9);
    double mean = 0.0;
    for (double v : draws) mean += v;
    mean /= static_cast<double>(n);
    CHECK(std::fabs(mean - m1) < 3.0 * std::sqrt(m2 / static_cast<double>(n)));
}
