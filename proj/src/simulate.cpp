#include "mev/simulate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mev {

namespace {

double draw_gpd_excess(double psi, double xi, Xoshiro256pp& rng) {
    const double u = rng.uniform01();
    if (std::fabs(xi) < kXiTol) return -psi * std::log1p(-u);
    return psi * std::expm1(-xi * std::log1p(-u)) / xi;
}

}  // namespace

SimulationConfig SimulationConfig::case1_defaults() { return SimulationConfig{}; }

SimulationConfig SimulationConfig::case2_defaults() {
    SimulationConfig c;
    c.sim_case = SimCase::pareto_poisson_case2;
    c.reg = HetRegModel{RegFamily::linear, {0.16, 0.04, 0.3, 0.06}};
    return c;
}

std::vector<double> sample_gev(const GevParams& p, std::size_t n, Xoshiro256pp& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = gev_quantile(rng.uniform01(), p);
    return out;
}

std::vector<double> sample_gpd_excess(double logpsi, double xi, std::size_t n, Xoshiro256pp& rng) {
    // Inverse of G(w) = 1 - (1 + xi w / psi)^(-1/xi)
    const double psi = std::exp(logpsi);
    std::vector<double> out(n);
    for (double& v : out) v = draw_gpd_excess(psi, xi, rng);
    return out;
}

Case1Data simulate_case1(const SimulationConfig& config) {
    if (config.years < 1) throw std::invalid_argument("simulate_case1: years must be >= 1");
    Xoshiro256pp rng(config.seed);
    Case1Data d;
    d.x_max = sample_gev(config.gev, static_cast<std::size_t>(config.years), rng);
    d.y.resize(d.x_max.size());
    d.z_max.resize(d.x_max.size());
    for (std::size_t i = 0; i < d.x_max.size(); ++i) {
        const NormalCond c = predict(config.reg, d.x_max[i]);
        if (!(c.sd > 0.0))
            throw std::invalid_argument("simulate_case1: nonpositive conditional sd at sample x");
        d.y[i] = c.mean + c.sd * rng.normal();
        d.z_max[i] = d.x_max[i] + d.y[i];
    }
    return d;
}

Case2Data simulate_case2(const SimulationConfig& config) {
    if (config.years < 1) throw std::invalid_argument("simulate_case2: years must be >= 1");
    if (!(config.pp.lambda > 0.0))
        throw std::invalid_argument("simulate_case2: lambda must be > 0");
    Xoshiro256pp rng(config.seed);
    Case2Data d;
    d.counts_per_year.resize(config.years);
    const int fixed_count = static_cast<int>(std::lround(config.pp.lambda));

    for (int year = 0; year < config.years; ++year) {
        int m;
        if (config.poisson_counts) {
            // Inverse-transform Poisson draw.
            const double u = rng.uniform01();
            double cum = std::exp(-config.pp.lambda);
            double term = cum;
            m = 0;
            while (u > cum && m < 100000) {
                ++m;
                term *= config.pp.lambda / m;
                cum += term;
            }
        } else {
            m = fixed_count;
        }
        d.counts_per_year[year] = m;
        const double psi = config.pp.psi();
        double year_max = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
            const double x = config.pp.u + draw_gpd_excess(psi, config.pp.xi, rng);
            d.exceedances.push_back(x);
            year_max = std::max(year_max, x);
        }
        if (m > 0) d.x_max.push_back(year_max);
    }

    d.y.resize(d.x_max.size());
    d.z_max.resize(d.x_max.size());
    for (std::size_t i = 0; i < d.x_max.size(); ++i) {
        const NormalCond c = predict(config.reg, d.x_max[i]);
        if (!(c.sd > 0.0))
            throw std::invalid_argument("simulate_case2: nonpositive conditional sd at sample x");
        d.y[i] = c.mean + c.sd * rng.normal();
        d.z_max[i] = d.x_max[i] + d.y[i];
    }
    return d;
}

std::vector<double> sample_mixed(const MixedModel& m, std::size_t n, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    const double floor_sd = mixed_sigma_floor(m);
    std::vector<double> out(n);
    for (double& v : out) {
        const double x = ev_quantile_uncensored(rng.uniform01(), m.ev);
        const double sd = std::max(m.reg.sd(x), floor_sd);
        v = x + m.reg.mean(x) + sd * rng.normal();
    }
    return out;
}

}  // namespace mev
