#pragma once

#include <cstdint>
#include <vector>

#include "mev/evd.hpp"
#include "mev/hetreg.hpp"
#include "mev/mixed.hpp"
#include "mev/rng.hpp"

namespace mev {

enum class SimCase { gev_case1, pareto_poisson_case2, custom };

/// Synthetic-experiment configuration. Defaults reproduce the two reference
/// cases: a GEV(10, exp(0.5), -0.15) reanalysis sample with linear
/// heteroscedastic differences beta = (-0.5, 0.7, -0.3, 0.1), and a
/// Pareto-Poisson sample with lambda = 25, GPD(exp(-0.13), -0.05) over
/// u = 2.5 with beta = (0.16, 0.04, 0.3, 0.06).
struct SimulationConfig {
    SimCase sim_case = SimCase::gev_case1;
    GevParams gev{10.0, 0.5, -0.15};
    ParetoPoissonParams pp{25.0, -0.13, -0.05, 2.5};
    HetRegModel reg{RegFamily::linear, {-0.5, 0.7, -0.3, 0.1}};
    int years = 1000;
    std::uint64_t seed = 1;
    /// Fixed-count construction draws exactly round(lambda) exceedances per
    /// year; switch on for Poisson-distributed annual counts instead.
    bool poisson_counts = false;

    static SimulationConfig case1_defaults();
    static SimulationConfig case2_defaults();
};

struct Case1Data {
    std::vector<double> x_max;
    std::vector<double> y;
    std::vector<double> z_max;  // x_max + y
};

struct Case2Data {
    std::vector<double> exceedances;        // all exceedance values, year order
    std::vector<int> counts_per_year;
    std::vector<double> x_max;              // per-year maximum exceedance
    std::vector<double> y;
    std::vector<double> z_max;
};

/// GEV annual maxima by inverse-CDF sampling plus conditional-normal
/// differences.
Case1Data simulate_case1(const SimulationConfig& config);

/// GPD exceedances over the threshold partitioned into years, annual maxima
/// extracted, differences attached.
Case2Data simulate_case2(const SimulationConfig& config);

/// Brute-force sampler of the mixture: X via the EV inverse CDF, then
/// Z = X + Y with Y | X normal. Oracle companion for mixed_cdf.
std::vector<double> sample_mixed(const MixedModel& m, std::size_t n, std::uint64_t seed);

/// Inverse-CDF samplers shared by the cases and tests.
std::vector<double> sample_gev(const GevParams& p, std::size_t n, Xoshiro256pp& rng);
std::vector<double> sample_gpd_excess(double logpsi, double xi, std::size_t n, Xoshiro256pp& rng);

}  // namespace mev
