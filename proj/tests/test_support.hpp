#pragma once

// Shared fixtures for the test binaries: reference-case simulation plus the
// fit-and-compose pipeline used by the mixed-model and acceptance suites.

#include <cstdint>

#include "mev/fitting.hpp"
#include "mev/hetreg.hpp"
#include "mev/mixed.hpp"
#include "mev/simulate.hpp"

namespace mev::testing {

struct FittedCase1 {
    Case1Data data;
    FitResult ev_fit;       // GEV on x_max
    HetRegFit reg_fit;      // linear family on (x_max, y)
    FitResult gev_z_fit;    // direct GEV on z_max
    MixedModel model;
};

inline FittedCase1 fit_case1(std::uint64_t seed, int years = 1000) {
    SimulationConfig cfg = SimulationConfig::case1_defaults();
    cfg.seed = seed;
    cfg.years = years;
    FittedCase1 out;
    out.data = simulate_case1(cfg);
    out.ev_fit = fit_gev(out.data.x_max);
    PairedMaxima pairs{out.data.x_max, out.data.y, {}};
    out.reg_fit = fit_hetreg(pairs, RegFamily::linear);
    out.gev_z_fit = fit_gev(out.data.z_max);
    out.model = MixedModel{
        GevParams{out.ev_fit.estimates[0], out.ev_fit.estimates[1], out.ev_fit.estimates[2]},
        out.ev_fit.covariance, out.reg_fit.model, out.reg_fit.fit.covariance};
    return out;
}

struct FittedCase2 {
    Case2Data data;
    FitResult ev_fit;       // Pareto-Poisson on exceedances
    HetRegFit reg_fit;
    FitResult gev_z_fit;
    MixedModel model;
    double threshold = 2.5;
};

inline FittedCase2 fit_case2(std::uint64_t seed, int years = 1000) {
    SimulationConfig cfg = SimulationConfig::case2_defaults();
    cfg.seed = seed;
    cfg.years = years;
    FittedCase2 out;
    out.threshold = cfg.pp.u;
    out.data = simulate_case2(cfg);
    out.ev_fit = fit_pareto_poisson(out.data.exceedances, years, cfg.pp.u);
    PairedMaxima pairs{out.data.x_max, out.data.y, {}};
    out.reg_fit = fit_hetreg(pairs, RegFamily::linear);
    out.gev_z_fit = fit_gev(out.data.z_max);
    out.model = MixedModel{
        ParetoPoissonParams{out.ev_fit.estimates[0], out.ev_fit.estimates[1],
                            out.ev_fit.estimates[2], cfg.pp.u},
        out.ev_fit.covariance, out.reg_fit.model, out.reg_fit.fit.covariance};
    return out;
}

/// True-parameter Case-1 model with placeholder covariances; for tests that
/// need the mixture itself rather than fit uncertainty.
inline MixedModel true_case1_model() {
    return MixedModel{GevParams{10.0, 0.5, -0.15}, Matrix::identity(3),
                      HetRegModel{RegFamily::linear, {-0.5, 0.7, -0.3, 0.1}},
                      Matrix::identity(4)};
}

}  // namespace mev::testing
