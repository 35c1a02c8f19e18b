#pragma once

#include <array>
#include <span>
#include <vector>

#include "mev/evd.hpp"
#include "mev/fitting.hpp"

namespace mev {

enum class RegFamily { linear, power };

/// Conditional mean/sd model for the instrumental-minus-reanalysis
/// differences: linear  f_mu = b0 + b1*x, f_sigma = b2 + b3*x;
///              power   f_mu = b0 * x^b1, f_sigma = b2 * x^b3.
/// Both collapse to homoscedastic regression at b3 = 0.
struct HetRegModel {
    RegFamily family = RegFamily::linear;
    std::array<double, 4> beta{0.0, 0.0, 1.0, 0.0};

    double mean(double x) const;
    double sd(double x) const;
};

/// Year-aligned reanalysis maxima x and differences y = z - x.
struct PairedMaxima {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<int> years;  // may be empty when unknown
};

struct HetRegOptions {
    std::size_t min_obs = 8;
    bool fix_beta3_zero = false;  // homoscedastic restriction
};

struct HetRegFit {
    HetRegModel model;
    FitResult fit;  // estimates ordered (beta0, beta1, beta2, beta3)
};

/// Heteroscedastic-normal log-likelihood of the data under beta, -inf when
/// f_sigma is nonpositive anywhere on the sample.
double hetreg_loglik(const PairedMaxima& data, RegFamily family, std::span<const double> beta);

HetRegFit fit_hetreg(const PairedMaxima& data, RegFamily family, const HetRegOptions& opt = {});

NormalCond predict(const HetRegModel& model, double x);

/// (y_i - f_mu(x_i)) / sqrt(Omega_ii) with Omega_ii approximated by
/// f_sigma(x_i)^2 (parameter-estimation inflation ignored).
std::vector<double> studentized_residuals(const HetRegModel& model, const PairedMaxima& data);

struct RegressionBandPoint {
    double x = 0.0;
    double mean = 0.0;
    double mean_lo = 0.0;
    double mean_hi = 0.0;
    double pred_lo = 0.0;
    double pred_hi = 0.0;
};

/// Delta-method band for the mean response plus a prediction band that adds
/// the conditional variance before the t multiplier.
std::vector<RegressionBandPoint> regression_bands(const HetRegModel& model, const FitResult& fit,
                                                  std::span<const double> x_grid, double alpha);

}  // namespace mev
