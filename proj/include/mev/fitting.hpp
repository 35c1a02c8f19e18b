#pragma once

#include <span>
#include <string>
#include <vector>

#include "mev/evd.hpp"
#include "mev/linalg.hpp"
#include "mev/optim.hpp"

namespace mev {

struct FitResult {
    std::vector<std::string> names;  // parameter labels, estimate order
    std::vector<double> estimates;
    double loglik = 0.0;
    Matrix covariance;        // inverse observed information
    bool covariance_valid = false;
    std::vector<double> se;   // sqrt of covariance diagonal (0 when invalid)
    bool converged = false;
    int iterations = 0;
    int n_obs = 0;
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

/// Observed Fisher information: negative central-difference Hessian of the
/// log-likelihood at theta_hat.
Matrix fisher_information(const ObjectiveFn& loglik, std::span<const double> theta_hat);

/// theta_j -/+ t(1 - alpha/2, n_obs - n_p - 1) * se_j. Throws when the
/// degrees of freedom are not positive or the covariance is invalid.
std::vector<ConfidenceInterval> param_ci(const FitResult& fit, double alpha, int n_obs);

struct FitGevOptions {
    std::size_t min_obs = 10;
    bool fix_xi_zero = false;  // Gumbel: estimate (mu, logpsi) only
};

/// Maximum-likelihood GEV fit; estimates ordered (mu, logpsi, xi).
FitResult fit_gev(std::span<const double> maxima, const FitGevOptions& opt = {});

/// Likelihood-ratio comparison of the full GEV fit against the xi = 0
/// restriction. gumbel_preferred when the restriction is not rejected.
struct GevModelChoice {
    FitResult gev;
    FitResult gumbel;
    double lr_statistic = 0.0;
    double lr_p_value = 1.0;
    bool gumbel_preferred = false;
};
GevModelChoice fit_gev_with_selection(std::span<const double> maxima, double alpha = 0.05);

/// Pareto-Poisson fit: lambda by the closed-form Poisson MLE count/years,
/// (logpsi, xi) by GPD maximum likelihood on the excesses. Estimates ordered
/// (lambda, logpsi, xi); covariance block-diagonal between the two parts.
FitResult fit_pareto_poisson(std::span<const double> exceedances, int years, double u);

/// Generic likelihood-ratio test: 2*(ll_full - ll_restricted) against
/// chi-squared(df).
struct LrTest {
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
};
LrTest lr_test(double loglik_full, double loglik_restricted, int df, double alpha);

}  // namespace mev
