#include "mev/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mev/errors.hpp"
#include "mev/special.hpp"

namespace mev {

namespace {

constexpr double kEulerGamma = 0.5772156649015329;

double sample_mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Attach covariance/standard errors from the observed information at the
// optimum; flips converged off when the information is not positive definite.
void finish_fit(FitResult& fit, const ObjectiveFn& loglik) {
    const Matrix info = fisher_information(loglik, fit.estimates);
    fit.se.assign(fit.estimates.size(), 0.0);
    if (is_positive_definite(info)) {
        if (auto cov = invert(info)) {
            fit.covariance = symmetrize(*cov);
            fit.covariance_valid = true;
            for (std::size_t j = 0; j < fit.estimates.size(); ++j)
                fit.se[j] = std::sqrt(std::max(0.0, fit.covariance(j, j)));
            return;
        }
    }
    fit.covariance = Matrix(fit.estimates.size(), fit.estimates.size());
    fit.covariance_valid = false;
    fit.converged = false;
}

}  // namespace

Matrix fisher_information(const ObjectiveFn& loglik, std::span<const double> theta_hat) {
    Matrix h = fd_hessian(loglik, theta_hat);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = -h(i, j);
    return symmetrize(h);
}

std::vector<ConfidenceInterval> param_ci(const FitResult& fit, double alpha, int n_obs) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("param_ci: alpha must lie in (0,1)");
    if (!fit.covariance_valid) throw NumericError("param_ci: covariance not available");
    const int dof = n_obs - static_cast<int>(fit.estimates.size()) - 1;
    if (dof <= 0) throw std::invalid_argument("param_ci: nonpositive degrees of freedom");
    const double t = student_t_quantile(1.0 - 0.5 * alpha, static_cast<double>(dof));
    std::vector<ConfidenceInterval> cis;
    cis.reserve(fit.estimates.size());
    for (std::size_t j = 0; j < fit.estimates.size(); ++j)
        cis.push_back({fit.estimates[j] - t * fit.se[j], fit.estimates[j] + t * fit.se[j],
                       1.0 - alpha});
    return cis;
}

FitResult fit_gev(std::span<const double> maxima, const FitGevOptions& opt) {
    if (maxima.size() < opt.min_obs)
        throw std::invalid_argument("fit_gev: sample smaller than configured floor");
    const double sd = sample_sd(maxima);
    if (!(sd > 0.0)) throw std::invalid_argument("fit_gev: degenerate (constant) sample");

    // Gumbel moment start.
    const double psi0 = sd * std::sqrt(6.0) / M_PI;
    const double mu0 = sample_mean(maxima) - kEulerGamma * psi0;
    const double logpsi0 = std::log(psi0);

    std::vector<double> data(maxima.begin(), maxima.end());
    FitResult fit;
    fit.n_obs = static_cast<int>(maxima.size());

    if (opt.fix_xi_zero) {
        const ObjectiveFn ll = [&data](std::span<const double> th) {
            return gev_loglik(data, GevParams{th[0], th[1], 0.0});
        };
        MaximizeResult best = maximize(ll, {mu0, logpsi0});
        fit.names = {"mu", "logpsi"};
        fit.estimates = best.x;
        fit.loglik = best.value;
        fit.converged = best.converged;
        fit.iterations = best.iterations;
        finish_fit(fit, ll);
        return fit;
    }

    const ObjectiveFn ll = [&data](std::span<const double> th) {
        return gev_loglik(data, GevParams{th[0], th[1], th[2]});
    };
    MaximizeResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (double xi0 : {0.1, -0.1}) {
        MaximizeResult r = maximize(ll, {mu0, logpsi0, xi0});
        if (r.value > best.value) best = std::move(r);
    }
    fit.names = {"mu", "logpsi", "xi"};
    fit.estimates = best.x;
    fit.loglik = best.value;
    fit.converged = best.converged;
    fit.iterations = best.iterations;
    finish_fit(fit, ll);
    return fit;
}

GevModelChoice fit_gev_with_selection(std::span<const double> maxima, double alpha) {
    GevModelChoice choice;
    choice.gev = fit_gev(maxima);
    FitGevOptions gopt;
    gopt.fix_xi_zero = true;
    choice.gumbel = fit_gev(maxima, gopt);
    const LrTest lr = lr_test(choice.gev.loglik, choice.gumbel.loglik, 1, alpha);
    choice.lr_statistic = lr.statistic;
    choice.lr_p_value = lr.p_value;
    choice.gumbel_preferred = !lr.reject;
    return choice;
}

FitResult fit_pareto_poisson(std::span<const double> exceedances, int years, double u) {
    if (exceedances.empty()) throw std::invalid_argument("fit_pareto_poisson: no exceedances");
    if (years < 1) throw std::invalid_argument("fit_pareto_poisson: years must be >= 1");
    std::vector<double> excesses;
    excesses.reserve(exceedances.size());
    for (double x : exceedances) {
        if (!(x > u))
            throw std::invalid_argument("fit_pareto_poisson: exceedance at or below threshold");
        excesses.push_back(x - u);
    }

    const double n = static_cast<double>(exceedances.size());
    const double lambda_hat = n / static_cast<double>(years);

    // GPD start: exponential fit (xi = 0) at the mean excess.
    const double mean_excess = sample_mean(excesses);
    const ObjectiveFn gpd_ll = [&excesses](std::span<const double> th) {
        return gpd_excess_loglik(excesses, th[0], th[1]);
    };
    MaximizeResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (double xi0 : {0.1, -0.1}) {
        MaximizeResult r = maximize(gpd_ll, {std::log(mean_excess), xi0});
        if (r.value > best.value) best = std::move(r);
    }

    FitResult fit;
    fit.names = {"lambda", "logpsi", "xi"};
    fit.estimates = {lambda_hat, best.x[0], best.x[1]};
    fit.converged = best.converged;
    fit.iterations = best.iterations;
    fit.n_obs = static_cast<int>(exceedances.size());
    // Poisson piece up to the count-dependent constant.
    fit.loglik = best.value + n * std::log(lambda_hat) - lambda_hat * years;

    // Block-diagonal covariance: Poisson information n/lambda^2, GPD block
    // from the observed information of the excess likelihood.
    const Matrix gpd_info = fisher_information(gpd_ll, best.x);
    fit.covariance = Matrix(3, 3);
    fit.covariance(0, 0) = lambda_hat * lambda_hat / n;
    fit.se.assign(3, 0.0);
    if (is_positive_definite(gpd_info)) {
        if (auto cov = invert(gpd_info)) {
            const Matrix c = symmetrize(*cov);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) fit.covariance(i + 1, j + 1) = c(i, j);
            fit.covariance_valid = true;
            fit.se[0] = std::sqrt(fit.covariance(0, 0));
            fit.se[1] = std::sqrt(std::max(0.0, fit.covariance(1, 1)));
            fit.se[2] = std::sqrt(std::max(0.0, fit.covariance(2, 2)));
            return fit;
        }
    }
    fit.covariance_valid = false;
    fit.converged = false;
    return fit;
}

LrTest lr_test(double loglik_full, double loglik_restricted, int df, double alpha) {
    LrTest t;
    t.statistic = std::max(0.0, 2.0 * (loglik_full - loglik_restricted));
    t.p_value = chi_squared_upper_tail(t.statistic, static_cast<double>(df));
    t.reject = t.p_value < alpha;
    return t;
}

}  // namespace mev
