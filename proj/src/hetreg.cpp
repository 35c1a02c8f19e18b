#include "mev/hetreg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mev/errors.hpp"
#include "mev/special.hpp"

namespace mev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const PairedMaxima& data, RegFamily family, std::size_t min_obs) {
    if (data.x.size() != data.y.size())
        throw std::invalid_argument("hetreg: x and y lengths differ");
    if (data.x.size() < min_obs)
        throw std::invalid_argument("hetreg: sample smaller than configured floor");
    if (family == RegFamily::power)
        for (double x : data.x)
            if (!(x > 0.0))
                throw std::invalid_argument("hetreg: power family requires x > 0");
}

// OLS for the mean part plus the homoscedastic residual sd: a feasible
// interior start for both families.
std::array<double, 4> initial_beta(const PairedMaxima& data, RegFamily family) {
    const std::size_t n = data.x.size();
    double b0, b1;
    if (family == RegFamily::linear) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += data.x[i];
            sy += data.y[i];
            sxx += data.x[i] * data.x[i];
            sxy += data.x[i] * data.y[i];
        }
        const double den = n * sxx - sx * sx;
        b1 = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
        b0 = (sy - b1 * sx) / n;
    } else {
        // Exponent 1 with the through-origin slope as coefficient.
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += data.x[i] * data.y[i];
            sxx += data.x[i] * data.x[i];
        }
        b1 = 1.0;
        b0 = sxx != 0.0 ? sxy / sxx : 0.0;
    }
    HetRegModel m{family, {b0, b1, 1.0, 0.0}};
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = data.y[i] - m.mean(data.x[i]);
        rss += r * r;
    }
    double s = std::sqrt(rss / static_cast<double>(n));
    const double yscale = [&] {
        double a = 0.0;
        for (double y : data.y) a = std::max(a, std::fabs(y));
        return std::max(a, 1e-8);
    }();
    if (!(s > 1e-10 * yscale))
        throw std::invalid_argument("hetreg: degenerate variance (residuals identically zero)");
    return {b0, b1, s, 0.0};
}

}  // namespace

double HetRegModel::mean(double x) const {
    return family == RegFamily::linear ? beta[0] + beta[1] * x : beta[0] * std::pow(x, beta[1]);
}

double HetRegModel::sd(double x) const {
    return family == RegFamily::linear ? beta[2] + beta[3] * x : beta[2] * std::pow(x, beta[3]);
}

double hetreg_loglik(const PairedMaxima& data, RegFamily family, std::span<const double> beta) {
    if (beta.size() != 4) throw std::invalid_argument("hetreg_loglik: beta must have 4 entries");
    HetRegModel m{family, {beta[0], beta[1], beta[2], beta[3]}};
    double ll = 0.0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        const double sd = m.sd(data.x[i]);
        if (!(sd > 0.0)) return -kInf;
        const double r = (data.y[i] - m.mean(data.x[i])) / sd;
        ll -= std::log(sd) + 0.5 * r * r;
    }
    return ll;
}

HetRegFit fit_hetreg(const PairedMaxima& data, RegFamily family, const HetRegOptions& opt) {
    validate(data, family, opt.min_obs);
    const std::array<double, 4> b0 = initial_beta(data, family);

    HetRegFit out;
    out.fit.n_obs = static_cast<int>(data.x.size());

    if (opt.fix_beta3_zero) {
        const ObjectiveFn ll = [&](std::span<const double> th) {
            const double full[4] = {th[0], th[1], th[2], 0.0};
            return hetreg_loglik(data, family, full);
        };
        MaximizeResult r = maximize(ll, {b0[0], b0[1], b0[2]});
        out.model = HetRegModel{family, {r.x[0], r.x[1], r.x[2], 0.0}};
        out.fit.names = {"beta0", "beta1", "beta2"};
        out.fit.estimates = r.x;
        out.fit.loglik = r.value;
        out.fit.converged = r.converged;
        out.fit.iterations = r.iterations;
    } else {
        const ObjectiveFn ll = [&](std::span<const double> th) {
            return hetreg_loglik(data, family, th);
        };
        MaximizeResult r = maximize(ll, {b0[0], b0[1], b0[2], b0[3]});
        out.model = HetRegModel{family, {r.x[0], r.x[1], r.x[2], r.x[3]}};
        out.fit.names = {"beta0", "beta1", "beta2", "beta3"};
        out.fit.estimates = r.x;
        out.fit.loglik = r.value;
        out.fit.converged = r.converged;
        out.fit.iterations = r.iterations;
    }

    // Observed information at the optimum.
    const ObjectiveFn ll_free = [&](std::span<const double> th) {
        if (opt.fix_beta3_zero) {
            const double full[4] = {th[0], th[1], th[2], 0.0};
            return hetreg_loglik(data, family, full);
        }
        return hetreg_loglik(data, family, th);
    };
    const Matrix info = fisher_information(ll_free, out.fit.estimates);
    out.fit.se.assign(out.fit.estimates.size(), 0.0);
    if (is_positive_definite(info)) {
        if (auto cov = invert(info)) {
            out.fit.covariance = symmetrize(*cov);
            out.fit.covariance_valid = true;
            for (std::size_t j = 0; j < out.fit.estimates.size(); ++j)
                out.fit.se[j] = std::sqrt(std::max(0.0, out.fit.covariance(j, j)));
            return out;
        }
    }
    out.fit.covariance = Matrix(out.fit.estimates.size(), out.fit.estimates.size());
    out.fit.covariance_valid = false;
    out.fit.converged = false;
    return out;
}

NormalCond predict(const HetRegModel& model, double x) {
    if (model.family == RegFamily::power && !(x > 0.0))
        throw std::domain_error("predict: power family requires x > 0");
    return {model.mean(x), model.sd(x)};
}

std::vector<double> studentized_residuals(const HetRegModel& model, const PairedMaxima& data) {
    std::vector<double> r(data.x.size());
    for (std::size_t i = 0; i < data.x.size(); ++i)
        r[i] = (data.y[i] - model.mean(data.x[i])) / model.sd(data.x[i]);
    return r;
}

std::vector<RegressionBandPoint> regression_bands(const HetRegModel& model, const FitResult& fit,
                                                  std::span<const double> x_grid, double alpha) {
    if (!fit.covariance_valid) throw NumericError("regression_bands: covariance not available");
    const int dof = fit.n_obs - static_cast<int>(fit.estimates.size()) - 1;
    if (dof <= 0) throw std::invalid_argument("regression_bands: nonpositive degrees of freedom");
    const double t = student_t_quantile(1.0 - 0.5 * alpha, static_cast<double>(dof));

    std::vector<RegressionBandPoint> band;
    band.reserve(x_grid.size());
    for (double x : x_grid) {
        const NormalCond c = predict(model, x);
        // Gradient of f_mu in beta; the sd coefficients do not enter.
        std::vector<double> grad(fit.estimates.size(), 0.0);
        if (model.family == RegFamily::linear) {
            grad[0] = 1.0;
            grad[1] = x;
        } else {
            grad[0] = std::pow(x, model.beta[1]);
            grad[1] = model.beta[0] * std::pow(x, model.beta[1]) * std::log(x);
        }
        const double var_mean = quadratic_form(fit.covariance, grad);
        if (var_mean < -1e-12) throw NumericError("regression_bands: indefinite covariance");
        const double sd_mean = std::sqrt(std::max(0.0, var_mean));
        const double sd_pred = std::sqrt(std::max(0.0, var_mean) + c.sd * c.sd);
        band.push_back({x, c.mean, c.mean - t * sd_mean, c.mean + t * sd_mean,
                        c.mean - t * sd_pred, c.mean + t * sd_pred});
    }
    return band;
}

}  // namespace mev
