#include "mev/evd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// t(x) = [1 + xi*s]_+^(-1/xi), the survival-style kernel shared by the GEV
// and Pareto-Poisson CDFs; s is the standardized coordinate. Returns +inf
// when the clamp triggers on the xi > 0 side (CDF 0) and 0 on the xi < 0
// side (CDF 1).
double ev_kernel(double s, double xi) {
    if (std::fabs(xi) < kXiTol) return std::exp(-s);
    const double arg = 1.0 + xi * s;
    if (arg <= 0.0) return xi > 0 ? kInf : 0.0;
    return std::exp(-std::log1p(xi * s) / xi);
}

void check_probability(double q, const char* who) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error(std::string(who) + ": q must lie in (0,1)");
}

}  // namespace

double GevParams::psi() const { return std::exp(logpsi); }
double ParetoPoissonParams::psi() const { return std::exp(logpsi); }

// --- GEV ---

double gev_cdf(double x, const GevParams& p) {
    const double s = (x - p.mu) / p.psi();
    const double t = ev_kernel(s, p.xi);
    return std::isinf(t) ? 0.0 : std::exp(-t);
}

double gev_pdf(double x, const GevParams& p) {
    const double psi = p.psi();
    const double s = (x - p.mu) / psi;
    if (std::fabs(p.xi) < kXiTol) {
        const double t = std::exp(-s);
        if (std::isinf(t)) return 0.0;  // exp(-t) underflows first
        return t * std::exp(-t) / psi;
    }
    const double arg = 1.0 + p.xi * s;
    if (arg <= 0.0) return 0.0;
    const double t = std::exp(-std::log1p(p.xi * s) / p.xi);
    if (std::isinf(t)) return 0.0;
    // f = t^(xi+1) * exp(-t) / psi
    return std::pow(t, p.xi + 1.0) * std::exp(-t) / psi;
}

double gev_quantile(double q, const GevParams& p) {
    check_probability(q, "gev_quantile");
    const double lnln = std::log(-std::log(q));
    if (std::fabs(p.xi) < kXiTol) return p.mu - p.psi() * lnln;
    // ((-ln q)^(-xi) - 1)/xi stays accurate as expm1(-xi*ln(-ln q))/xi.
    return p.mu + p.psi() * std::expm1(-p.xi * lnln) / p.xi;
}

double gev_loglik(std::span<const double> sample, const GevParams& p) {
    if (sample.empty()) throw std::invalid_argument("gev_loglik: empty sample");
    const double psi = p.psi();
    double ll = -static_cast<double>(sample.size()) * p.logpsi;
    if (std::fabs(p.xi) < kXiTol) {
        for (double x : sample) {
            const double s = (x - p.mu) / psi;
            ll -= s + std::exp(-s);
        }
        return ll;
    }
    const double c = 1.0 + 1.0 / p.xi;
    for (double x : sample) {
        const double s = (x - p.mu) / psi;
        const double arg = 1.0 + p.xi * s;
        if (arg <= 0.0) return -kInf;
        const double lg = std::log1p(p.xi * s);
        ll -= c * lg + std::exp(-lg / p.xi);
    }
    return ll;
}

double gev_support_lower(const GevParams& p) {
    return p.xi > kXiTol ? p.mu - p.psi() / p.xi : -kInf;
}

double gev_support_upper(const GevParams& p) {
    return p.xi < -kXiTol ? p.mu - p.psi() / p.xi : kInf;
}

// --- Pareto-Poisson ---

double pp_cdf(double x, const ParetoPoissonParams& p) {
    const double s = (x - p.u) / p.psi();
    const double t = ev_kernel(s, p.xi);
    return std::isinf(t) ? 0.0 : std::exp(-p.lambda * t);
}

double pp_pdf(double x, const ParetoPoissonParams& p) {
    const double psi = p.psi();
    const double s = (x - p.u) / psi;
    if (std::fabs(p.xi) < kXiTol) {
        const double t = std::exp(-s);
        if (std::isinf(t)) return 0.0;
        return p.lambda / psi * t * std::exp(-p.lambda * t);
    }
    const double arg = 1.0 + p.xi * s;
    if (arg <= 0.0) return 0.0;
    const double lg = std::log1p(p.xi * s);
    const double t = std::exp(-lg / p.xi);
    if (std::isinf(t)) return 0.0;
    // d/dx exp(-lambda * arg^(-1/xi)) = lambda/psi * arg^(-1/xi - 1) * cdf
    return p.lambda / psi * std::exp(-(1.0 + 1.0 / p.xi) * lg) * std::exp(-p.lambda * t);
}

PpQuantile pp_quantile(double q, const ParetoPoissonParams& p) {
    check_probability(q, "pp_quantile");
    if (q <= std::exp(-p.lambda)) return {p.u, true};
    return {pp_quantile_uncensored(q, p), false};
}

double pp_quantile_uncensored(double q, const ParetoPoissonParams& p) {
    check_probability(q, "pp_quantile");
    const double t = -std::log(q) / p.lambda;
    const double lnt = std::log(t);
    if (std::fabs(p.xi) < kXiTol) return p.u - p.psi() * lnt;
    return p.u + p.psi() * std::expm1(-p.xi * lnt) / p.xi;
}

double pp_support_lower(const ParetoPoissonParams& p) {
    return p.xi > kXiTol ? p.u - p.psi() / p.xi : -kInf;
}

double pp_support_upper(const ParetoPoissonParams& p) {
    return p.xi < -kXiTol ? p.u - p.psi() / p.xi : kInf;
}

double gpd_excess_loglik(std::span<const double> excesses, double logpsi, double xi) {
    if (excesses.empty()) throw std::invalid_argument("gpd_excess_loglik: empty sample");
    const double psi = std::exp(logpsi);
    double ll = -static_cast<double>(excesses.size()) * logpsi;
    if (std::fabs(xi) < kXiTol) {
        for (double w : excesses) {
            if (w < 0.0) return -kInf;
            ll -= w / psi;
        }
        return ll;
    }
    const double c = 1.0 + 1.0 / xi;
    for (double w : excesses) {
        if (w < 0.0) return -kInf;
        const double arg = 1.0 + xi * w / psi;
        if (arg <= 0.0) return -kInf;
        ll -= c * std::log1p(xi * w / psi);
    }
    return ll;
}

double pp_loglik(std::span<const double> exceedances, std::span<const int> counts_per_year,
                 const ParetoPoissonParams& p) {
    if (exceedances.empty()) throw std::invalid_argument("pp_loglik: empty sample");
    if (counts_per_year.empty()) throw std::invalid_argument("pp_loglik: no yearly counts");
    if (!(p.lambda > 0.0)) return -kInf;

    std::vector<double> excesses;
    excesses.reserve(exceedances.size());
    for (double x : exceedances) excesses.push_back(x - p.u);

    double ll = gpd_excess_loglik(excesses, p.logpsi, p.xi);
    for (int m : counts_per_year) {
        if (m < 0) throw std::invalid_argument("pp_loglik: negative count");
        ll += m * std::log(p.lambda) - p.lambda - std::lgamma(static_cast<double>(m) + 1.0);
    }
    return ll;
}

// --- Tagged union ---

double ev_cdf(double x, const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_cdf(x, *g);
    return pp_cdf(x, std::get<ParetoPoissonParams>(m));
}

double ev_pdf(double x, const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_pdf(x, *g);
    return pp_pdf(x, std::get<ParetoPoissonParams>(m));
}

double ev_quantile(double q, const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_quantile(q, *g);
    return pp_quantile(q, std::get<ParetoPoissonParams>(m)).value;
}

double ev_quantile_uncensored(double q, const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_quantile(q, *g);
    return pp_quantile_uncensored(q, std::get<ParetoPoissonParams>(m));
}

double ev_support_lower(const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_support_lower(*g);
    return pp_support_lower(std::get<ParetoPoissonParams>(m));
}

double ev_support_upper(const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return gev_support_upper(*g);
    return pp_support_upper(std::get<ParetoPoissonParams>(m));
}

std::size_t ev_param_count(const EvModel&) { return 3; }

std::vector<double> ev_params_vector(const EvModel& m) {
    if (const auto* g = std::get_if<GevParams>(&m)) return {g->mu, g->logpsi, g->xi};
    const auto& p = std::get<ParetoPoissonParams>(m);
    return {p.lambda, p.logpsi, p.xi};
}

EvModel ev_with_params(const EvModel& m, std::span<const double> params) {
    if (params.size() != 3) throw std::invalid_argument("ev_with_params: need 3 parameters");
    if (std::holds_alternative<GevParams>(m))
        return GevParams{params[0], params[1], params[2]};
    auto p = std::get<ParetoPoissonParams>(m);
    p.lambda = params[0];
    p.logpsi = params[1];
    p.xi = params[2];
    return p;
}

}  // namespace mev
