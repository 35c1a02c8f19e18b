#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace mev {

/// Shape values closer to zero than this are evaluated on the Gumbel branch;
/// the general-branch power form loses all precision below it.
inline constexpr double kXiTol = 1e-8;

/// GEV(mu, psi, xi) with the scale carried as log(psi) so that every real
/// parameter vector is admissible.
struct GevParams {
    double mu = 0.0;
    double logpsi = 0.0;
    double xi = 0.0;

    double psi() const;
};

/// Annual-maximum law induced by Poisson(lambda) exceedance counts over a
/// fixed threshold u with GPD(psi, xi) excesses.
struct ParetoPoissonParams {
    double lambda = 1.0;  // expected exceedances per year, > 0
    double logpsi = 0.0;
    double xi = 0.0;
    double u = 0.0;  // threshold, fixed input, never estimated

    double psi() const;
};

/// Conditional normal (mean, sd), sd > 0.
struct NormalCond {
    double mean = 0.0;
    double sd = 1.0;
};

// --- GEV ---

double gev_cdf(double x, const GevParams& p);
double gev_pdf(double x, const GevParams& p);
double gev_quantile(double q, const GevParams& p);  // q in (0,1)
double gev_loglik(std::span<const double> sample, const GevParams& p);

/// Finite support endpoints where they exist; -inf/+inf otherwise.
double gev_support_lower(const GevParams& p);
double gev_support_upper(const GevParams& p);

// --- Pareto-Poisson annual maximum ---

double pp_cdf(double x, const ParetoPoissonParams& p);
double pp_pdf(double x, const ParetoPoissonParams& p);

struct PpQuantile {
    double value = 0.0;
    /// Set when q <= exp(-lambda): the CDF floors there and the quantile is
    /// reported as the threshold u.
    bool censored_at_threshold = false;
};
PpQuantile pp_quantile(double q, const ParetoPoissonParams& p);

/// Analytic inversion of the annual-max CDF without the threshold censor.
/// Used internally for integration domains; may return values below u.
double pp_quantile_uncensored(double q, const ParetoPoissonParams& p);

double pp_support_lower(const ParetoPoissonParams& p);
double pp_support_upper(const ParetoPoissonParams& p);

/// Joint log-likelihood of GPD exceedance values and Poisson annual counts.
double pp_loglik(std::span<const double> exceedances, std::span<const int> counts_per_year,
                 const ParetoPoissonParams& p);

/// GPD log-likelihood of the excesses (exceedance - u); the piece of
/// pp_loglik that depends on (logpsi, xi).
double gpd_excess_loglik(std::span<const double> excesses, double logpsi, double xi);

// --- Tagged union over the two annual-maximum families ---

using EvModel = std::variant<GevParams, ParetoPoissonParams>;

double ev_cdf(double x, const EvModel& m);
double ev_pdf(double x, const EvModel& m);
double ev_quantile(double q, const EvModel& m);  // pp side uses the censored value
double ev_quantile_uncensored(double q, const EvModel& m);
double ev_support_lower(const EvModel& m);
double ev_support_upper(const EvModel& m);

/// Number of free parameters (3 for both families; u is fixed).
std::size_t ev_param_count(const EvModel& m);

/// Flat free-parameter view: GEV -> (mu, logpsi, xi);
/// ParetoPoisson -> (lambda, logpsi, xi).
std::vector<double> ev_params_vector(const EvModel& m);
EvModel ev_with_params(const EvModel& m, std::span<const double> params);

}  // namespace mev
