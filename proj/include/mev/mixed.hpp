#pragma once

#include <span>
#include <vector>

#include "mev/evd.hpp"
#include "mev/hetreg.hpp"
#include "mev/linalg.hpp"

namespace mev {

/// Composition of a fitted annual-maximum model for the reanalysis variable X
/// with the fitted conditional regression for Y = Z - X. The instrumental
/// maximum is Z = X + Y. Parameter covariances ride along for the
/// delta-method bands; the joint covariance is block-diagonal because the
/// two fits use disjoint data channels.
struct MixedModel {
    EvModel ev;
    Matrix ev_cov;  // 3x3 (or 2x2 when xi was fixed at zero)
    HetRegModel reg;
    Matrix reg_cov;  // 4x4 (or 3x3 for a homoscedastic fit)
};

/// F_Z(z): integral of f_X(x) * Phi((z - x - mu(x)) / sigma(x)) over the
/// effective support of f_X, adaptive Gauss-Kronrod to abs tolerance 1e-10.
double mixed_cdf(double z, const MixedModel& m);

/// f_Z(z) with the normal density kernel.
double mixed_pdf(double z, const MixedModel& m);

/// Solves F_Z(z) = q by bracketing around the EV quantile; the residual
/// |F_Z(z) - q| is at most 1e-8 (usually far smaller after Newton cleanup).
double mixed_quantile(double q, const MixedModel& m);

/// dz_q/dgamma for every free parameter (EV parameters first, then beta),
/// by central differences over gamma*(1 +/- eps), eps = 1e-6 (absolute step
/// for parameters at zero).
std::vector<double> quantile_gradient(double q, const MixedModel& m);

struct QuantileBand {
    double z = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Delta-method variance through the block-diagonal joint covariance with a
/// Student-t multiplier on n_obs - n_params - 1 degrees of freedom.
QuantileBand quantile_bands(double q, const MixedModel& m, double alpha, int n_obs);

struct ReturnPeriodEntry {
    double T = 0.0;  // years
    double q = 0.0;  // 1 - 1/T
    double z = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

struct ReturnPeriodCurve {
    std::vector<ReturnPeriodEntry> entries;
};

ReturnPeriodCurve return_period_curve(const MixedModel& m, std::span<const double> T_list,
                                      double alpha, int n_obs);

/// Companion curve for a plain EV fit (closed-form quantiles, delta-method
/// bands from the EV covariance alone). Used for reanalysis-only and
/// direct-GEV-on-z comparison curves.
ReturnPeriodCurve ev_return_period_curve(const EvModel& ev, const Matrix& ev_cov,
                                         std::span<const double> T_list, double alpha, int n_obs);

/// Lower sigma clamp applied inside the mixture integrand, as a fraction of
/// the EV scale psi.
inline constexpr double kSigmaFloorFraction = 1e-6;

/// True when the regression sd is nonpositive somewhere in the quadrature
/// domain, i.e. the clamp is active and a warning is warranted.
bool sigma_clamped_in_domain(const MixedModel& m);

/// The actual clamp value for a given model (fraction of the EV scale).
double mixed_sigma_floor(const MixedModel& m);

}  // namespace mev
