#include "mev/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "mev/errors.hpp"
#include "mev/quadrature.hpp"
#include "mev/root_finding.hpp"
#include "mev/special.hpp"

namespace mev {

namespace {

constexpr double kTailMass = 1e-12;   // EV mass ignored beyond the domain
constexpr double kQuadTol = 1e-10;
constexpr double kSolverTol = 1e-8;   // contract on |F_Z(z) - q|

struct Domain {
    double lo, hi;
};

double ev_scale(const EvModel& ev) {
    if (const auto* g = std::get_if<GevParams>(&ev)) return g->psi();
    return std::get<ParetoPoissonParams>(ev).psi();
}

Domain quadrature_domain(const EvModel& ev) {
    double lo = ev_quantile_uncensored(kTailMass, ev);
    double hi = ev_quantile_uncensored(1.0 - kTailMass, ev);
    lo = std::max(lo, ev_support_lower(ev));
    hi = std::min(hi, ev_support_upper(ev));
    return {lo, hi};
}

double sigma_floor(const MixedModel& m) { return kSigmaFloorFraction * ev_scale(m.ev); }

// x where the normal kernel is centered: x + f_mu(x) = z. When the
// conditional sd is small the integrand is a narrow ridge there that the
// initial Kronrod nodes would miss entirely, so the integration is seeded
// with breakpoints around it.
std::optional<double> kernel_center(const HetRegModel& reg, double z, double lo, double hi) {
    if (reg.family == RegFamily::linear) {
        const double denom = 1.0 + reg.beta[1];
        if (std::fabs(denom) < 1e-12) return std::nullopt;
        const double x = (z - reg.beta[0]) / denom;
        if (x <= lo || x >= hi) return std::nullopt;
        return x;
    }
    const auto h = [&](double x) { return x + reg.mean(x) - z; };
    const double hl = h(lo), hh = h(hi);
    if (hl * hh > 0.0) return std::nullopt;
    return brent(h, lo, hi, 1e-10 * (hi - lo) + 1e-300, 0.0, 100).root;
}

std::vector<double> integration_breakpoints(const MixedModel& m, double z, const Domain& d,
                                            double floor_sd) {
    std::vector<double> pts{d.lo, d.hi};
    if (const auto xc = kernel_center(m.reg, z, d.lo, d.hi)) {
        const double sd = std::max(m.reg.sd(*xc), floor_sd);
        for (double p : {*xc - 8.0 * sd, *xc, *xc + 8.0 * sd})
            if (p > d.lo && p < d.hi) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

double integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& pts,
                        double tol, int max_subintervals) {
    const double per_piece = tol / static_cast<double>(pts.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_or_throw(f, pts[i], pts[i + 1], per_piece, max_subintervals);
    return total;
}

// Free parameter count of the EV part; a reduced covariance marks frozen
// trailing parameters (Gumbel fits carry a 2x2 block).
std::size_t ev_free_params(const MixedModel& m) {
    return m.ev_cov.rows() > 0 ? m.ev_cov.rows() : ev_param_count(m.ev);
}

std::size_t reg_free_params(const MixedModel& m) {
    return m.reg_cov.rows() > 0 ? m.reg_cov.rows() : 4;
}

MixedModel with_parameter(const MixedModel& m, std::size_t index, double value) {
    MixedModel out = m;
    const std::size_t n_ev = ev_free_params(m);
    if (index < n_ev) {
        std::vector<double> th = ev_params_vector(m.ev);
        th[index] = value;
        out.ev = ev_with_params(m.ev, th);
    } else {
        out.reg.beta[index - n_ev] = value;
    }
    return out;
}

double get_parameter(const MixedModel& m, std::size_t index) {
    const std::size_t n_ev = ev_free_params(m);
    if (index < n_ev) return ev_params_vector(m.ev)[index];
    return m.reg.beta[index - n_ev];
}

}  // namespace

double mixed_sigma_floor(const MixedModel& m) { return sigma_floor(m); }

bool sigma_clamped_in_domain(const MixedModel& m) {
    const Domain d = quadrature_domain(m.ev);
    // The sd families are monotone in x, so the endpoints decide.
    return m.reg.sd(d.lo) <= 0.0 || m.reg.sd(d.hi) <= 0.0;
}

double mixed_cdf(double z, const MixedModel& m) {
    const Domain d = quadrature_domain(m.ev);
    const double floor_sd = sigma_floor(m);
    const auto integrand = [&](double x) {
        const double sd = std::max(m.reg.sd(x), floor_sd);
        return ev_pdf(x, m.ev) * std_normal_cdf((z - x - m.reg.mean(x)) / sd);
    };
    const double v =
        integrate_pieces(integrand, integration_breakpoints(m, z, d, floor_sd), kQuadTol, 10000);
    return std::clamp(v, 0.0, 1.0);
}

double mixed_pdf(double z, const MixedModel& m) {
    const Domain d = quadrature_domain(m.ev);
    const double floor_sd = sigma_floor(m);
    const auto integrand = [&](double x) {
        const double sd = std::max(m.reg.sd(x), floor_sd);
        return ev_pdf(x, m.ev) * std_normal_pdf((z - x - m.reg.mean(x)) / sd) / sd;
    };
    const double v =
        integrate_pieces(integrand, integration_breakpoints(m, z, d, floor_sd), kQuadTol, 10000);
    return std::max(v, 0.0);
}

double mixed_quantile(double q, const MixedModel& m) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("mixed_quantile: q must lie in (0,1)");

    const double x_q = ev_quantile_uncensored(q, m.ev);
    const double floor_sd = sigma_floor(m);

    // sigma-bar: largest conditional sd seen over the provisional bracket.
    double sbar = std::max(m.reg.sd(x_q), floor_sd);
    for (double x : {x_q - 10.0 * sbar, x_q + 10.0 * sbar})
        sbar = std::max(sbar, m.reg.sd(x));
    sbar = std::max(sbar, floor_sd);

    const auto g = [&](double z) { return q - mixed_cdf(z, m); };
    auto [lo, hi] = expand_bracket(g, x_q - 10.0 * sbar, x_q + 10.0 * sbar, 60);

    const double xtol = 1e-11 * std::max(1.0, std::fabs(x_q));
    const RootResult root = brent(g, lo, hi, xtol, 0.1 * kSolverTol);
    double z = root.root;
    double res = mixed_cdf(z, m) - q;

    // Newton cleanup pushes the residual to the quadrature floor, which keeps
    // the finite-difference quantile gradients quiet. Steps that do not
    // shrink the residual (flat far tails) are discarded.
    for (int it = 0; it < 6 && std::fabs(res) > 1e-13; ++it) {
        const double dens = mixed_pdf(z, m);
        if (!(dens > 0.0) || !std::isfinite(dens)) break;
        const double z_next = z - res / dens;
        if (!std::isfinite(z_next)) break;
        const double res_next = mixed_cdf(z_next, m) - q;
        if (std::fabs(res_next) >= std::fabs(res)) break;
        z = z_next;
        res = res_next;
    }

    if (std::fabs(res) > kSolverTol)
        throw NumericError("mixed_quantile: solver residual above tolerance");
    return z;
}

std::vector<double> quantile_gradient(double q, const MixedModel& m) {
    constexpr double kEps = 1e-6;
    const std::size_t n = ev_free_params(m) + reg_free_params(m);
    std::vector<double> grad(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double gamma = get_parameter(m, j);
        double up, dn, denom;
        if (gamma == 0.0) {
            up = kEps;
            dn = -kEps;
            denom = 2.0 * kEps;
        } else {
            up = gamma * (1.0 + kEps);
            dn = gamma * (1.0 - kEps);
            denom = 2.0 * kEps * gamma;
        }
        const double zp = mixed_quantile(q, with_parameter(m, j, up));
        const double zm = mixed_quantile(q, with_parameter(m, j, dn));
        grad[j] = (zp - zm) / denom;
    }
    return grad;
}

QuantileBand quantile_bands(double q, const MixedModel& m, double alpha, int n_obs) {
    if (m.ev_cov.empty() || m.reg_cov.empty())
        throw NumericError("quantile_bands: missing parameter covariance");
    const std::size_t n_ev = ev_free_params(m);
    const std::size_t n_reg = reg_free_params(m);

    const std::vector<double> grad = quantile_gradient(q, m);
    const std::vector<double> gev(grad.begin(), grad.begin() + n_ev);
    const std::vector<double> greg(grad.begin() + n_ev, grad.end());
    const double var = quadratic_form(m.ev_cov, gev) + quadratic_form(m.reg_cov, greg);
    if (var < -1e-12) throw NumericError("quantile_bands: negative delta-method variance");

    const int dof = n_obs - static_cast<int>(n_ev + n_reg) - 1;
    if (dof <= 0) throw std::invalid_argument("quantile_bands: nonpositive degrees of freedom");
    const double t = student_t_quantile(1.0 - 0.5 * alpha, static_cast<double>(dof));
    const double sd = std::sqrt(std::max(0.0, var));

    QuantileBand band;
    band.z = mixed_quantile(q, m);
    band.lo = band.z - t * sd;
    band.hi = band.z + t * sd;
    return band;
}

ReturnPeriodCurve return_period_curve(const MixedModel& m, std::span<const double> T_list,
                                      double alpha, int n_obs) {
    ReturnPeriodCurve curve;
    curve.entries.reserve(T_list.size());
    for (double T : T_list) {
        if (!(T > 1.0)) throw std::domain_error("return_period_curve: T must be > 1");
        const double q = 1.0 - 1.0 / T;
        const QuantileBand b = quantile_bands(q, m, alpha, n_obs);
        curve.entries.push_back({T, q, b.z, b.lo, b.hi});
    }
    return curve;
}

ReturnPeriodCurve ev_return_period_curve(const EvModel& ev, const Matrix& ev_cov,
                                         std::span<const double> T_list, double alpha, int n_obs) {
    const std::size_t n_p = ev_cov.rows();
    if (n_p == 0) throw NumericError("ev_return_period_curve: missing covariance");
    const int dof = n_obs - static_cast<int>(n_p) - 1;
    if (dof <= 0)
        throw std::invalid_argument("ev_return_period_curve: nonpositive degrees of freedom");
    const double t = student_t_quantile(1.0 - 0.5 * alpha, static_cast<double>(dof));

    ReturnPeriodCurve curve;
    curve.entries.reserve(T_list.size());
    for (double T : T_list) {
        if (!(T > 1.0)) throw std::domain_error("ev_return_period_curve: T must be > 1");
        const double q = 1.0 - 1.0 / T;
        const double xq = ev_quantile(q, ev);

        // Central-difference gradient of the closed-form quantile.
        constexpr double kEps = 1e-6;
        std::vector<double> grad(n_p);
        std::vector<double> th = ev_params_vector(ev);
        for (std::size_t j = 0; j < n_p; ++j) {
            const double gamma = th[j];
            const double step = gamma == 0.0 ? kEps : kEps * std::fabs(gamma);
            std::vector<double> tp = th, tm = th;
            tp[j] = gamma + step;
            tm[j] = gamma - step;
            grad[j] = (ev_quantile(q, ev_with_params(ev, tp)) -
                       ev_quantile(q, ev_with_params(ev, tm))) /
                      (2.0 * step);
        }
        const double var = quadratic_form(ev_cov, grad);
        const double sd = std::sqrt(std::max(0.0, var));
        curve.entries.push_back({T, q, xq, xq - t * sd, xq + t * sd});
    }
    return curve;
}

}  // namespace mev
