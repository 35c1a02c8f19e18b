#include "mev/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mev {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double horner(const double* c, int n, double x) {
    double r = c[n - 1];
    for (int i = n - 2; i >= 0; --i) r = r * x + c[i];
    return r;
}

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double std_normal_pdf(double x) {
    if (std::isinf(x)) return 0.0;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("std_normal_quantile: q must lie in (0,1)");

    // Wichura (1988), algorithm AS 241, PPND16.
    static const double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static const double b[8] = {
        1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static const double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static const double d[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static const double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double f[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const double p = q - 0.5;
    if (std::fabs(p) <= 0.425) {
        const double r = 0.180625 - p * p;
        return p * horner(a, 8, r) / horner(b, 8, r);
    }
    double r = p < 0 ? q : 1.0 - q;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = horner(c, 8, r) / horner(d, 8, r);
    } else {
        r -= 5.0;
        value = horner(e, 8, r) / horner(f, 8, r);
    }
    return p < 0 ? -value : value;
}

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("regularized_gamma_p: require a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("regularized_gamma_q: require a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("incomplete_beta: require a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double chi_squared_upper_tail(double x, double dof) {
    if (!(dof > 0.0)) throw std::domain_error("chi_squared_upper_tail: dof must be > 0");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

double student_t_cdf(double x, double dof) {
    if (!(dof > 0.0)) throw std::domain_error("student_t_cdf: dof must be > 0");
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double ib = incomplete_beta(0.5 * dof, 0.5, dof / (dof + x * x));
    return x >= 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double student_t_quantile(double q, double dof) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("student_t_quantile: q must lie in (0,1)");
    if (!(dof > 0.0)) throw std::domain_error("student_t_quantile: dof must be > 0");
    if (q == 0.5) return 0.0;
    if (q < 0.5) return -student_t_quantile(1.0 - q, dof);

    // Bracket above the normal quantile, then bisect/secant on the CDF.
    double lo = 0.0;
    double hi = std::max(1.0, 2.0 * std_normal_quantile(q));
    while (student_t_cdf(hi, dof) < q) {
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fm = student_t_cdf(x, dof) - q;
        if (std::fabs(fm) < 1e-14 || hi - lo < 1e-13 * std::max(1.0, hi)) break;
        if (fm > 0.0)
            hi = x;
        else
            lo = x;
        x = 0.5 * (lo + hi);
    }
    return x;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Complementary series converges fast for small lambda.
        const double t = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
        const double cdf = std::sqrt(2.0 * M_PI) / lambda *
                           (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
        return std::min(1.0, std::max(0.0, 1.0 - cdf));
    }
    const double t = std::exp(-2.0 * lambda * lambda);
    const double q = 2.0 * (t - std::pow(t, 4.0) + std::pow(t, 9.0) - std::pow(t, 16.0));
    return std::min(1.0, std::max(0.0, q));
}

}  // namespace mev
