#pragma once

#include <cmath>
#include <utility>

#include "mev/errors.hpp"

namespace mev {

struct RootResult {
    double root = 0.0;
    double f_root = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's method: bisection, secant and inverse quadratic interpolation.
/// Requires f(a)*f(b) <= 0. Stops when |f| <= f_tol or the bracket shrinks
/// below x_tol.
template <class F>
RootResult brent(F&& f, double a, double b, double x_tol, double f_tol, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if (fa * fb > 0.0) throw NumericError("brent: root not bracketed");

    double c = a, fc = fa;
    double d = b - a, e = d;
    RootResult res;
    for (int it = 1; it <= max_iter; ++it) {
        res.iterations = it;
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || std::fabs(fb) <= f_tol) {
            res.root = b;
            res.f_root = fb;
            res.converged = true;
            return res;
        }
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
    }
    res.root = b;
    res.f_root = fb;
    res.converged = std::fabs(fb) <= f_tol;
    return res;
}

/// Expand [lo, hi] geometrically about its center until f changes sign
/// across it. Throws after max_doublings.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double lo, double hi, int max_doublings = 60) {
    double flo = f(lo);
    double fhi = f(hi);
    const double center = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);
    for (int i = 0; i < max_doublings; ++i) {
        if (flo == 0.0 || fhi == 0.0 || flo * fhi < 0.0) return {lo, hi};
        half *= 2.0;
        lo = center - half;
        hi = center + half;
        flo = f(lo);
        fhi = f(hi);
    }
    if (flo * fhi <= 0.0) return {lo, hi};
    throw NumericError("expand_bracket: no sign change after maximum expansions");
}

}  // namespace mev
