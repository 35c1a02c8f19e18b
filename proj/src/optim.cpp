#include "mev/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nelder-Mead on -f (standard 1/2/0.5/0.5 coefficients). Returns best vertex.
struct SimplexOutcome {
    std::vector<double> x;
    double value;
    int iterations;
};

SimplexOutcome nelder_mead(const ObjectiveFn& f, const std::vector<double>& x0, int max_iter,
                           double tol) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> verts(n + 1, x0);
    for (std::size_t j = 0; j < n; ++j) {
        const double step = 0.05 * std::max(std::fabs(x0[j]), 0.1);
        verts[j + 1][j] += step;
    }
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(verts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] > fv[b]; });
    };

    std::vector<double> centroid(n), trial(n), trial2(n);
    int it = 0;
    for (; it < max_iter; ++it) {
        sort_order();
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        const double fbest = fv[best], fworst = fv[worst];
        if (std::isfinite(fworst)) {
            const double spread = std::fabs(fbest - fworst);
            if (spread <= tol * (std::fabs(fbest) + std::fabs(fworst) + 1e-30) + 1e-300) break;
        }

        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst) s += verts[i][j];
            centroid[j] = s / static_cast<double>(n);
        }

        auto blend = [&](std::vector<double>& out, double coef) {
            for (std::size_t j = 0; j < n; ++j)
                out[j] = centroid[j] + coef * (centroid[j] - verts[worst][j]);
        };

        blend(trial, 1.0);  // reflection
        const double fr = f(trial);
        if (fr > fv[best]) {
            blend(trial2, 2.0);  // expansion
            const double fe = f(trial2);
            if (fe > fr) {
                verts[worst] = trial2;
                fv[worst] = fe;
            } else {
                verts[worst] = trial;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr > fv[second_worst]) {
            verts[worst] = trial;
            fv[worst] = fr;
            continue;
        }
        blend(trial2, fr > fv[worst] ? 0.5 : -0.5);  // outside/inside contraction
        const double fc = f(trial2);
        if (fc > std::max(fr, fv[worst])) {
            verts[worst] = trial2;
            fv[worst] = fc;
            continue;
        }
        // shrink toward best
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j)
                verts[i][j] = verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
            fv[i] = f(verts[i]);
        }
    }
    sort_order();
    return {verts[order[0]], fv[order[0]], it};
}

// Solve H d = g for small dense H via Gauss elimination through invert().
bool solve_linear(const Matrix& h, const std::vector<double>& g, std::vector<double>& d) {
    const auto inv = invert(h);
    if (!inv) return false;
    const std::size_t n = g.size();
    d.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i] += (*inv)(i, j) * g[j];
    return true;
}

}  // namespace

std::vector<double> fd_gradient(const ObjectiveFn& f, std::span<const double> x) {
    std::vector<double> g(x.size());
    std::vector<double> xp(x.begin(), x.end());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double h = 1e-7 * std::max(std::fabs(x[j]), 1.0);
        const double orig = xp[j];
        xp[j] = orig + h;
        const double fp = f(xp);
        xp[j] = orig - h;
        const double fm = f(xp);
        xp[j] = orig;
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Matrix fd_hessian(const ObjectiveFn& f, std::span<const double> x) {
    const std::size_t n = x.size();
    Matrix h(n, n);
    std::vector<double> xp(x.begin(), x.end());
    // eps^(1/4)-scale steps: second differences lose half the mantissa to
    // cancellation at smaller steps.
    std::vector<double> step(n);
    for (std::size_t j = 0; j < n; ++j) step[j] = 1e-4 * std::max(std::fabs(x[j]), 1.0);

    const double f0 = f(xp);
    for (std::size_t i = 0; i < n; ++i) {
        const double oi = xp[i];
        xp[i] = oi + step[i];
        const double fp = f(xp);
        xp[i] = oi - step[i];
        const double fm = f(xp);
        xp[i] = oi;
        h(i, i) = (fp - 2.0 * f0 + fm) / (step[i] * step[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double oi = xp[i], oj = xp[j];
            xp[i] = oi + step[i]; xp[j] = oj + step[j];
            const double fpp = f(xp);
            xp[j] = oj - step[j];
            const double fpm = f(xp);
            xp[i] = oi - step[i]; xp[j] = oj + step[j];
            const double fmp = f(xp);
            xp[j] = oj - step[j];
            const double fmm = f(xp);
            xp[i] = oi; xp[j] = oj;
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * step[i] * step[j]);
            h(i, j) = v;
            h(j, i) = v;
        }
    }
    return h;
}

double scaled_gradient_norm(std::span<const double> grad, std::span<const double> x, double fx) {
    double norm = 0.0;
    for (std::size_t j = 0; j < grad.size(); ++j)
        norm = std::max(norm, std::fabs(grad[j]) * std::max(std::fabs(x[j]), 1.0));
    return norm / std::max(1.0, std::fabs(fx));
}

MaximizeResult maximize(const ObjectiveFn& f, std::vector<double> x0, const MaximizeOptions& opt) {
    MaximizeResult res;
    res.x = std::move(x0);
    res.value = f(res.x);

    for (int r = 0; r <= opt.restarts; ++r) {
        SimplexOutcome out = nelder_mead(f, res.x, opt.simplex_max_iter, opt.simplex_tol);
        res.iterations += out.iterations;
        if (out.value > res.value || !std::isfinite(res.value)) {
            res.x = std::move(out.x);
            res.value = out.value;
        }
        if (out.iterations < opt.simplex_max_iter) break;  // converged, no restart needed
    }

    if (!std::isfinite(res.value)) {
        res.converged = false;
        res.grad_norm = kInf;
        return res;
    }

    // Newton polish with damped steps; falls back to steepest ascent when the
    // Hessian step does not point uphill.
    for (int it = 0; it < opt.newton_max_iter; ++it) {
        std::vector<double> g = fd_gradient(f, res.x);
        res.grad_norm = scaled_gradient_norm(g, res.x, res.value);
        if (res.grad_norm <= opt.grad_tol) break;

        const Matrix h = fd_hessian(f, res.x);
        std::vector<double> d;
        bool have_newton = solve_linear(h, g, d);
        if (have_newton) {
            for (double& v : d) v = -v;  // ascent direction for a concave objective
            double dir = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) dir += d[j] * g[j];
            if (!(dir > 0.0)) have_newton = false;
        }
        if (!have_newton) {
            d = g;
            double gmax = 0.0;
            for (double v : g) gmax = std::max(gmax, std::fabs(v));
            if (gmax == 0.0) break;
            for (double& v : d) v /= gmax;  // unit-ish steepest ascent
        }

        double t = 1.0;
        bool improved = false;
        std::vector<double> xt(res.x.size());
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            for (std::size_t j = 0; j < xt.size(); ++j) xt[j] = res.x[j] + t * d[j];
            const double ft = f(xt);
            if (ft > res.value) {
                res.x = xt;
                res.value = ft;
                improved = true;
                break;
            }
        }
        ++res.iterations;
        if (!improved) break;
    }

    const std::vector<double> g = fd_gradient(f, res.x);
    res.grad_norm = scaled_gradient_norm(g, res.x, res.value);
    res.converged = res.grad_norm <= std::max(opt.grad_tol, 1e-6);
    return res;
}

}  // namespace mev
