#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mev/linalg.hpp"

namespace mev {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct MaximizeOptions {
    int simplex_max_iter = 4000;
    double simplex_tol = 1e-12;   // relative spread of simplex function values
    int restarts = 2;             // simplex reruns from the incumbent best
    int newton_max_iter = 40;
    double grad_tol = 1e-8;       // scaled gradient norm for the converged flag
};

struct MaximizeResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0.0;  // scaled, see scaled_gradient_norm
};

/// Central-difference gradient, step 1e-7 * max(|x_j|, 1).
std::vector<double> fd_gradient(const ObjectiveFn& f, std::span<const double> x);

/// Central-difference Hessian, step 1e-4 * max(|x_j|, 1), symmetrized.
Matrix fd_hessian(const ObjectiveFn& f, std::span<const double> x);

/// max_j |g_j| * max(|x_j|, 1) / max(1, |f(x)|): the relative change of the
/// objective under a relative parameter move.
double scaled_gradient_norm(std::span<const double> grad, std::span<const double> x, double fx);

/// Derivative-free simplex ascent followed by a Newton polish with numerical
/// derivatives. The objective may return -inf to mark infeasible points.
MaximizeResult maximize(const ObjectiveFn& f, std::vector<double> x0,
                        const MaximizeOptions& opt = {});

}  // namespace mev
