#pragma once

#include <functional>

namespace mev {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated Gauss/Kronrod discrepancy
    int subintervals = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod 7/15 integration of f over [a, b]:
/// the interval with the largest error estimate is bisected until the total
/// estimate drops below abs_tol or max_subintervals is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, int max_subintervals = 10000);

/// As integrate(), but throws mev::NumericError (with the achieved estimate
/// in the message) instead of returning converged = false.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_subintervals = 10000);

}  // namespace mev
