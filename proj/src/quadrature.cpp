#include "mev/quadrature.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "mev/errors.hpp"

namespace mev {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Interval {
    double a, b;
    double value;
    double error;
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

struct ByError {
    bool operator()(const Interval& x, const Interval& y) const { return x.error < y.error; }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_subintervals) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Interval, std::vector<Interval>, ByError> heap;
    heap.push(gk15(f, a, b));
    double total_error = heap.top().error;
    double total_value = heap.top().value;
    int count = 1;

    while (total_error > abs_tol && count < max_subintervals) {
        const Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; keep its estimate.
            total_error -= worst.error;
            Interval pinned = worst;
            pinned.error = 0.0;
            heap.push(pinned);
            continue;
        }
        const Interval left = gk15(f, worst.a, mid);
        const Interval right = gk15(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }

    res.value = sign * total_value;
    res.abs_error = total_error;
    res.subintervals = count;
    res.converged = total_error <= abs_tol;
    return res;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_subintervals) {
    const QuadratureResult r = integrate(f, a, b, abs_tol, max_subintervals);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge: achieved abs error " << r.abs_error
            << " > tolerance " << abs_tol << " with " << r.subintervals << " subintervals";
        throw NumericError(msg.str());
    }
    return r.value;
}

}  // namespace mev
