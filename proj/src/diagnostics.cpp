#include "mev/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mev/special.hpp"

namespace mev {

namespace {

const char* kEstimationNote =
    "p-values ignore the effect of parameter estimation on the test statistic";

std::vector<double> sorted_copy(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

std::vector<double> pit_transform(std::span<const double> sample,
                                  const std::function<double(double)>& cdf) {
    std::vector<double> out;
    out.reserve(sample.size());
    for (double x : sample) {
        const double p = std::clamp(cdf(x), 1e-12, 1.0 - 1e-12);
        out.push_back(std_normal_quantile(p));
    }
    return out;
}

TestReport ks_test_std_normal(std::span<const double> sample, double alpha) {
    if (sample.empty()) throw std::invalid_argument("ks_test_std_normal: empty sample");
    const std::vector<double> s = sorted_copy(sample);
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = std_normal_cdf(s[i]);
        d = std::max(d, std::fabs((i + 1.0) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    TestReport r;
    r.name = "ks";
    r.statistic = d;
    r.p_value = kolmogorov_q(lambda);
    r.alpha = alpha;
    r.reject = r.p_value < alpha;
    return r;
}

AcfReport acf_pacf(std::span<const double> sample, int max_lag, double alpha) {
    const int n = static_cast<int>(sample.size());
    if (max_lag >= n) throw std::invalid_argument("acf_pacf: max_lag must be < n");
    if (max_lag < 1) throw std::invalid_argument("acf_pacf: max_lag must be >= 1");

    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= n;
    double denom = 0.0;
    for (double x : sample) denom += (x - mean) * (x - mean);
    if (!(denom > 0.0)) throw std::invalid_argument("acf_pacf: constant sample");

    AcfReport rep;
    rep.lags.resize(max_lag + 1);
    rep.acf.resize(max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) {
        rep.lags[k] = k;
        double s = 0.0;
        for (int t = 0; t + k < n; ++t) s += (sample[t] - mean) * (sample[t + k] - mean);
        rep.acf[k] = s / denom;
    }

    // Durbin-Levinson.
    rep.pacf.assign(max_lag + 1, 0.0);
    rep.pacf[0] = 1.0;
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    double v = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = rep.acf[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * rep.acf[k - j];
        const double a = num / v;
        phi[k] = a;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        rep.pacf[k] = a;
        prev = phi;
    }

    rep.conf_bound = std_normal_quantile(1.0 - 0.5 * alpha) / std::sqrt(static_cast<double>(n));
    return rep;
}

std::vector<TestReport> ljung_box(std::span<const double> sample, std::span<const int> lags,
                                  double alpha) {
    const int n = static_cast<int>(sample.size());
    int max_lag = 0;
    for (int h : lags) {
        if (h < 1) throw std::invalid_argument("ljung_box: lag must be >= 1");
        max_lag = std::max(max_lag, h);
    }
    if (max_lag >= n) throw std::invalid_argument("ljung_box: lag must be < n");

    const AcfReport acf = acf_pacf(sample, max_lag, alpha);
    std::vector<TestReport> out;
    out.reserve(lags.size());
    for (int h : lags) {
        double q = 0.0;
        for (int k = 1; k <= h; ++k) q += acf.acf[k] * acf.acf[k] / (n - k);
        q *= n * (n + 2.0);
        TestReport r;
        r.name = "ljung_box";
        r.lag = h;
        r.statistic = q;
        r.p_value = chi_squared_upper_tail(q, static_cast<double>(h));
        r.alpha = alpha;
        r.reject = r.p_value < alpha;
        out.push_back(r);
    }
    return out;
}

PpQqTable pp_qq_data(std::span<const double> sample, const std::function<double(double)>& cdf,
                     const std::function<double(double)>& quantile) {
    const std::vector<double> s = sorted_copy(sample);
    const double n1 = static_cast<double>(s.size()) + 1.0;
    PpQqTable t;
    t.p_plot.reserve(s.size());
    t.p_model.reserve(s.size());
    t.x_model.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double p = (i + 1.0) / n1;  // Weibull plotting positions
        t.p_plot.push_back(p);
        t.p_model.push_back(cdf(s[i]));
        t.x_model.push_back(quantile(p));
    }
    t.x_sorted = s;
    return t;
}

namespace {

DiagnosticReport battery(std::vector<double> transformed, const char* target, double alpha) {
    DiagnosticReport rep;
    rep.target = target;
    rep.transformed = std::move(transformed);
    rep.ks = ks_test_std_normal(rep.transformed, alpha);
    const int lags[] = {1, 2, 3, 4, 5};
    rep.ljung_box = ljung_box(rep.transformed, lags, alpha);
    const int max_lag = std::min<int>(20, static_cast<int>(rep.transformed.size()) - 1);
    rep.acf = acf_pacf(rep.transformed, max_lag, alpha);
    rep.note = kEstimationNote;
    return rep;
}

}  // namespace

DiagnosticReport diagnose_ev_fit(std::span<const double> maxima, const EvModel& model,
                                 double alpha) {
    DiagnosticReport rep = battery(
        pit_transform(maxima, [&](double x) { return ev_cdf(x, model); }), "ev_fit", alpha);
    rep.ppqq = pp_qq_data(
        maxima, [&](double x) { return ev_cdf(x, model); },
        [&](double p) { return ev_quantile(p, model); });
    return rep;
}

DiagnosticReport diagnose_regression(const PairedMaxima& data, const HetRegModel& model,
                                     double alpha) {
    DiagnosticReport rep = battery(studentized_residuals(model, data), "regression", alpha);
    // Normal-probability plot data for the residuals.
    rep.ppqq = pp_qq_data(
        rep.transformed, [](double x) { return std_normal_cdf(x); },
        [](double p) { return std_normal_quantile(p); });
    return rep;
}

}  // namespace mev
