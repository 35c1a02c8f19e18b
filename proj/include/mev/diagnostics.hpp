#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mev/evd.hpp"
#include "mev/hetreg.hpp"

namespace mev {

struct TestReport {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double alpha = 0.05;
    int lag = 0;  // Ljung-Box only
};

struct AcfReport {
    std::vector<int> lags;       // 0..max_lag
    std::vector<double> acf;
    std::vector<double> pacf;    // index 0 kept at 1 for alignment
    double conf_bound = 0.0;     // z_{1-alpha/2} / sqrt(n)
};

/// Probability integral transform: Phi^{-1}(F(x)) with F clamped to
/// [1e-12, 1 - 1e-12]. Standard normal under a correct model.
std::vector<double> pit_transform(std::span<const double> sample,
                                  const std::function<double(double)>& cdf);

/// One-sample Kolmogorov-Smirnov test against the standard normal with the
/// finite-n corrected asymptotic p-value.
TestReport ks_test_std_normal(std::span<const double> sample, double alpha);

/// Sample ACF plus PACF via the Durbin-Levinson recursion.
AcfReport acf_pacf(std::span<const double> sample, int max_lag, double alpha = 0.05);

/// Ljung-Box portmanteau test, one report per requested lag.
std::vector<TestReport> ljung_box(std::span<const double> sample, std::span<const int> lags,
                                  double alpha);

struct PpQqTable {
    std::vector<double> p_plot;      // i/(n+1)
    std::vector<double> p_model;     // F(x_(i))
    std::vector<double> x_sorted;    // x_(i)
    std::vector<double> x_model;     // quantile(p_plot_i)
};

PpQqTable pp_qq_data(std::span<const double> sample, const std::function<double(double)>& cdf,
                     const std::function<double(double)>& quantile);

struct DiagnosticReport {
    std::string target;                  // "ev_fit" or "regression"
    std::vector<double> transformed;     // PIT values / studentized residuals
    TestReport ks;
    std::vector<TestReport> ljung_box;   // lags 1..5
    AcfReport acf;
    PpQqTable ppqq;
    std::string note;
};

/// Section-4 battery for an annual-maximum fit: PIT + KS, ACF/PACF,
/// Ljung-Box at lags 1-5, PP/QQ table.
DiagnosticReport diagnose_ev_fit(std::span<const double> maxima, const EvModel& model,
                                 double alpha);

/// Same battery on the studentized residuals of the regression fit.
DiagnosticReport diagnose_regression(const PairedMaxima& data, const HetRegModel& model,
                                     double alpha);

}  // namespace mev
