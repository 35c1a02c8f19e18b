#pragma once

namespace mev {

// Standard normal kernels. The quantile is Wichura's PPND16 rational
// approximation (absolute error below 1e-15 on (0,1)).
double std_normal_pdf(double x);
double std_normal_cdf(double x);
double std_normal_quantile(double q);  // throws std::domain_error outside (0,1)

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a,b).
double incomplete_beta(double a, double b, double x);

// Upper tail of the chi-squared distribution with dof degrees of freedom.
double chi_squared_upper_tail(double x, double dof);

// Student's t CDF and quantile, dof > 0. The quantile inverts the
// incomplete-beta CDF by bracketed root finding.
double student_t_cdf(double x, double dof);
double student_t_quantile(double q, double dof);

// Complementary Kolmogorov statistic distribution
// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// with the dual series used for small lambda.
double kolmogorov_q(double lambda);

}  // namespace mev
