#pragma once

#include <functional>
#include <vector>

namespace upcint::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the Stephens effective-size correction.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample KS test against a continuous CDF.
TestResult ks_one_sample(std::vector<double> data, const std::function<double(double)>& cdf);

/// Upper tail of the chi-square distribution.
double chi2_p_value(double chi2, double dof);

/// Pearson chi-square of observed counts against expected counts (same total).
/// Bins with expectation below `min_expected` are merged into their neighbour.
TestResult chi2_counts(const std::vector<double>& observed, const std::vector<double>& expected,
                       double min_expected = 5.0, int constraints = 1);

}  // namespace upcint::stats
