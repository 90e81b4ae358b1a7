#include "upcint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

namespace upcint::stats {

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double stephens(double d, double n_eff) {
  const double s = std::sqrt(n_eff);
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

}  // namespace

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, stephens(d, na * nb / (na + nb))};
}

TestResult ks_one_sample(std::vector<double> data, const std::function<double(double)>& cdf) {
  if (data.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, stephens(d, n)};
}

double chi2_p_value(double chi2, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi2_p_value: dof must be > 0");
  if (chi2 <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * chi2);
}

TestResult chi2_counts(const std::vector<double>& observed, const std::vector<double>& expected,
                       double min_expected, int constraints) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("chi2_counts: size mismatch");
  std::vector<std::pair<double, double>> merged;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += observed[i];
    e_acc += expected[i];
    if (e_acc >= min_expected) {
      merged.emplace_back(o_acc, e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (merged.empty()) merged.emplace_back(0.0, 0.0);
    merged.back().first += o_acc;
    merged.back().second += e_acc;
  }
  double chi2 = 0.0;
  for (const auto& [o, e] : merged)
    if (e > 0.0) chi2 += (o - e) * (o - e) / e;
  const int bins = static_cast<int>(merged.size());
  const double dof = std::max(1, bins - constraints);
  return {chi2, chi2_p_value(chi2, dof)};
}

}  // namespace upcint::stats
