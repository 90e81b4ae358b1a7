#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

namespace upcint::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. The interval with the
/// largest error estimate is bisected until the summed error falls below
/// max(abs_tol, rel_tol |I|) or max_segments is reached. Evaluation order is a
/// pure function of the inputs, so results are bitwise reproducible.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                 std::size_t max_segments = 2000) {
  std::vector<detail::Segment> segs;
  segs.push_back(detail::kronrod15(f, a, b));
  std::size_t evaluations = 15;
  auto totals = [&] {
    double v = 0.0, e = 0.0;
    for (const auto& s : segs) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && segs.size() < max_segments) {
    auto worst = std::max_element(segs.begin(), segs.end(),
                                  [](const auto& l, const auto& r) { return l.error < r.error; });
    const detail::Segment s = *worst;
    const double mid = 0.5 * (s.a + s.b);
    *worst = detail::kronrod15(f, s.a, mid);
    segs.push_back(detail::kronrod15(f, mid, s.b));
    evaluations += 30;
    std::tie(value, error) = totals();
  }
  std::sort(segs.begin(), segs.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  std::tie(value, error) = totals();
  return {value, error, evaluations, error <= std::max(abs_tol, rel_tol * std::abs(value))};
}

/// Adaptive integration over consecutive panels [edges[i], edges[i+1]]; the
/// tolerance is shared through the absolute scale `scale` (for integrands
/// whose signed sum may cancel).
template <class F>
Result integrate_panels(F&& f, const std::vector<double>& edges, double rel_tol, double scale) {
  Result total;
  const double panel_abs = rel_tol * std::abs(scale) / std::max<std::size_t>(1, edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto r = integrate(f, edges[i], edges[i + 1], 0.0, panel_abs, 200);
    total.value += r.value;
    total.abs_error += r.abs_error;
    total.evaluations += r.evaluations;
  }
  total.converged = total.abs_error <= rel_tol * std::abs(scale);
  return total;
}

}  // namespace upcint::quad
