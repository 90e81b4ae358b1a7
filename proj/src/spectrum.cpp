#include "upcint/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "upcint/errors.hpp"
#include "upcint/parallel.hpp"
#include "upcint/quadrature.hpp"

namespace upcint {
namespace {

constexpr double kHbarC = PhysicalConstants::hbar_c;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxLogStep = 0.25;
constexpr double kPanelTol = 1e-7;

}  // namespace

void PtGrid::validate() const {
  if (!(pt_min >= 0.0)) throw std::invalid_argument("pT grid: pt_min must be >= 0");
  if (!(pt_max > pt_min)) throw std::invalid_argument("pT grid: pt_max must exceed pt_min");
  if (n_bins < 1) throw std::invalid_argument("pT grid: n_bins must be >= 1");
}

std::vector<double> PtGrid::edges() const {
  validate();
  std::vector<double> e(static_cast<std::size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i) e[i] = pt_min + (pt_max - pt_min) * i / n_bins;
  return e;
}

std::vector<double> PtGrid::centers() const {
  const auto e = edges();
  std::vector<double> c(e.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (e[i] + e[i + 1]);
  return c;
}

SpectrumEngine::SpectrumEngine(const PhotoproductionModel& model, double y)
    : SpectrumEngine(model, y, resolve_b_window(model, y)) {}

SpectrumEngine::SpectrumEngine(const PhotoproductionModel& model, double y, const BWindow& window)
    : model_(model), y_(y), window_(window) {
  if (!(window.b_min > 0.0 && window.b_max > window.b_min))
    throw std::invalid_argument("spectrum: empty impact-parameter window");
  auto integrand = [&](double u) {
    const double b = std::exp(u);
    return kTwoPi * b * b * model_.source_weights(y_, b).total();
  };
  const double u0 = std::log(window.b_min), u1 = std::log(window.b_max);
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((u1 - u0) / kMaxLogStep)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = quad::integrate(integrand, u0 + (u1 - u0) * i / n, u0 + (u1 - u0) * (i + 1) / n,
                                   1e-11, 0.0, 200);
    n_total_ += r.value;
    n_error_ += r.abs_error;
  }
  if (!(n_total_ > 0.0)) throw NonConvergence("spectrum: production weight vanishes in b window");
}

SpectrumEngine::CrossTerm SpectrumEngine::cross_term(double pt, const DecoherenceModel& dec) const {
  if (dec.kind == DecoherenceKind::FullDecoherence ||
      (dec.kind == DecoherenceKind::FixedEta && dec.fixed_eta == 1.0))
    return {};
  const double cos_delta = std::cos(model_.cross_section().phase_delta_rad);
  const double mass = model_.meson().mass_mev;
  const double omega = std::sqrt(mass * mass + pt * pt) * std::cosh(y_);
  auto integrand = [&](double u) {
    const double b = std::exp(u);
    const auto w = model_.source_weights(y_, b);
    const double e = eta(b, model_.meson(), omega, pt, dec);
    const double j0 = std::cyl_bessel_j(0.0, pt * b / kHbarC);
    return kTwoPi * b * b * 2.0 * std::sqrt(w.w1 * w.w2) * (1.0 - e) * cos_delta * j0;
  };
  // Panels: at most kMaxLogStep in ln b and half a J0 oscillation in b.
  std::vector<double> edges{std::log(window_.b_min)};
  double b = window_.b_min;
  const double phase_step = pt > 0.0 ? std::numbers::pi * kHbarC / pt : window_.b_max;
  while (b < window_.b_max) {
    b = std::min({b * std::exp(kMaxLogStep), b + phase_step, window_.b_max});
    edges.push_back(std::log(b));
  }
  const auto r = quad::integrate_panels(integrand, edges, kPanelTol, n_total_);
  return {r.value, r.abs_error};
}

SpectrumPoint SpectrumEngine::evaluate(double pt, const DecoherenceModel& dec) const {
  if (!(pt >= 0.0)) throw std::domain_error("spectrum: pT must be >= 0");
  const auto c = cross_term(pt, dec);
  const double rel_error = (n_error_ + c.abs_error) / n_total_;
  if (rel_error > kMaxRelError)
    throw NonConvergence(fmt::format(
        "b quadrature did not converge at pT = {} MeV: estimated relative error {:.3g}", pt,
        rel_error));
  const double f = model_.form_factor()(pt);
  SpectrumPoint p;
  p.pt = pt;
  p.rate_no_interf = f * f * n_total_;
  p.rate_interf = f * f * std::max(0.0, n_total_ - c.value);
  p.ratio = std::max(0.0, n_total_ - c.value) / n_total_;
  p.rel_error = rel_error;
  return p;
}

SpectrumTable SpectrumEngine::pt_spectrum(const PtGrid& grid, const DecoherenceModel& dec,
                                          bool normalize_fig2, unsigned threads) const {
  SpectrumTable t;
  t.edges = grid.edges();
  t.pt = grid.centers();
  const std::size_t n = t.pt.size();
  std::vector<SpectrumPoint> points(n);
  parallel_for(n, threads, [&](std::size_t i) { points[i] = evaluate(t.pt[i], dec); });

  // F(0) = 1, so the no-interference rate at pT = 0 is the bare b-integral.
  t.fig2_normalized = normalize_fig2;
  t.normalization = normalize_fig2 ? n_total_ : 1.0;
  for (const auto& p : points) {
    t.rate_interf.push_back(p.rate_interf / t.normalization);
    t.rate_no_interf.push_back(p.rate_no_interf / t.normalization);
    t.ratio.push_back(p.ratio);
    t.max_rel_error = std::max(t.max_rel_error, p.rel_error);
  }
  return t;
}

double SpectrumEngine::dip_depth(const DecoherenceModel& dec) const {
  return 1.0 - evaluate(0.0, dec).ratio;
}

double SpectrumEngine::pt_integrated_rate(double lo, double hi, const DecoherenceModel& dec,
                                          bool with_interference) const {
  if (!(lo >= 0.0 && hi >= lo)) throw std::domain_error("pT range must satisfy 0 <= lo <= hi");
  auto integrand = [&](double pt) {
    const auto p = evaluate(pt, dec);
    return kTwoPi * pt * (with_interference ? p.rate_interf : p.rate_no_interf);
  };
  if (!with_interference) {
    auto ff_only = [&](double pt) {
      const double f = model_.form_factor()(pt);
      return kTwoPi * pt * f * f * n_total_;
    };
    return quad::integrate(ff_only, lo, hi, 1e-10).value;
  }
  return quad::integrate(integrand, lo, hi, 1e-6, 0.0, 200).value;
}

}  // namespace upcint
