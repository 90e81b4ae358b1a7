#include "upcint/interference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "upcint/errors.hpp"
#include "upcint/quadrature.hpp"

namespace upcint {
namespace {

constexpr double kHbarC = PhysicalConstants::hbar_c;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Summary of a density p(b) on [lo, hi], integrated in u = ln b over panels of
// width <= du. The median is located by bisection inside its panel.
ImpactParameterSummary summarize(const std::function<double(double)>& density_b, double lo,
                                 double hi, double du) {
  const double u0 = std::log(lo);
  const double u1 = std::log(hi);
  const auto n = static_cast<std::size_t>(std::ceil((u1 - u0) / du));
  auto in_u = [&](double u) {
    const double b = std::exp(u);
    return b * density_b(b);
  };
  auto b_in_u = [&](double u) {
    const double b = std::exp(u);
    return b * b * density_b(b);
  };
  std::vector<double> edges(n + 1);
  for (std::size_t i = 0; i <= n; ++i) edges[i] = u0 + (u1 - u0) * static_cast<double>(i) / n;
  std::vector<double> cumulative(n + 1, 0.0);
  double first_moment = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative[i + 1] = cumulative[i] + quad::integrate(in_u, edges[i], edges[i + 1], 1e-10).value;
    first_moment += quad::integrate(b_in_u, edges[i], edges[i + 1], 1e-10).value;
  }
  const double total = cumulative[n];
  if (!(total > 0.0)) throw NonConvergence("impact-parameter distribution has no weight in window");

  const double half = 0.5 * total;
  const auto it = std::lower_bound(cumulative.begin() + 1, cumulative.end(), half);
  const std::size_t panel = static_cast<std::size_t>(it - cumulative.begin()) - 1;
  double a = edges[panel], c = edges[panel + 1];
  const double target = half - cumulative[panel];
  for (int iter = 0; iter < 60 && c - a > 1e-12; ++iter) {
    const double m = 0.5 * (a + c);
    const double part = quad::integrate(in_u, edges[panel], m, 1e-11).value;
    (part < target ? a : c) = m;
  }
  ImpactParameterSummary s;
  s.median = std::exp(0.5 * (a + c));
  s.mean = first_moment / total;
  s.window = {lo, hi};
  return s;
}

}  // namespace

DecoherenceModel DecoherenceModel::fixed(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument("fixed eta must lie in [0, 1]");
  return {DecoherenceKind::FixedEta, value};
}

DecoherenceModel DecoherenceModel::parse(const std::string& name, double value) {
  if (name == "full_coherence") return full_coherence();
  if (name == "full_decoherence") return full_decoherence();
  if (name == "fixed") return fixed(value);
  if (name == "survival_light_speed") return survival_light_speed();
  if (name == "survival_meson_velocity") return survival_meson_velocity();
  throw std::invalid_argument("unknown decoherence model '" + name + "'");
}

std::string DecoherenceModel::name() const {
  switch (kind) {
    case DecoherenceKind::FullCoherence: return "full_coherence";
    case DecoherenceKind::FullDecoherence: return "full_decoherence";
    case DecoherenceKind::FixedEta: return "fixed";
    case DecoherenceKind::SurvivalLightSpeed: return "survival_light_speed";
    case DecoherenceKind::SurvivalMesonVelocity: return "survival_meson_velocity";
  }
  return "unknown";
}

double eta(double b_fm, const MesonSpec& meson, double omega_mev, double pt_mev,
           const DecoherenceModel& model) {
  if (!(b_fm >= 0.0)) throw std::domain_error("eta: b must be >= 0");
  switch (model.kind) {
    case DecoherenceKind::FullCoherence: return 0.0;
    case DecoherenceKind::FullDecoherence: return 1.0;
    case DecoherenceKind::FixedEta: return model.fixed_eta;
    case DecoherenceKind::SurvivalLightSpeed:
    case DecoherenceKind::SurvivalMesonVelocity: break;
  }
  if (b_fm == 0.0) return 0.0;
  const double ctau = meson.ctau_fm();
  if (!(ctau > 0.0)) return 1.0;
  const double speed_scale =
      model.kind == DecoherenceKind::SurvivalLightSpeed ? omega_mev : pt_mev;
  if (!(speed_scale > 0.0)) {
    if (model.kind == DecoherenceKind::SurvivalLightSpeed)
      throw std::domain_error("eta: meson energy must be > 0");
    return 1.0;
  }
  return -std::expm1(-meson.mass_mev * b_fm / (speed_scale * ctau));
}

double point_rate(const KinematicPoint& kp, const AmplitudeRatio& c, double eta_value,
                  double a1_sq) {
  const double phase = kp.pt * kp.b * std::cos(kp.phi) / kHbarC + c.phase_rad;
  const double m = c.magnitude;
  const double bracket = 1.0 + m * m - 2.0 * m * (1.0 - eta_value) * std::cos(phase);
  return a1_sq * std::max(0.0, bracket);
}

double azimuth_averaged_rate(double pt_mev, double b_fm, const AmplitudeRatio& c,
                             double eta_value, double a1_sq) {
  const double j0 = std::cyl_bessel_j(0.0, pt_mev * b_fm / kHbarC);
  const double m = c.magnitude;
  const double bracket = 1.0 + m * m - 2.0 * m * (1.0 - eta_value) * std::cos(c.phase_rad) * j0;
  return a1_sq * std::max(0.0, bracket);
}

double b_weight(double b_fm, double y, const PhotoproductionModel& model, const BWindow& window) {
  if (!window.contains(b_fm)) return 0.0;
  return model.source_weights(y, b_fm).total();
}

ImpactParameterSummary impact_parameter_summary(const PhotoproductionModel& model, double y,
                                                const BWindow& window) {
  auto density = [&](double b) { return kTwoPi * b * b_weight(b, y, model, window); };
  return summarize(density, window.b_min, window.b_max, 0.05);
}

BWindow resolve_b_window(const PhotoproductionModel& model, double y) {
  const auto& beams = model.beams();
  const double b_min = beams.effective_b_min();
  if (beams.b_max_fm > 0.0) return {b_min, beams.b_max_fm};
  const auto k = photon_energies_for_rapidity(y, model.meson().mass_mev);
  const double cutoff = model.gamma() * kHbarC / std::min(k.k1, k.k2);
  const BWindow provisional{b_min, std::max(20.0 * cutoff, 10.0 * b_min)};
  const double median = impact_parameter_summary(model, y, provisional).median;
  return {b_min, std::max(10.0 * median, 5.0 * cutoff)};
}

ImpactParameterSummary impact_parameter_summary(const PhotoproductionModel& model, double y) {
  return impact_parameter_summary(model, y, resolve_b_window(model, y));
}

ImpactParameterSummary rapidity_integrated_impact_parameter(const PhotoproductionModel& model,
                                                            double y_max) {
  const double gamma = model.gamma();
  if (y_max < 0.0) y_max = std::acosh(std::max(1.0, gamma));
  const double k_mid = 0.5 * model.meson().mass_mev;
  const double lk0 = std::log(k_mid) - y_max;
  const double lk1 = std::log(k_mid) + y_max;
  const auto n_k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((lk1 - lk0) / 0.5)));

  const auto& beams = model.beams();
  const double b_min = beams.effective_b_min();
  const double b_max =
      beams.b_max_fm > 0.0 ? beams.b_max_fm : 5.0 * gamma * kHbarC / std::exp(lk0);

  // Both sources contribute equally once y is integrated symmetrically:
  // sum_i int dy k_i n(k_i) sigma(k_i) = 2 int d(ln k) k n(k) sigma(k).
  auto density = [&](double b) {
    auto integrand = [&](double lk) { return model.source_weight(std::exp(lk), b); };
    double sum = 0.0;
    for (std::size_t i = 0; i < n_k; ++i) {
      const double a = lk0 + (lk1 - lk0) * static_cast<double>(i) / n_k;
      const double c = lk0 + (lk1 - lk0) * static_cast<double>(i + 1) / n_k;
      sum += quad::integrate(integrand, a, c, 1e-9).value;
    }
    return kTwoPi * b * 2.0 * sum;
  };
  return summarize(density, b_min, b_max, 0.05);
}

}  // namespace upcint
