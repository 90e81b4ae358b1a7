#include "upcint/photoproduction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "upcint/photon_flux.hpp"
#include "upcint/quadrature.hpp"

namespace upcint {
namespace {

constexpr double kHbarC = PhysicalConstants::hbar_c;
constexpr double kWsTableStep = 0.25;  // MeV
constexpr double kWsTableMax = 2500.0;

double hard_sphere(double x) {
  if (x < 1e-3) return 1.0 - x * x / 10.0 + x * x * x * x / 280.0;
  return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double woods_saxon_transform(double q, double radius, double diffuseness, double norm) {
  const double kq = q / kHbarC;  // fm^-1
  const double r_max = radius + 25.0 * diffuseness;
  auto integrand = [&](double r) {
    const double rho = 1.0 / (1.0 + std::exp((r - radius) / diffuseness));
    const double j0 = kq * r < 1e-6 ? 1.0 : std::sin(kq * r) / (kq * r);
    return r * r * rho * j0;
  };
  return quad::integrate(integrand, 0.0, r_max, 1e-12, 1e-14 * norm).value / norm;
}

}  // namespace

FormFactorModel FormFactorModel::hard_sphere_yukawa(double radius_fm, double yukawa_range_fm) {
  if (!(radius_fm > 0.0)) throw std::invalid_argument("form factor radius must be > 0");
  FormFactorModel m;
  m.kind_ = FormFactorKind::HardSphereYukawa;
  m.radius_fm_ = radius_fm;
  m.range_fm_ = yukawa_range_fm;
  return m;
}

FormFactorModel FormFactorModel::woods_saxon(double half_density_radius_fm, double diffuseness_fm) {
  if (!(half_density_radius_fm > 0.0 && diffuseness_fm > 0.0))
    throw std::invalid_argument("Woods-Saxon radius and diffuseness must be > 0");
  FormFactorModel m;
  m.kind_ = FormFactorKind::WoodsSaxon;
  m.radius_fm_ = half_density_radius_fm;
  m.range_fm_ = diffuseness_fm;
  auto rho_r2 = [&](double r) {
    return r * r / (1.0 + std::exp((r - half_density_radius_fm) / diffuseness_fm));
  };
  const double norm =
      quad::integrate(rho_r2, 0.0, half_density_radius_fm + 25.0 * diffuseness_fm, 1e-13).value;
  const auto n = static_cast<std::size_t>(kWsTableMax / kWsTableStep) + 1;
  auto table = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i)
    (*table)[i] = woods_saxon_transform(i * kWsTableStep, half_density_radius_fm, diffuseness_fm, norm);
  m.table_ = std::move(table);
  return m;
}

FormFactorModel FormFactorModel::for_nucleus(const NucleusSpec& nucleus, FormFactorKind kind) {
  if (kind == FormFactorKind::HardSphereYukawa)
    return hard_sphere_yukawa(nucleus.radius_fm, nucleus.yukawa_range_fm);
  const double r = nucleus.ws_radius_fm > 0.0 ? nucleus.ws_radius_fm : nucleus.radius_fm;
  return woods_saxon(r, nucleus.ws_diffuseness_fm);
}

double FormFactorModel::operator()(double q) const {
  if (!(q >= 0.0)) throw std::domain_error("form factor: q must be >= 0");
  if (kind_ == FormFactorKind::HardSphereYukawa) {
    const double aq = range_fm_ * q / kHbarC;
    return hard_sphere(q * radius_fm_ / kHbarC) / (1.0 + aq * aq);
  }
  const auto& t = *table_;
  const double pos = q / kWsTableStep;
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= t.size()) return 0.0;
  const double f = pos - static_cast<double>(i);
  return t[i] + f * (t[i + 1] - t[i]);
}

double form_factor(double q_mev, const FormFactorModel& model) { return model(q_mev); }

double GammaACrossSection::sigma_gamma_p(double w_gev) const {
  if (!(w_gev > 0.0)) throw std::domain_error("sigma_gamma_p: W must be > 0");
  double s = params.pomeron_norm_mb * std::pow(w_gev, params.pomeron_eps);
  if (params.meson_norm_mb != 0.0) s += params.meson_norm_mb * std::pow(w_gev, -params.meson_eta);
  return s;
}

double photon_nucleon_w(double k_mev, double gamma_beam) {
  // W^2 = m_N^2 + 2 k (E_N + p_N) for a head-on photon-nucleon collision.
  const double k = k_mev * 1e-3;
  const double e_n = gamma_beam * kNucleonMassGeV;
  const double p_n = kNucleonMassGeV * std::sqrt(std::max(0.0, gamma_beam * gamma_beam - 1.0));
  return std::sqrt(kNucleonMassGeV * kNucleonMassGeV + 2.0 * k * (e_n + p_n));
}

PhotoproductionModel::PhotoproductionModel(BeamConfig beams, MesonSpec meson,
                                           GammaACrossSection xs, FormFactorModel form_factor)
    : beams_(std::move(beams)), meson_(std::move(meson)), xs_(xs), ff_(std::move(form_factor)) {
  beams_.validate();
  meson_.validate();
  a_factor_ = std::pow(static_cast<double>(beams_.nucleus.A), xs_.a_power);
}

PhotoproductionModel::PhotoproductionModel(BeamConfig beams, MesonSpec meson)
    : PhotoproductionModel(
          beams, meson, GammaACrossSection{meson.sigma},
          FormFactorModel::for_nucleus(beams.nucleus, FormFactorKind::HardSphereYukawa)) {}

double PhotoproductionModel::sigma_gamma_a(double k_mev) const {
  double s = a_factor_ * xs_.sigma_gamma_p(photon_nucleon_w(k_mev, gamma()));
  if (xs_.coherence) {
    const double q_l = meson_.mass_mev * meson_.mass_mev / (4.0 * k_mev * gamma());
    const double f = ff_(q_l);
    s *= f * f;
  }
  return s;
}

double PhotoproductionModel::source_weight(double k_mev, double b_fm) const {
  return k_mev * flux_density(k_mev, b_fm, beams_.nucleus) * sigma_gamma_a(k_mev);
}

SourceWeights PhotoproductionModel::source_weights(double y, double b_fm) const {
  const auto k = photon_energies_for_rapidity(y, meson_.mass_mev);
  const double w1 = source_weight(k.k1, b_fm);
  const double w2 = y == 0.0 ? w1 : source_weight(k.k2, b_fm);
  return {w1, w2};
}

double PhotoproductionModel::single_source_amplitude_sq(double pt_mev, double y, double b_fm) const {
  if (!(pt_mev >= 0.0)) throw std::domain_error("pT must be >= 0");
  const double f = ff_(pt_mev);
  return source_weights(y, b_fm).w1 * f * f;
}

AmplitudeRatio PhotoproductionModel::amplitude_ratio_c(double y, double b_fm) const {
  if (!std::isfinite(y)) throw std::domain_error("rapidity must be finite");
  if (y == 0.0) return {1.0, xs_.phase_delta_rad};
  const auto w = source_weights(y, b_fm);
  if (!(w.w1 > 0.0) && !(w.w2 > 0.0))
    throw std::domain_error("amplitude ratio: both sources vanish at this (y, b)");
  return {std::sqrt(w.w2 / w.w1), xs_.phase_delta_rad};
}

}  // namespace upcint
