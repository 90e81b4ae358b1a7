#include "upcint/constants.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace upcint {

void NucleusSpec::validate() const {
  if (Z < 1) throw std::invalid_argument("nucleus " + name + ": Z must be >= 1");
  if (A < Z) throw std::invalid_argument("nucleus " + name + ": A must be >= Z");
  if (!(radius_fm > 0.0)) throw std::invalid_argument("nucleus " + name + ": R_A must be > 0");
  if (!(yukawa_range_fm >= 0.0))
    throw std::invalid_argument("nucleus " + name + ": yukawa range must be >= 0");
  if (!(gamma_beam >= 1.0)) throw std::invalid_argument("nucleus " + name + ": gamma must be >= 1");
}

double DecayChannel::mass_sum() const {
  return std::accumulate(product_masses.begin(), product_masses.end(), 0.0);
}

double MesonSpec::ctau_fm() const { return lifetime_s * PhysicalConstants::c_light; }

double MesonSpec::other_fraction() const {
  double sum = 0.0;
  for (const auto& ch : channels) sum += ch.fraction;
  return std::max(0.0, 1.0 - sum);
}

const DecayChannel& MesonSpec::channel(const std::string& id) const {
  for (const auto& ch : channels)
    if (ch.id == id) return ch;
  throw std::out_of_range("meson " + name + " has no channel '" + id + "'");
}

void MesonSpec::validate() const {
  if (!(mass_mev > 0.0)) throw std::invalid_argument("meson " + name + ": mass must be > 0");
  if (!(lifetime_s >= 0.0)) throw std::invalid_argument("meson " + name + ": lifetime must be >= 0");
  double sum = 0.0;
  for (const auto& ch : channels) {
    if (!(ch.fraction > 0.0 && ch.fraction <= 1.0))
      throw std::invalid_argument("meson " + name + ", channel " + ch.id +
                                  ": branching fraction outside (0,1]");
    if (ch.product_masses.size() < 2 || ch.product_masses.size() > 3)
      throw std::invalid_argument("meson " + name + ", channel " + ch.id +
                                  ": only 2- and 3-body channels are supported");
    if (!(ch.mass_sum() < mass_mev))
      throw std::invalid_argument("meson " + name + ", channel " + ch.id +
                                  ": products are above the decay threshold");
    sum += ch.fraction;
  }
  if (sum > 1.0 + 1e-12)
    throw std::invalid_argument("meson " + name + ": branching fractions sum above 1");
}

double BeamConfig::effective_b_min() const {
  if (b_min_fm > 0.0) return b_min_fm;
  return hadronic_exclusion ? 2.0 * nucleus.radius_fm : 0.1;
}

void BeamConfig::validate() const {
  nucleus.validate();
  if (hadronic_exclusion && effective_b_min() < 2.0 * nucleus.radius_fm - 1e-12)
    throw std::invalid_argument("b_min must be >= 2 R_A when hadronic exclusion is on");
  if (effective_b_min() < 0.1) throw std::invalid_argument("b_min below 0.1 fm");
  if (b_max_fm > 0.0 && b_max_fm <= effective_b_min())
    throw std::invalid_argument("b_max must exceed b_min");
}

BeamConfig make_beam(NucleusSpec nucleus, double sqrt_s_nn_gev, bool hadronic_exclusion) {
  BeamConfig beam;
  nucleus.gamma_beam = lorentz_gamma(sqrt_s_nn_gev);
  beam.nucleus = std::move(nucleus);
  beam.sqrt_s_nn_gev = sqrt_s_nn_gev;
  beam.hadronic_exclusion = hadronic_exclusion;
  return beam;
}

double lorentz_gamma(double sqrt_s_nn_gev, double nucleon_mass_gev) {
  if (!(nucleon_mass_gev > 0.0)) throw std::invalid_argument("nucleon mass must be positive");
  if (!(sqrt_s_nn_gev >= 2.0 * nucleon_mass_gev))
    throw std::domain_error("sqrt_s_NN below the 2 m_N threshold");
  return sqrt_s_nn_gev / (2.0 * nucleon_mass_gev);
}

double decay_distance(const MesonSpec& meson, const NucleusSpec& nucleus) {
  return 2.0 * PhysicalConstants::hbar_c * meson.ctau_fm() / (nucleus.radius_fm * meson.mass_mev);
}

PhotonEnergies photon_energies_for_rapidity(double y, double meson_mass_mev) {
  const double half = 0.5 * meson_mass_mev;
  return {half * std::exp(y), half * std::exp(-y)};
}

}  // namespace upcint
