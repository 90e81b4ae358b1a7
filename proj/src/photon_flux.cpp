#include "upcint/photon_flux.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "upcint/bessel.hpp"

namespace upcint {

FluxComponents flux_density_components(double k_mev, double b_fm, const NucleusSpec& nucleus) {
  if (!(k_mev > 0.0)) throw std::domain_error("flux_density: photon energy must be > 0");
  if (!(b_fm > 0.0)) throw std::domain_error("flux_density: distance must be > 0");
  if (b_fm < kMinFluxDistanceFm)
    throw std::domain_error("flux_density: distance below 0.1 fm is outside the flux model");
  const double gamma = nucleus.gamma_beam;
  const double x = k_mev * b_fm / (gamma * PhysicalConstants::hbar_c);
  const double z2 = static_cast<double>(nucleus.Z) * nucleus.Z;
  const double pref = z2 * PhysicalConstants::alpha_em / (std::numbers::pi * std::numbers::pi) *
                      x * x / (k_mev * b_fm * b_fm);
  // Scaled Bessel functions keep x^2 K^2 finite far into the cutoff.
  const double damp = x < 700.0 ? std::exp(-2.0 * x) : 0.0;
  const double k1 = special::bessel_k1e(x);
  const double k0 = special::bessel_k0e(x);
  return {pref * k1 * k1 * damp, pref * k0 * k0 * damp / (gamma * gamma)};
}

double flux_density(double k_mev, double b_fm, const NucleusSpec& nucleus) {
  return flux_density_components(k_mev, b_fm, nucleus).total();
}

FluxPoint flux_point(double k_mev, double b_fm, const NucleusSpec& nucleus) {
  return {k_mev, b_fm, flux_density(k_mev, b_fm, nucleus)};
}

double flux_cutoff_energy(double b_fm, double gamma) {
  if (!(b_fm > 0.0)) throw std::domain_error("flux_cutoff_energy: b must be > 0");
  return PhysicalConstants::hbar_c * gamma / b_fm;
}

}  // namespace upcint
