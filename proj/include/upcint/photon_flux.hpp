#pragma once

#include "upcint/constants.hpp"

namespace upcint {

/// Smallest transverse distance at which the point-charge flux is used.
inline constexpr double kMinFluxDistanceFm = 0.1;

struct FluxPoint {
  double k = 0.0;  // MeV
  double b = 0.0;  // fm
  double n = 0.0;  // photons / (MeV fm^2)
};

struct FluxComponents {
  double transverse = 0.0;    // K1^2 term
  double longitudinal = 0.0;  // K0^2 / gamma^2 term
  double total() const { return transverse + longitudinal; }
};

/// Weizsacker-Williams flux of a point charge Z moving with gamma_beam:
///   n(k, b) = Z^2 alpha / (pi^2 k b^2) x^2 [K1(x)^2 + K0(x)^2 / gamma^2],  x = k b / (gamma hbar c).
/// Throws std::domain_error for k <= 0 or b < 0.1 fm.
double flux_density(double k_mev, double b_fm, const NucleusSpec& nucleus);
FluxComponents flux_density_components(double k_mev, double b_fm, const NucleusSpec& nucleus);
FluxPoint flux_point(double k_mev, double b_fm, const NucleusSpec& nucleus);

/// hbar c gamma / b: the photon energy above which the flux is exponentially cut off.
double flux_cutoff_energy(double b_fm, double gamma);

}  // namespace upcint
