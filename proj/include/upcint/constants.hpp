#pragma once

#include <string>
#include <vector>

namespace upcint {

// Units used throughout: energies and momenta in MeV, lengths in fm, times in s.
struct PhysicalConstants {
  static constexpr double hbar_c = 197.3269804;        // MeV fm
  static constexpr double alpha_em = 1.0 / 137.035999;  // dimensionless
  static constexpr double c_light = 2.99792458e23;      // fm/s
};

/// Nucleon mass used to turn per-nucleon collision energies into beam boosts
/// (atomic mass unit, GeV).
inline constexpr double kNucleonMassGeV = 0.9315;

struct NucleusSpec {
  std::string name;
  int Z = 0;
  int A = 0;
  double radius_fm = 0.0;        // hard-sphere radius R_A
  double yukawa_range_fm = 0.7;  // diffuseness of the hard-sphere (x) Yukawa form factor
  double ws_radius_fm = 0.0;     // Woods-Saxon half-density radius (0: derive from R_A)
  double ws_diffuseness_fm = 0.54;
  double gamma_beam = 1.0;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

struct DecayChannel {
  std::string id;
  double fraction = 0.0;
  std::vector<double> product_masses;  // MeV

  double mass_sum() const;
};

struct CrossSectionParams {
  double pomeron_norm_mb = 0.0;
  double pomeron_eps = 0.0;
  double meson_norm_mb = 0.0;
  double meson_eta = 0.0;
};

struct MesonSpec {
  std::string name;
  double mass_mev = 0.0;
  double lifetime_s = 0.0;
  std::vector<DecayChannel> channels;
  CrossSectionParams sigma;  // gamma-proton parameterization defaults

  /// c*tau in fm.
  double ctau_fm() const;
  /// Branching fraction not covered by the listed channels.
  double other_fraction() const;
  const DecayChannel& channel(const std::string& id) const;

  void validate() const;
};

struct BeamConfig {
  NucleusSpec nucleus;
  double sqrt_s_nn_gev = 0.0;
  bool hadronic_exclusion = true;
  double b_min_fm = 0.0;  // <= 0: 2 R_A (or 0.1 fm without exclusion)
  double b_max_fm = 0.0;  // <= 0: chosen from the flux cutoff

  double effective_b_min() const;
  void validate() const;
};

/// Builds a beam whose nucleus carries the per-beam boost derived from sqrt_s_NN.
BeamConfig make_beam(NucleusSpec nucleus, double sqrt_s_nn_gev, bool hadronic_exclusion = true);

/// Per-beam Lorentz factor in the collider frame, gamma = sqrt_s_NN / (2 m_N).
double lorentz_gamma(double sqrt_s_nn_gev, double nucleon_mass_gev = kNucleonMassGeV);

/// Median decay distance d = 2 hbar c (c tau) / (R_A M_V) for p_T = 2 hbar / R_A at midrapidity.
double decay_distance(const MesonSpec& meson, const NucleusSpec& nucleus);

struct PhotonEnergies {
  double k1 = 0.0;  // photon from the nucleus at +b/2
  double k2 = 0.0;  // photon from the nucleus at -b/2
};

/// k1 = (M/2) e^{+y}, k2 = (M/2) e^{-y}.
PhotonEnergies photon_energies_for_rapidity(double y, double meson_mass_mev);

}  // namespace upcint
