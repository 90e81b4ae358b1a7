#pragma once

#include <memory>
#include <vector>

#include "upcint/constants.hpp"

namespace upcint {

enum class FormFactorKind { HardSphereYukawa, WoodsSaxon };

/// Nuclear form factor F(q), q in MeV, F(0) = 1.
///
/// HardSphereYukawa is the analytic convolution of a hard sphere of radius R_A
/// with a Yukawa of range a:
///   F(q) = 3 [sin(qR) - qR cos(qR)] / (qR)^3 / (1 + a^2 q^2)   (lengths via hbar c).
/// WoodsSaxon is the numerical radial Fourier transform of a Woods-Saxon
/// density, tabulated once at construction.
class FormFactorModel {
 public:
  FormFactorModel() = default;
  static FormFactorModel hard_sphere_yukawa(double radius_fm, double yukawa_range_fm);
  static FormFactorModel woods_saxon(double half_density_radius_fm, double diffuseness_fm);
  static FormFactorModel for_nucleus(const NucleusSpec& nucleus, FormFactorKind kind);

  double operator()(double q_mev) const;
  FormFactorKind kind() const { return kind_; }
  double radius_fm() const { return radius_fm_; }
  double range_fm() const { return range_fm_; }

 private:
  FormFactorKind kind_ = FormFactorKind::HardSphereYukawa;
  double radius_fm_ = 7.0;
  double range_fm_ = 0.7;
  std::shared_ptr<const std::vector<double>> table_;  // Woods-Saxon samples on a uniform q grid
};

double form_factor(double q_mev, const FormFactorModel& model);

/// Photon-nucleus cross section built from a two-term gamma-proton
/// parameterization
///   sigma_gp(W) = X W^eps + Y W^-eta_R        [mb, W in GeV]
/// scaled by A^a_power and, when `coherence` is set, by |F(q_L)|^2 with the
/// longitudinal momentum transfer q_L = M_V^2 / (4 k gamma) that the target
/// has to absorb.
struct GammaACrossSection {
  CrossSectionParams params;
  double a_power = 4.0 / 3.0;
  bool coherence = true;
  double phase_delta_rad = 0.0;

  double sigma_gamma_p(double w_gev) const;
};

/// Photon-nucleon centre-of-mass energy (GeV) for a photon of energy k (MeV)
/// hitting a nucleon of the opposite beam.
double photon_nucleon_w(double k_mev, double gamma_beam);

struct AmplitudeRatio {
  double magnitude = 1.0;
  double phase_rad = 0.0;
};

struct SourceWeights {
  double w1 = 0.0;  // nucleus at +b/2, photon energy k1
  double w2 = 0.0;  // nucleus at -b/2, photon energy k2
  double total() const { return w1 + w2; }
};

/// Single-nucleus production: combines the photon flux, the photon-nucleus
/// cross section and the form factor for one beam/meson pair. Immutable.
class PhotoproductionModel {
 public:
  PhotoproductionModel(BeamConfig beams, MesonSpec meson, GammaACrossSection xs,
                       FormFactorModel form_factor);
  /// Defaults: meson's catalog cross-section constants, hard-sphere (x) Yukawa.
  PhotoproductionModel(BeamConfig beams, MesonSpec meson);

  const BeamConfig& beams() const { return beams_; }
  const MesonSpec& meson() const { return meson_; }
  const GammaACrossSection& cross_section() const { return xs_; }
  const FormFactorModel& form_factor() const { return ff_; }
  double gamma() const { return beams_.nucleus.gamma_beam; }

  double sigma_gamma_a(double k_mev) const;
  /// Production rate per unit rapidity and unit transverse area from a photon
  /// of energy k emitted at distance b: k n(k, b) sigma_gA(k).
  double source_weight(double k_mev, double b_fm) const;
  SourceWeights source_weights(double y, double b_fm) const;

  /// |A1|^2 = w1(b) |F(pT)|^2 for the nucleus at +b/2.
  double single_source_amplitude_sq(double pt_mev, double y, double b_fm) const;
  /// |c| = sqrt(w2 / w1) and the configured constant phase.
  AmplitudeRatio amplitude_ratio_c(double y, double b_fm) const;

 private:
  BeamConfig beams_;
  MesonSpec meson_;
  GammaACrossSection xs_;
  FormFactorModel ff_;
  double a_factor_ = 1.0;
};

}  // namespace upcint
