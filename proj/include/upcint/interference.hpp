#pragma once

#include <string>

#include "upcint/constants.hpp"
#include "upcint/photoproduction.hpp"

namespace upcint {

enum class DecoherenceKind {
  FullCoherence,
  FullDecoherence,
  FixedEta,
  SurvivalLightSpeed,
  SurvivalMesonVelocity,
};

/// Hypothesis for the incoherent fraction eta of the two-source rate.
/// eta = 0 is full coherence, eta = 1 no interference.
struct DecoherenceModel {
  DecoherenceKind kind = DecoherenceKind::FullCoherence;
  double fixed_eta = 0.0;

  static DecoherenceModel full_coherence() { return {DecoherenceKind::FullCoherence, 0.0}; }
  static DecoherenceModel full_decoherence() { return {DecoherenceKind::FullDecoherence, 1.0}; }
  static DecoherenceModel fixed(double eta);
  static DecoherenceModel survival_light_speed() { return {DecoherenceKind::SurvivalLightSpeed, 0.0}; }
  static DecoherenceModel survival_meson_velocity() {
    return {DecoherenceKind::SurvivalMesonVelocity, 0.0};
  }
  /// Accepts the names produced by name(): full_coherence, full_decoherence,
  /// fixed, survival_light_speed, survival_meson_velocity.
  static DecoherenceModel parse(const std::string& name, double eta = 0.0);

  std::string name() const;
  bool depends_on_kinematics() const {
    return kind == DecoherenceKind::SurvivalLightSpeed ||
           kind == DecoherenceKind::SurvivalMesonVelocity;
  }
};

/// Decoherence parameter at impact parameter b.
///   SurvivalLightSpeed:    1 - exp(-M b / (omega c tau))
///   SurvivalMesonVelocity: 1 - exp(-M b / (pT c tau)),  eta = 1 at pT = 0
double eta(double b_fm, const MesonSpec& meson, double omega_mev, double pt_mev,
           const DecoherenceModel& model);

/// Meson kinematics with b along the y axis; phi is the azimuth of pT measured from b.
struct KinematicPoint {
  double y = 0.0;
  double pt = 0.0;   // MeV
  double phi = 0.0;  // rad
  double b = 0.0;    // fm
};

/// A1^2 [1 + |c|^2 - 2 |c| (1 - eta) cos(pT b cos(phi) / hbar c + delta)].
/// The negative-parity sign of the second source is folded into the minus.
double point_rate(const KinematicPoint& kp, const AmplitudeRatio& c, double eta, double a1_sq);

/// Exact average of point_rate over phi:
/// A1^2 [1 + |c|^2 - 2 |c| (1 - eta) cos(delta) J0(pT b / hbar c)].
double azimuth_averaged_rate(double pt_mev, double b_fm, const AmplitudeRatio& c, double eta,
                             double a1_sq);

struct BWindow {
  double b_min = 0.0;
  double b_max = 0.0;
  bool contains(double b) const { return b >= b_min && b <= b_max; }
};

/// Impact-parameter window at rapidity y: b_min from the beam (2 R_A with
/// hadronic exclusion), b_max from the beam or max(10 <b>, 5 gamma hbar c / k_min).
BWindow resolve_b_window(const PhotoproductionModel& model, double y);

/// Un-normalized production density per unit area, w1 + w2, zero outside the window.
double b_weight(double b_fm, double y, const PhotoproductionModel& model, const BWindow& window);

struct ImpactParameterSummary {
  double median = 0.0;
  double mean = 0.0;
  BWindow window;
};

/// Median and mean of the distribution 2 pi b w(b) db at fixed rapidity.
ImpactParameterSummary impact_parameter_summary(const PhotoproductionModel& model, double y);
ImpactParameterSummary impact_parameter_summary(const PhotoproductionModel& model, double y,
                                                const BWindow& window);

/// Same, for production integrated over rapidity |y| <= y_max (default: the
/// beam rapidity), i.e. weight(b) = sum_i int dk n(k, b) sigma_gA(k).
ImpactParameterSummary rapidity_integrated_impact_parameter(const PhotoproductionModel& model,
                                                            double y_max = -1.0);

}  // namespace upcint
