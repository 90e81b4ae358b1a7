#pragma once

#include <string>
#include <vector>

#include "upcint/interference.hpp"
#include "upcint/photoproduction.hpp"

namespace upcint {

/// Uniform pT binning; rates are evaluated at bin centers.
struct PtGrid {
  double pt_min = 0.0;
  double pt_max = 150.0;
  int n_bins = 150;

  void validate() const;
  std::vector<double> edges() const;
  std::vector<double> centers() const;
};

/// Transverse-momentum spectrum at one rapidity. Rates are dN/d^2pT (no 2 pi pT
/// Jacobian) so that pT = 0 is finite; `ratio` comes from the b-integrals alone
/// and stays defined where the form factor vanishes.
struct SpectrumTable {
  std::vector<double> edges;
  std::vector<double> pt;
  std::vector<double> rate_interf;
  std::vector<double> rate_no_interf;
  std::vector<double> ratio;
  bool fig2_normalized = false;
  double normalization = 1.0;  // divisor applied to both rate columns
  double max_rel_error = 0.0;  // worst estimated b-quadrature error over the bins
  std::string convention = "dN/d2pT";
};

struct SpectrumPoint {
  double pt = 0.0;
  double rate_interf = 0.0;
  double rate_no_interf = 0.0;
  double ratio = 1.0;
  double rel_error = 0.0;
};

/// b-marginalized spectrum engine for one (beam, meson, y).
///   no interference:  F(pT)^2 int 2 pi b db (w1 + w2)
///   interference:     F(pT)^2 int 2 pi b db [w1 + w2 - 2 sqrt(w1 w2)(1 - eta) cos(delta) J0(pT b / hbar c)]
/// The b integral runs in ln b over panels of at most 0.25 in ln b and pi in
/// the J0 phase, each refined adaptively. Estimated relative error above 1e-4
/// throws NonConvergence.
class SpectrumEngine {
 public:
  static constexpr double kMaxRelError = 1e-4;

  SpectrumEngine(const PhotoproductionModel& model, double y);
  SpectrumEngine(const PhotoproductionModel& model, double y, const BWindow& window);

  const PhotoproductionModel& model() const { return model_; }
  double rapidity() const { return y_; }
  const BWindow& window() const { return window_; }
  /// int 2 pi b (w1 + w2) db over the window.
  double no_interference_integral() const { return n_total_; }

  SpectrumPoint evaluate(double pt_mev, const DecoherenceModel& decoherence) const;
  SpectrumTable pt_spectrum(const PtGrid& grid, const DecoherenceModel& decoherence,
                            bool normalize_fig2, unsigned threads = 1) const;

  /// D = 1 - rate_interf(0) / rate_no_interf(0).
  double dip_depth(const DecoherenceModel& decoherence) const;
  /// int_lo^hi 2 pi pT dN/d^2pT dpT, with or without the interference term.
  double pt_integrated_rate(double pt_lo, double pt_hi, const DecoherenceModel& decoherence,
                            bool with_interference = true) const;

 private:
  struct CrossTerm {
    double value = 0.0;
    double abs_error = 0.0;
  };
  CrossTerm cross_term(double pt_mev, const DecoherenceModel& decoherence) const;

  PhotoproductionModel model_;
  double y_ = 0.0;
  BWindow window_;
  double n_total_ = 0.0;
  double n_error_ = 0.0;
};

}  // namespace upcint
