#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "upcint/interference.hpp"
#include "upcint/lorentz.hpp"
#include "upcint/photoproduction.hpp"
#include "upcint/random.hpp"

namespace upcint {

struct Product {
  double mass = 0.0;  // MeV
  FourVector p;       // lab frame
  Vec3 origin;        // fm, start of the straight-line trajectory
};

/// One generated meson. The impact parameter lies along +y, with source 1 at
/// (0, +b/2, 0) and source 2 at (0, -b/2, 0); phi is the pT azimuth measured from b.
struct Event {
  std::uint64_t index = 0;
  double y = 0.0;
  double pt = 0.0;   // MeV
  double phi = 0.0;  // rad
  double b = 0.0;    // fm
  FourVector meson;
  std::complex<double> a1{1.0, 0.0};
  std::complex<double> a2{-1.0, 0.0};
  double eta = 0.0;
  bool localizing = false;  // timing resolution resolves b/c; eta forced to 1
  int source = 1;           // classical production vertex used by pointing analyses
  double t_decay_s = 0.0;   // lab frame
  Vec3 x_decay;             // displacement from the production vertex, fm
  std::string channel;
  std::vector<Product> products;

  Vec3 production_vertex() const { return {0.0, source == 1 ? 0.5 * b : -0.5 * b, 0.0}; }
  Vec3 decay_vertex() const { return production_vertex() + x_decay; }
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t n_events = 1000;
  DecoherenceModel decoherence;
  double y_min = 0.0;
  double y_max = 0.0;     // y_min == y_max: fixed rapidity
  double pt_min = 0.0;    // MeV
  double pt_max = 300.0;  // MeV
  double b_min = 0.0;     // fm; <= 0: from the beam
  double b_max = 0.0;     // fm; <= 0: resolved from the flux cutoff
  std::string channel;    // empty: all listed channels by branching fraction
  double timing_resolution_s = -1.0;  // >= 0: events with b/c above it are incoherent

  void validate() const;
};

/// Exponential decay time with lab-frame mean (omega / M) tau.
double sample_decay_time(const MesonSpec& meson, double omega_mev, CounterStream& rng);

/// Isotropic two-body or flat three-body decay, boosted to the lab. Products
/// start at `vertex`.
std::vector<Product> decay_event(const FourVector& meson, const DecayChannel& channel,
                                 const Vec3& vertex, CounterStream& rng);

/// Source amplitudes a1 = exp(i p.b / 2 hbar c), a2 = -|c| exp(-i(p.b / 2 hbar c + delta)).
/// |a1 + a2|^2 reproduces the point rate bracket at eta = 0.
std::pair<std::complex<double>, std::complex<double>> entangled_phase(const Event& event,
                                                                      const AmplitudeRatio& c);

/// Acceptance diagnostics of the kinematic sampler.
struct SamplerStats {
  double pilot_acceptance = 0.0;
  std::size_t pilot_trials = 0;
};

class EventGenerator {
 public:
  static constexpr double kMinAcceptance = 1e-4;

  /// Throws SamplingFailure when a pilot run finds acceptance below kMinAcceptance.
  EventGenerator(const PhotoproductionModel& model, GeneratorConfig config);

  const GeneratorConfig& config() const { return config_; }
  const PhotoproductionModel& model() const { return model_; }
  const BWindow& window() const { return window_; }
  const SamplerStats& stats() const { return stats_; }

  /// Draws (y, pT, phi, b) and the classical source for event `index`.
  Event sample_kinematics(std::uint64_t index) const;
  Event generate(std::uint64_t index) const;
  std::vector<Event> generate_range(std::uint64_t first, std::size_t count,
                                    unsigned threads = 1) const;
  std::vector<Event> generate_all(unsigned threads = 1) const {
    return generate_range(0, config_.n_events, threads);
  }

  /// Branching fractions used for channel selection (renormalized over listed channels).
  const std::vector<std::pair<std::string, double>>& channel_table() const { return channels_; }

 private:
  struct Trial {
    bool accepted = false;
    Event event;
  };
  Trial try_once(CounterStream& rng) const;
  double event_eta(double b, double pt, double omega) const;

  PhotoproductionModel model_;
  GeneratorConfig config_;
  BWindow window_;
  double u_lo_ = 0.0, u_hi_ = 0.0;  // ln b
  double envelope_ = 0.0;           // bound on b^2 (w1 + w2)
  std::vector<double> pt_grid_;
  std::vector<double> pt_cdf_;
  std::vector<std::pair<std::string, double>> channels_;  // cumulative fractions
  SamplerStats stats_;
};

}  // namespace upcint
