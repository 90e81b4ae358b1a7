#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "upcint/event_generator.hpp"

namespace upcint {

/// Ideal cylindrical position-sensitive surface of radius L around the beam
/// axis, read out by two arms: arm 1 sees product 0, arm 2 sees product 1.
struct DetectorLayout {
  double radius_fm = 500.0;
  double position_resolution_fm = 0.0;
  double time_resolution_s = 1e-12;
  double max_abs_z_fm = 0.0;  // 0: unbounded

  void validate() const;
};

enum class Verdict { Source1, Source2, Ambiguous, Unreconstructable };
std::string to_string(Verdict v);

struct PointingResult {
  Verdict verdict = Verdict::Unreconstructable;
  std::array<Vec3, 2> hits{};
  double miss1_fm = 0.0;  // closest approach of the chord to the trajectory at y = +b/2
  double miss2_fm = 0.0;  // ... at y = -b/2
  double chord_b_cosine = 0.0;  // |cos| between the transverse chord and b

  bool reconstructable() const { return verdict != Verdict::Unreconstructable; }
  /// Miss distance to the event's classical source.
  double miss_true(int source) const { return source == 1 ? miss1_fm : miss2_fm; }
};

/// Straight-line hit of a track on the cylinder, if it reaches it.
std::optional<Vec3> cylinder_hit(const Vec3& origin, const Vec3& momentum,
                                 const DetectorLayout& layout);

/// Draws the chord through the two product hits and compares its transverse
/// distance to both ion trajectories (lines parallel to z at x = 0, y = +-b/2).
PointingResult pointing_reconstruction(const Event& event, const DetectorLayout& layout);

/// | |H - S1| - |H - S2| | / c for sources at (0, +-b/2, 0); never exceeds b/c.
double flight_time_difference(const Vec3& hit, double b_fm);
/// Largest difference over the event's detected products (0 if none reach the detector).
double flight_time_difference(const Event& event, const DetectorLayout& layout);

enum class TimingFlag { Localizing, NonLocalizing };
/// Localizing iff the time resolution is below b/c.
TimingFlag timing_decoherence_flag(const DetectorLayout& layout, double b_fm);

enum class CollapseScenario { AtMeasurement, AtDecay };
std::string to_string(CollapseScenario s);
CollapseScenario parse_scenario(const std::string& name);

struct ProtocolOptions {
  std::size_t n_events = 100000;
  CollapseScenario scenario = CollapseScenario::AtMeasurement;
  double pt_dip_mev = 0.0;  // <= 0: 3 hbar c / median b
  double hist_pt_max_mev = 200.0;
  int hist_bins = 50;
  double perpendicular_cosine = 0.25;  // chord-b selection for the pointing offset
  unsigned threads = 1;
};

struct MarginalTest {
  int arm = 1;
  char mode = 'M';
  std::string sample_a, sample_b;
  std::size_t n_a = 0, n_b = 0;
  double ks_statistic = 0.0;
  double p_value = 1.0;
};

struct DipStatistic {
  double pt_dip_mev = 0.0;
  std::size_t n_events = 0;      // MM events
  std::size_t n_below = 0;       // MM events with pT < pt_dip
  double expected_no_interf = 0.0;
  double depth = 0.0;            // D = 1 - n_below / expected_no_interf
  double sigma = 0.0;            // sqrt(n_below) / expected_no_interf
};

struct PointingSummary {
  std::size_t events = 0;
  std::size_t reconstructable = 0;
  std::size_t correct = 0;
  std::size_t ambiguous = 0;
  double accuracy = 0.0;  // correct / reconstructable
  std::size_t perpendicular = 0;
  double accuracy_perpendicular = 0.0;
  double median_miss_fm = 0.0;
  double median_miss_perpendicular_fm = 0.0;
};

struct ProtocolReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t n_events = 0;
  std::array<std::size_t, 4> counts{};  // PP, PM, MP, MM (arm 1 mode first)
  double mode_uniformity_p = 1.0;
  std::vector<MarginalTest> marginals;
  std::vector<double> mm_hist_edges;
  std::vector<std::size_t> mm_hist_counts;
  DipStatistic dip;
  PointingSummary pointing;  // PP events
  double localizing_fraction = 0.0;
  double spacelike_fraction = 0.0;  // detections on the two arms space-like separated
  DetectorLayout layout;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Each arm independently picks position or momentum per event from its own
/// random stream. The scenario sets the generator's eta (AtDecay: eta = 1);
/// events whose b/c the detectors resolve are generated incoherent.
ProtocolReport dual_detector_protocol(const PhotoproductionModel& model,
                                      const GeneratorConfig& base, const DetectorLayout& layout,
                                      const ProtocolOptions& options);

/// Protocol analysis of an existing event list generated with `cfg` (modes
/// are drawn from the (seed, event index) streams, so a re-read file gives the
/// same report). `window` sets the default dip scale.
ProtocolReport analyze_protocol(const std::vector<Event>& events, const PhotoproductionModel& model,
                                const GeneratorConfig& cfg, const BWindow& window,
                                const DetectorLayout& layout, const ProtocolOptions& options);

/// Pointing statistics over an already generated event list.
PointingSummary summarize_pointing(const std::vector<Event>& events, const DetectorLayout& layout,
                                   double perpendicular_cosine = 0.25);

/// (D_a - D_b) / sqrt(sigma_a^2 + sigma_b^2).
double dip_separation(const DipStatistic& a, const DipStatistic& b);

}  // namespace upcint
