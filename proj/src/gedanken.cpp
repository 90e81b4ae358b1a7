#include "upcint/gedanken.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "upcint/quadrature.hpp"
#include "upcint/stats.hpp"

namespace upcint {
namespace {

constexpr double kC = PhysicalConstants::c_light;
// Default dip window in units of hbar c / median b; maximizes the expected
// separation of eta = 0 from eta = 1 at fixed event count.
constexpr double kDipWindowFactor = 3.0;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

// Transverse distance from (px, py) to the line through a and b (projected).
double line_distance_2d(const Vec3& a, const Vec3& b, double px, double py) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return std::hypot(px - a.x, py - a.y);
  return std::abs(dx * (py - a.y) - dy * (px - a.x)) / len;
}

}  // namespace

void DetectorLayout::validate() const {
  if (!(radius_fm > 0.0)) throw std::invalid_argument("detector radius must be > 0");
  if (!(position_resolution_fm >= 0.0 && time_resolution_s >= 0.0 && max_abs_z_fm >= 0.0))
    throw std::invalid_argument("detector resolutions and extent must be >= 0");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Source1: return "source1";
    case Verdict::Source2: return "source2";
    case Verdict::Ambiguous: return "ambiguous";
    case Verdict::Unreconstructable: return "unreconstructable";
  }
  return "unknown";
}

std::optional<Vec3> cylinder_hit(const Vec3& o, const Vec3& p, const DetectorLayout& layout) {
  const double a = p.x * p.x + p.y * p.y;
  if (a == 0.0) return std::nullopt;
  const double bq = o.x * p.x + o.y * p.y;
  const double c = o.x * o.x + o.y * o.y - layout.radius_fm * layout.radius_fm;
  if (c >= 0.0) return std::nullopt;  // starts outside the cylinder
  const double s = (-bq + std::sqrt(bq * bq - a * c)) / a;
  const Vec3 hit = o + p * s;
  if (layout.max_abs_z_fm > 0.0 && std::abs(hit.z) > layout.max_abs_z_fm) return std::nullopt;
  return hit;
}

PointingResult pointing_reconstruction(const Event& ev, const DetectorLayout& layout) {
  PointingResult r;
  if (ev.products.size() != 2) return r;
  const auto h1 = cylinder_hit(ev.products[0].origin, ev.products[0].p.p, layout);
  const auto h2 = cylinder_hit(ev.products[1].origin, ev.products[1].p.p, layout);
  if (!h1 || !h2) return r;
  r.hits = {*h1, *h2};
  r.miss1_fm = line_distance_2d(*h1, *h2, 0.0, 0.5 * ev.b);
  r.miss2_fm = line_distance_2d(*h1, *h2, 0.0, -0.5 * ev.b);
  const double len = std::hypot(h2->x - h1->x, h2->y - h1->y);
  r.chord_b_cosine = len > 0.0 ? std::abs(h2->y - h1->y) / len : 1.0;
  if (std::abs(r.miss1_fm - r.miss2_fm) <= layout.position_resolution_fm)
    r.verdict = Verdict::Ambiguous;
  else
    r.verdict = r.miss1_fm < r.miss2_fm ? Verdict::Source1 : Verdict::Source2;
  return r;
}

double flight_time_difference(const Vec3& hit, double b_fm) {
  const Vec3 s1{0.0, 0.5 * b_fm, 0.0}, s2{0.0, -0.5 * b_fm, 0.0};
  const double dt = std::abs((hit - s1).norm() - (hit - s2).norm()) / kC;
  return std::min(dt, std::abs(b_fm) / kC);  // triangle inequality, guarded against rounding
}

double flight_time_difference(const Event& ev, const DetectorLayout& layout) {
  double dt = 0.0;
  for (const auto& p : ev.products)
    if (const auto h = cylinder_hit(p.origin, p.p.p, layout))
      dt = std::max(dt, flight_time_difference(*h, ev.b));
  return dt;
}

TimingFlag timing_decoherence_flag(const DetectorLayout& layout, double b_fm) {
  return layout.time_resolution_s < b_fm / kC ? TimingFlag::Localizing : TimingFlag::NonLocalizing;
}

std::string to_string(CollapseScenario s) {
  return s == CollapseScenario::AtMeasurement ? "collapse_at_measurement" : "collapse_at_decay";
}

CollapseScenario parse_scenario(const std::string& name) {
  if (name == "collapse_at_measurement") return CollapseScenario::AtMeasurement;
  if (name == "collapse_at_decay") return CollapseScenario::AtDecay;
  throw std::invalid_argument("unknown collapse scenario '" + name + "'");
}

PointingSummary summarize_pointing(const std::vector<Event>& events, const DetectorLayout& layout,
                                   double perpendicular_cosine) {
  PointingSummary s;
  std::vector<double> miss, miss_perp;
  std::size_t correct_perp = 0;
  for (const auto& ev : events) {
    ++s.events;
    const auto r = pointing_reconstruction(ev, layout);
    if (!r.reconstructable()) continue;
    ++s.reconstructable;
    const Verdict truth = ev.source == 1 ? Verdict::Source1 : Verdict::Source2;
    const bool ok = r.verdict == truth;
    if (ok) ++s.correct;
    if (r.verdict == Verdict::Ambiguous) ++s.ambiguous;
    miss.push_back(r.miss_true(ev.source));
    if (r.chord_b_cosine < perpendicular_cosine) {
      ++s.perpendicular;
      if (ok) ++correct_perp;
      miss_perp.push_back(r.miss_true(ev.source));
    }
  }
  if (s.reconstructable > 0) s.accuracy = static_cast<double>(s.correct) / s.reconstructable;
  if (s.perpendicular > 0)
    s.accuracy_perpendicular = static_cast<double>(correct_perp) / s.perpendicular;
  s.median_miss_fm = median(miss);
  s.median_miss_perpendicular_fm = median(miss_perp);
  return s;
}

double dip_separation(const DipStatistic& a, const DipStatistic& b) {
  const double s = std::hypot(a.sigma, b.sigma);
  return s > 0.0 ? (a.depth - b.depth) / s : 0.0;
}

ProtocolReport dual_detector_protocol(const PhotoproductionModel& model,
                                      const GeneratorConfig& base, const DetectorLayout& layout,
                                      const ProtocolOptions& opt) {
  layout.validate();
  if (opt.n_events < 1000) throw std::invalid_argument("dual-detector protocol needs >= 1000 events");
  GeneratorConfig cfg = base;
  cfg.n_events = opt.n_events;
  cfg.timing_resolution_s = layout.time_resolution_s;
  if (opt.scenario == CollapseScenario::AtDecay) cfg.decoherence = DecoherenceModel::full_decoherence();
  const EventGenerator gen(model, cfg);
  return analyze_protocol(gen.generate_all(opt.threads), model, cfg, gen.window(), layout, opt);
}

ProtocolReport analyze_protocol(const std::vector<Event>& events, const PhotoproductionModel& model,
                                const GeneratorConfig& cfg, const BWindow& window,
                                const DetectorLayout& layout, const ProtocolOptions& opt) {
  layout.validate();
  ProtocolReport rep;
  rep.scenario = to_string(opt.scenario);
  rep.seed = cfg.seed;
  rep.n_events = events.size();
  rep.layout = layout;

  // Pairing index: 0 PP, 1 PM, 2 MP, 3 MM.
  std::array<std::vector<double>, 4> arm1, arm2;
  std::vector<Event> pp_events;
  std::vector<double> mm_pt;
  std::size_t localizing = 0, spacelike = 0, both_hit = 0;
  for (const auto& ev : events) {
    CounterStream modes(cfg.seed, ev.index, StreamPurpose::ProtocolModes);
    const bool m1 = modes.uniform() >= 0.5;
    const bool m2 = modes.uniform() >= 0.5;
    const int pairing = (m1 ? 2 : 0) + (m2 ? 1 : 0);
    ++rep.counts[pairing];
    if (ev.localizing) ++localizing;
    if (ev.products.size() < 2) continue;

    const auto& p1 = ev.products[0];
    const auto& p2 = ev.products[1];
    const auto h1 = cylinder_hit(p1.origin, p1.p.p, layout);
    const auto h2 = cylinder_hit(p2.origin, p2.p.p, layout);
    // Momentum outcome: the product's transverse momentum; position outcome: hit azimuth.
    if (m1) arm1[pairing].push_back(p1.p.pt());
    else if (h1) arm1[pairing].push_back(std::atan2(h1->y, h1->x));
    if (m2) arm2[pairing].push_back(p2.p.pt());
    else if (h2) arm2[pairing].push_back(std::atan2(h2->y, h2->x));

    if (h1 && h2) {
      ++both_hit;
      auto hit_time = [&](const Product& p, const Vec3& h) {
        const double speed = p.p.p.norm() / p.p.e * kC;
        return ev.t_decay_s + (h - p.origin).norm() / speed;
      };
      const double dt = hit_time(p1, *h1) - hit_time(p2, *h2);
      if ((*h1 - *h2).norm() > kC * std::abs(dt)) ++spacelike;
    }
    if (pairing == 0) pp_events.push_back(ev);
    if (pairing == 3) mm_pt.push_back((p1.p + p2.p).pt());
  }
  rep.localizing_fraction = static_cast<double>(localizing) / std::max<std::size_t>(1, events.size());
  rep.spacelike_fraction = static_cast<double>(spacelike) / std::max<std::size_t>(1, both_hit);

  const double quarter = 0.25 * static_cast<double>(events.size());
  rep.mode_uniformity_p =
      stats::chi2_counts({static_cast<double>(rep.counts[0]), static_cast<double>(rep.counts[1]),
                          static_cast<double>(rep.counts[2]), static_cast<double>(rep.counts[3])},
                         {quarter, quarter, quarter, quarter})
          .p_value;

  const char* names[4] = {"PP", "PM", "MP", "MM"};
  auto add_test = [&](int arm, char mode, int a, int b) {
    const auto& sa = arm == 1 ? arm1[a] : arm2[a];
    const auto& sb = arm == 1 ? arm1[b] : arm2[b];
    MarginalTest t{arm, mode, names[a], names[b], sa.size(), sb.size()};
    if (!sa.empty() && !sb.empty()) {
      const auto r = stats::ks_two_sample(sa, sb);
      t.ks_statistic = r.statistic;
      t.p_value = r.p_value;
    }
    rep.marginals.push_back(t);
  };
  add_test(1, 'M', 3, 2);
  add_test(1, 'P', 1, 0);
  add_test(2, 'M', 3, 1);
  add_test(2, 'P', 2, 0);

  rep.mm_hist_edges.resize(static_cast<std::size_t>(opt.hist_bins) + 1);
  for (int i = 0; i <= opt.hist_bins; ++i)
    rep.mm_hist_edges[i] = opt.hist_pt_max_mev * i / opt.hist_bins;
  rep.mm_hist_counts.assign(static_cast<std::size_t>(opt.hist_bins), 0);
  for (double pt : mm_pt) {
    const auto bin = static_cast<long>(pt / opt.hist_pt_max_mev * opt.hist_bins);
    if (bin >= 0 && bin < opt.hist_bins) ++rep.mm_hist_counts[bin];
  }

  // Dip: MM events below pt_dip against the no-interference expectation,
  // which is the fraction of pT |F|^2 below pt_dip.
  auto& dip = rep.dip;
  const double y_mid = 0.5 * (cfg.y_min + cfg.y_max);
  dip.pt_dip_mev = opt.pt_dip_mev > 0.0
                       ? opt.pt_dip_mev
                       : kDipWindowFactor * PhysicalConstants::hbar_c /
                             impact_parameter_summary(model, y_mid, window).median;
  dip.n_events = mm_pt.size();
  dip.n_below = static_cast<std::size_t>(
      std::count_if(mm_pt.begin(), mm_pt.end(), [&](double pt) { return pt < dip.pt_dip_mev; }));
  auto density = [&](double pt) {
    const double f = model.form_factor()(pt);
    return pt * f * f;
  };
  const double hi = std::clamp(dip.pt_dip_mev, cfg.pt_min, cfg.pt_max);
  const double frac = quad::integrate(density, cfg.pt_min, hi, 1e-10).value /
                      quad::integrate(density, cfg.pt_min, cfg.pt_max, 1e-10).value;
  dip.expected_no_interf = frac * static_cast<double>(dip.n_events);
  if (dip.expected_no_interf > 0.0) {
    dip.depth = 1.0 - static_cast<double>(dip.n_below) / dip.expected_no_interf;
    dip.sigma = std::sqrt(static_cast<double>(dip.n_below)) / dip.expected_no_interf;
  }

  rep.pointing = summarize_pointing(pp_events, layout, opt.perpendicular_cosine);
  return rep;
}

nlohmann::json ProtocolReport::to_json() const {
  nlohmann::json marg = nlohmann::json::array();
  for (const auto& m : marginals)
    marg.push_back({{"arm", m.arm},
                    {"mode", std::string(1, m.mode)},
                    {"sample_a", m.sample_a},
                    {"sample_b", m.sample_b},
                    {"n_a", m.n_a},
                    {"n_b", m.n_b},
                    {"ks_statistic", m.ks_statistic},
                    {"p_value", m.p_value}});
  return {
      {"scenario", scenario},
      {"seed", seed},
      {"n_events", n_events},
      {"counts", {{"PP", counts[0]}, {"PM", counts[1]}, {"MP", counts[2]}, {"MM", counts[3]}}},
      {"mode_uniformity_p", mode_uniformity_p},
      {"marginals", marg},
      {"mm_pt_histogram", {{"edges_mev", mm_hist_edges}, {"counts", mm_hist_counts}}},
      {"dip",
       {{"pt_dip_mev", dip.pt_dip_mev},
        {"n_events", dip.n_events},
        {"n_below", dip.n_below},
        {"expected_no_interference", dip.expected_no_interf},
        {"depth", dip.depth},
        {"sigma", dip.sigma}}},
      {"pointing",
       {{"events", pointing.events},
        {"reconstructable", pointing.reconstructable},
        {"correct", pointing.correct},
        {"ambiguous", pointing.ambiguous},
        {"accuracy", pointing.accuracy},
        {"perpendicular", pointing.perpendicular},
        {"accuracy_perpendicular", pointing.accuracy_perpendicular},
        {"median_miss_fm", pointing.median_miss_fm},
        {"median_miss_perpendicular_fm", pointing.median_miss_perpendicular_fm}}},
      {"timing",
       {{"time_resolution_s", layout.time_resolution_s},
        {"localizing_fraction", localizing_fraction}}},
      {"spacelike_fraction", spacelike_fraction},
      {"layout",
       {{"radius_fm", layout.radius_fm},
        {"position_resolution_fm", layout.position_resolution_fm},
        {"time_resolution_s", layout.time_resolution_s},
        {"max_abs_z_fm", layout.max_abs_z_fm}}},
  };
}

std::string ProtocolReport::to_text() const {
  std::ostringstream os;
  os << fmt::format("dual-detector protocol: {} ({} events, seed {})\n", scenario, n_events, seed);
  os << fmt::format("pairings PP {} PM {} MP {} MM {}  (uniformity p = {:.3f})\n", counts[0],
                    counts[1], counts[2], counts[3], mode_uniformity_p);
  for (const auto& m : marginals)
    os << fmt::format("arm {} in {} mode: {} vs {}  KS D = {:.4f}  p = {:.3f}\n", m.arm, m.mode,
                      m.sample_a, m.sample_b, m.ks_statistic, m.p_value);
  os << fmt::format("MM dip: pT < {:.3f} MeV  observed {}  expected without interference {:.1f}  "
                    "D = {:.3f} +- {:.3f}\n",
                    dip.pt_dip_mev, dip.n_below, dip.expected_no_interf, dip.depth, dip.sigma);
  os << fmt::format("PP pointing: {} reconstructable, accuracy {:.3f} (perpendicular {:.3f}), "
                    "median miss {:.2f} fm (perpendicular {:.2f} fm)\n",
                    pointing.reconstructable, pointing.accuracy, pointing.accuracy_perpendicular,
                    pointing.median_miss_fm, pointing.median_miss_perpendicular_fm);
  os << fmt::format("localizing fraction {:.3f}, space-like detections {:.3f}\n",
                    localizing_fraction, spacelike_fraction);
  return os.str();
}

}  // namespace upcint
