#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

#include "support.hpp"
#include "upcint/event_io.hpp"
#include "upcint/gedanken.hpp"

using namespace upcint;

namespace {

constexpr double kC = 2.99792458e23;

Product track(double phi, double pt, double pz, const Vec3& origin) {
  const Vec3 p{pt * std::cos(phi), pt * std::sin(phi), pz};
  return {0.511, {std::sqrt(p.dot(p) + 0.511 * 0.511), p}, origin};
}

Event mirrored(Event ev) {
  ev.source = 3 - ev.source;
  for (auto& p : ev.products) {
    p.origin.y = -p.origin.y;
    p.p.p.y = -p.p.p.y;
  }
  return ev;
}

GeneratorConfig ee_config(std::uint64_t seed) {
  GeneratorConfig c;
  c.seed = seed;
  c.channel = "ee";
  return c;
}

}  // namespace

TEST_CASE("pointing: meson at rest points back to its vertex") {
  const auto& jpsi = upcint::testing::catalog().meson("jpsi");
  CounterStream rng(1, 0, StreamPurpose::DecayAngles);
  for (int i = 0; i < 200; ++i) {
    Event ev;
    ev.b = 40.0;
    ev.source = 1;
    ev.meson = {jpsi.mass_mev, {}};
    ev.products = decay_event(ev.meson, jpsi.channel("ee"), ev.production_vertex(), rng);
    const auto r = pointing_reconstruction(ev, DetectorLayout{});
    if (!r.reconstructable()) continue;
    CHECK(r.miss1_fm < 1e-9);
    CHECK(r.verdict == Verdict::Source1);
  }
}

TEST_CASE("pointing: offset grows linearly with the detector radius") {
  // Tracks from the origin with transverse azimuths phi1, phi2 hit a circle of
  // radius L; the chord passes at L |cos((phi1 - phi2) / 2)| from the origin.
  Event ev;
  ev.b = 0.0;
  ev.products = {track(0.3, 10.0, 5.0, {}), track(0.3 + 2.6, 12.0, -40.0, {})};
  for (double L : {100.0, 500.0, 2500.0}) {
    DetectorLayout layout;
    layout.radius_fm = L;
    const auto r = pointing_reconstruction(ev, layout);
    REQUIRE(r.reconstructable());
    CHECK(r.miss1_fm == doctest::Approx(L * std::abs(std::cos(1.3))).epsilon(1e-12));
    CHECK(r.miss2_fm == doctest::Approx(r.miss1_fm));
    CHECK(r.verdict == Verdict::Ambiguous);
  }
}

TEST_CASE("pointing: verdicts and reconstructability") {
  Event ev;
  ev.b = 40.0;
  ev.source = 2;
  const Vec3 v{3.0, -20.0, 1.0};
  ev.products = {track(1.0, 50.0, 0.0, v), track(1.0 + std::numbers::pi, 50.0, 0.0, v)};
  const auto r = pointing_reconstruction(ev, DetectorLayout{});
  CHECK(r.verdict == Verdict::Source2);
  // Chord through v along (cos 1, sin 1): distances |cross(dir, source - v)|.
  CHECK(r.miss2_fm == doctest::Approx(3.0 * std::sin(1.0)).epsilon(1e-9));
  CHECK(r.miss1_fm == doctest::Approx(40.0 * std::cos(1.0) + 3.0 * std::sin(1.0)).epsilon(1e-9));

  SUBCASE("mirror image swaps the verdict") {
    const auto m = pointing_reconstruction(mirrored(ev), DetectorLayout{});
    CHECK(m.verdict == Verdict::Source1);
    CHECK(m.miss1_fm == doctest::Approx(r.miss2_fm).epsilon(1e-12));
    CHECK(m.miss2_fm == doctest::Approx(r.miss1_fm).epsilon(1e-12));
  }
  SUBCASE("position resolution makes close calls ambiguous") {
    DetectorLayout coarse;
    coarse.position_resolution_fm = std::abs(r.miss1_fm - r.miss2_fm) + 1.0;
    CHECK(pointing_reconstruction(ev, coarse).verdict == Verdict::Ambiguous);
  }
  SUBCASE("tracks along the beam never reach the cylinder") {
    Event beamline = ev;
    beamline.products[0] = track(0.0, 0.0, 100.0, v);
    CHECK(pointing_reconstruction(beamline, DetectorLayout{}).verdict == Verdict::Unreconstructable);
  }
  SUBCASE("finite length") {
    Event forward = ev;
    forward.products[0] = track(1.0, 1.0, 1000.0, v);
    DetectorLayout short_layout;
    short_layout.max_abs_z_fm = 1000.0;
    CHECK_FALSE(cylinder_hit(forward.products[0].origin, forward.products[0].p.p, short_layout));
    CHECK(pointing_reconstruction(forward, short_layout).verdict == Verdict::Unreconstructable);
  }
  SUBCASE("three-body events are not reconstructed") {
    Event three = ev;
    three.products.push_back(track(2.0, 30.0, 0.0, v));
    CHECK(pointing_reconstruction(three, DetectorLayout{}).verdict == Verdict::Unreconstructable);
  }
}

TEST_CASE("flight-time difference") {
  const double b = 40.0;
  CHECK(flight_time_difference(Vec3{500.0, 0.0, 30.0}, b) == 0.0);
  CHECK(flight_time_difference(Vec3{0.0, 1e6, 0.0}, b) == doctest::Approx(b / kC).epsilon(1e-9));
  CHECK(flight_time_difference(Vec3{0.0, 500.0, 0.0}, b) == doctest::Approx(b / kC));
  CHECK(b / kC == doctest::Approx(1.334e-22).epsilon(1e-3));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double bi = 14.0 + 500.0 * (u(rng) + 1.0);
    const double L = 20.0 + 5000.0 * (u(rng) + 1.0);
    const double phi = std::numbers::pi * u(rng);
    const Vec3 hit{L * std::cos(phi), L * std::sin(phi), 3.0 * L * u(rng)};
    const double dt = flight_time_difference(hit, bi);
    if (!(dt >= 0.0 && dt <= bi / kC)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("timing flag") {
  DetectorLayout layout;
  layout.time_resolution_s = 0.0;
  CHECK(timing_decoherence_flag(layout, 40.0) == TimingFlag::Localizing);
  layout.time_resolution_s = 1e-21;
  CHECK(timing_decoherence_flag(layout, 40.0) == TimingFlag::NonLocalizing);
  layout.time_resolution_s = 1e-23;
  CHECK(timing_decoherence_flag(layout, 40.0) == TimingFlag::Localizing);
}

TEST_CASE("dual-detector protocol") {
  const auto model = upcint::testing::lhc("jpsi");
  const DetectorLayout layout;
  ProtocolOptions opt;
  opt.n_events = 40000;
  opt.threads = 4;

  opt.scenario = CollapseScenario::AtMeasurement;
  const auto meas = dual_detector_protocol(model, ee_config(3), layout, opt);
  opt.scenario = CollapseScenario::AtDecay;
  const auto decay = dual_detector_protocol(model, ee_config(3), layout, opt);

  for (const auto* r : {&meas, &decay}) {
    CHECK(r->counts[0] + r->counts[1] + r->counts[2] + r->counts[3] == opt.n_events);
    CHECK(r->mode_uniformity_p > 0.001);
    REQUIRE(r->marginals.size() == 4);
    for (const auto& m : r->marginals) {
      CAPTURE(m.sample_a);
      CAPTURE(m.sample_b);
      CHECK(m.n_a > 5000);
      CHECK(m.p_value > 0.001);
    }
    CHECK(r->localizing_fraction == 0.0);
    CHECK(r->spacelike_fraction >= 0.0);
    CHECK(r->spacelike_fraction <= 1.0);
    CHECK(r->pointing.reconstructable > 0);
  }
  // With interference the MM dip is present; without it the depth is consistent with 0.
  CHECK(meas.dip.depth > 3.0 * meas.dip.sigma);
  CHECK(std::abs(decay.dip.depth) < 4.0 * decay.dip.sigma);
  CHECK(dip_separation(meas.dip, decay.dip) > 3.0);
  CHECK(meas.dip.pt_dip_mev == decay.dip.pt_dip_mev);

  CHECK(meas.to_json()["dip"]["depth"] == meas.dip.depth);
  CHECK(meas.to_text().find("MM dip") != std::string::npos);

  ProtocolOptions small = opt;
  small.n_events = 999;
  CHECK_THROWS_AS(dual_detector_protocol(model, ee_config(3), layout, small), std::invalid_argument);
}

TEST_CASE("protocol analysis of a stored event file is reproducible") {
  const auto model = upcint::testing::lhc("jpsi");
  auto cfg = ee_config(11);
  cfg.n_events = 2000;
  const EventGenerator gen(model, cfg);
  const auto events = gen.generate_all(2);
  std::stringstream ss;
  write_events_ndjson(ss, events);
  const auto back = read_events_ndjson(ss);
  ProtocolOptions opt;
  const auto a = analyze_protocol(events, model, cfg, gen.window(), DetectorLayout{}, opt);
  const auto b = analyze_protocol(back, model, cfg, gen.window(), DetectorLayout{}, opt);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("timing resolution below b/c localizes every event") {
  const auto model = upcint::testing::lhc("jpsi");
  DetectorLayout fast;
  fast.time_resolution_s = 1e-30;
  ProtocolOptions opt;
  opt.n_events = 4000;
  opt.threads = 2;
  const auto r = dual_detector_protocol(model, ee_config(5), fast, opt);
  CHECK(r.localizing_fraction == 1.0);
  CHECK(std::abs(r.dip.depth) < 4.0 * r.dip.sigma + 1e-12);
}
