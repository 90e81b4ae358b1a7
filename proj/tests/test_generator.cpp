#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "support.hpp"
#include "upcint/errors.hpp"
#include "upcint/event_generator.hpp"
#include "upcint/event_io.hpp"
#include "upcint/spectrum.hpp"
#include "upcint/stats.hpp"

using namespace upcint;

namespace {

constexpr double kHbarC = 197.3269804;
constexpr double kC = 2.99792458e23;

FourVector total(const std::vector<Product>& ps) {
  FourVector s;
  for (const auto& p : ps) s = s + p.p;
  return s;
}

GeneratorConfig config(std::size_t n, DecoherenceModel d, std::uint64_t seed = 1) {
  GeneratorConfig c;
  c.seed = seed;
  c.n_events = n;
  c.decoherence = d;
  return c;
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter streams") {
  CounterStream a(5, 17, StreamPurpose::Kinematics), b(5, 17, StreamPurpose::Kinematics);
  CounterStream c(5, 17, StreamPurpose::DecayTime), d(6, 17, StreamPurpose::Kinematics);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    same_c += x == c.uniform();
    same_d += x == d.uniform();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);

  CounterStream u(1, 0, StreamPurpose::Pilot);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = u.uniform();
  CHECK(stats::ks_one_sample(xs, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value > 0.001);
}

TEST_CASE("decay time") {
  const auto& jpsi = upcint::testing::catalog().meson("jpsi");
  for (double omega : {jpsi.mass_mev, 3.0 * jpsi.mass_mev}) {
    CounterStream rng(3, 0, StreamPurpose::DecayTime);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_decay_time(jpsi, omega, rng);
    CHECK(sum / n == doctest::Approx(omega / jpsi.mass_mev * jpsi.lifetime_s).epsilon(0.005));
  }
  CounterStream rng(3, 0, StreamPurpose::DecayTime);
  CHECK_THROWS_AS(sample_decay_time(jpsi, 0.5 * jpsi.mass_mev, rng), std::domain_error);
}

TEST_CASE("two-body decay kinematics") {
  CHECK(two_body_momentum(775.26, 139.57039, 139.57039) ==
        doctest::Approx(std::sqrt(387.63 * 387.63 - 139.57039 * 139.57039)).epsilon(1e-12));
  CHECK(two_body_momentum(775.26, 139.57039, 139.57039) == doctest::Approx(361.6).epsilon(1e-3));
  CHECK(two_body_momentum(100.0, 60.0, 60.0) == 0.0);

  const auto& rho = upcint::testing::catalog().meson("rho0");
  const auto& pipi = rho.channel("pipi");
  CounterStream rng(9, 1, StreamPurpose::DecayAngles);
  const FourVector rest{rho.mass_mev, {}};
  for (int i = 0; i < 1000; ++i) {
    const auto ps = decay_event(rest, pipi, {1.0, 2.0, 3.0}, rng);
    REQUIRE(ps.size() == 2);
    CHECK((ps[0].p.p + ps[1].p.p).norm() < 1e-9);
    CHECK(ps[0].p.p.norm() == doctest::Approx(361.6).epsilon(1e-3));
    CHECK(ps[0].origin.x == 1.0);
    CHECK(ps[1].origin.z == 3.0);
  }
  const FourVector moving{std::sqrt(rho.mass_mev * rho.mass_mev + 40.0 * 40.0 + 900.0 * 900.0),
                          {30.0, 26.4575131, 900.0}};
  for (int i = 0; i < 1000; ++i) {
    const auto ps = decay_event(moving, pipi, {}, rng);
    const auto s = total(ps);
    CHECK(std::abs(s.e - moving.e) < 1e-6 * moving.e);
    CHECK((s.p - moving.p).norm() < 1e-6 * moving.e);
    for (const auto& p : ps) CHECK(p.p.mass() == doctest::Approx(139.57039).epsilon(1e-6));
  }
}

TEST_CASE("three-body decay kinematics") {
  const auto& omega = upcint::testing::catalog().meson("omega");
  const auto& ch = omega.channel("pipipi0");
  CounterStream rng(2, 4, StreamPurpose::DecayAngles);
  const FourVector moving{std::sqrt(782.66 * 782.66 + 100.0 * 100.0), {60.0, 80.0, 0.0}};
  for (int i = 0; i < 2000; ++i) {
    const auto ps = decay_event(moving, ch, {}, rng);
    REQUIRE(ps.size() == 3);
    const auto s = total(ps);
    CHECK(std::abs(s.e - moving.e) < 1e-6 * moving.e);
    CHECK((s.p - moving.p).norm() < 1e-6 * moving.e);
    const double m12 = (ps[0].p + ps[1].p).mass();
    CHECK(m12 >= 2.0 * 139.57039 - 1e-6);
    CHECK(m12 <= 782.66 - 134.9768 + 1e-6);
  }
}

TEST_CASE("generated events") {
  const auto model = upcint::testing::rhic("jpsi");
  const EventGenerator gen(model, config(20000, DecoherenceModel::survival_light_speed()));
  const auto events = gen.generate_all(4);
  CHECK(gen.stats().pilot_acceptance > EventGenerator::kMinAcceptance);

  std::map<std::string, double> counts;
  for (const auto& ev : events) {
    counts[ev.channel] += 1.0;
    // x_d = p c t / omega, products start at the decay vertex.
    const Vec3 expect = ev.meson.p * (kC * ev.t_decay_s / ev.meson.e);
    CHECK((ev.x_decay - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
    for (const auto& p : ev.products) CHECK((p.origin - ev.decay_vertex()).norm() < 1e-9);
    CHECK(std::abs(ev.production_vertex().y) == doctest::Approx(0.5 * ev.b));
    CHECK(ev.meson.mass() == doctest::Approx(3096.9).epsilon(1e-9));
    CHECK(ev.meson.pt() == doctest::Approx(ev.pt).epsilon(1e-12));

    const auto c = model.amplitude_ratio_c(ev.y, ev.b);
    CHECK(std::abs(ev.a2) / std::abs(ev.a1) == doctest::Approx(c.magnitude).epsilon(1e-12));
    const double phase = ev.pt * ev.b * std::cos(ev.phi) / kHbarC + c.phase_rad;
    const double bracket = 1.0 + c.magnitude * c.magnitude - 2.0 * c.magnitude * std::cos(phase);
    CHECK(std::norm(ev.a1 + ev.a2) == doctest::Approx(bracket).epsilon(1e-9).scale(1.0));
    const auto t = total(ev.products);
    CHECK(std::abs(t.e - ev.meson.e) < 1e-6 * ev.meson.e);
  }

  // Channel frequencies against branching fractions renormalized over the listed channels.
  const auto& meson = model.meson();
  double listed = 0.0;
  for (const auto& ch : meson.channels) listed += ch.fraction;
  std::vector<double> obs, exp;
  for (const auto& ch : meson.channels) {
    obs.push_back(counts[ch.id]);
    exp.push_back(events.size() * ch.fraction / listed);
  }
  CHECK(stats::chi2_counts(obs, exp).p_value > 0.001);
}

TEST_CASE("entangled amplitudes cancel at the symmetric point") {
  Event ev;
  ev.b = 30.0;
  ev.meson = {3096.9, {}};
  const auto [a1, a2] = entangled_phase(ev, {1.0, 0.0});
  CHECK(std::abs(a1 + a2) < 1e-15);
}

TEST_CASE("output is independent of the thread count") {
  const auto model = upcint::testing::rhic("rho0");
  const EventGenerator gen(model, config(3000, DecoherenceModel::full_coherence(), 77));
  auto dump = [](const std::vector<Event>& evs) {
    std::string s;
    for (const auto& e : evs) s += event_to_json(e).dump() + "\n";
    return s;
  };
  const auto all = gen.generate_all(1);
  const std::string one = dump(all);
  CHECK(one == dump(gen.generate_all(2)));
  CHECK(one == dump(gen.generate_all(8)));
  CHECK(dump(gen.generate_range(1000, 10, 3)) ==
        dump(std::vector<Event>(all.begin() + 1000, all.begin() + 1010)));
}

TEST_CASE("azimuth is uniform without interference") {
  const auto model = upcint::testing::rhic("rho0");
  const EventGenerator gen(model, config(40000, DecoherenceModel::full_decoherence(), 5));
  const auto events = gen.generate_all(4);
  std::vector<double> obs(20, 0.0), exp(20, events.size() / 20.0);
  std::vector<double> phis;
  for (const auto& ev : events) {
    obs[std::min<std::size_t>(19, static_cast<std::size_t>(ev.phi / (2.0 * std::numbers::pi) * 20))] += 1.0;
    phis.push_back(ev.phi);
  }
  CHECK(stats::chi2_counts(obs, exp).p_value > 0.001);
  CHECK(stats::ks_one_sample(phis, [](double x) { return x / (2.0 * std::numbers::pi); }).p_value > 0.001);
}

TEST_CASE("coherent sampling suppresses the in-phase region") {
  const auto model = upcint::testing::rhic("rho0");
  const auto coh = EventGenerator(model, config(40000, DecoherenceModel::full_coherence(), 8)).generate_all(4);
  const auto inc = EventGenerator(model, config(40000, DecoherenceModel::full_decoherence(), 8)).generate_all(4);
  // |sin(phase / 2)| < 0.02 means 1 - cos(phase) < 8e-4.
  auto in_phase = [](const std::vector<Event>& evs) {
    std::size_t n = 0;
    for (const auto& ev : evs)
      n += std::abs(std::sin(0.5 * ev.pt * ev.b * std::cos(ev.phi) / kHbarC)) < 0.02;
    return n;
  };
  const auto n_inc = in_phase(inc), n_coh = in_phase(coh);
  CHECK(n_inc >= 200);
  CHECK(100 * n_coh < n_inc);
}

TEST_CASE("reweighting incoherent events reproduces the coherent spectrum") {
  const auto model = upcint::testing::rhic("rho0");
  const auto inc = EventGenerator(model, config(60000, DecoherenceModel::full_decoherence(), 21)).generate_all(4);
  const auto coh = EventGenerator(model, config(60000, DecoherenceModel::full_coherence(), 22)).generate_all(4);
  const double cut = 20.0;
  double w_all = 0.0, w_below = 0.0;
  for (const auto& ev : inc) {
    const double w = std::norm(ev.a1 + ev.a2) / (std::norm(ev.a1) + std::norm(ev.a2));
    w_all += w;
    if (ev.pt < cut) w_below += w;
  }
  const double f_rw = w_below / w_all;
  const double f_coh =
      static_cast<double>(std::count_if(coh.begin(), coh.end(), [&](const Event& e) { return e.pt < cut; })) /
      coh.size();
  const SpectrumEngine engine(model, 0.0);
  const auto dec = DecoherenceModel::full_coherence();
  const double f_quad = engine.pt_integrated_rate(0.0, cut, dec) / engine.pt_integrated_rate(0.0, 300.0, dec);
  const double sigma = 2.0 * std::sqrt(f_quad * (1.0 - f_quad) / coh.size());
  CHECK(std::abs(f_rw - f_quad) < 4.0 * sigma);
  CHECK(std::abs(f_coh - f_quad) < 4.0 * sigma);
}

TEST_CASE("restrictive window raises SamplingFailure") {
  const auto model = upcint::testing::rhic("rho0");
  auto cfg = config(10, DecoherenceModel::full_coherence());
  cfg.pt_max = 0.05;
  CHECK_THROWS_AS(EventGenerator(model, cfg), SamplingFailure);
  cfg.decoherence = DecoherenceModel::full_decoherence();
  CHECK_NOTHROW(EventGenerator(model, cfg));
}

TEST_CASE("timing resolution below b/c forces incoherence") {
  const auto model = upcint::testing::rhic("jpsi");
  auto cfg = config(2000, DecoherenceModel::full_coherence());
  cfg.timing_resolution_s = 20.0 / kC;
  for (const auto& ev : EventGenerator(model, cfg).generate_all(2)) {
    CHECK(ev.localizing == (ev.b > 20.0));
    if (ev.localizing) CHECK(ev.eta == 1.0);
    else CHECK(ev.eta == 0.0);
  }
}

TEST_CASE("event io round trip") {
  const auto model = upcint::testing::rhic("jpsi");
  const auto evs = EventGenerator(model, config(50, DecoherenceModel::survival_light_speed())).generate_all();
  std::stringstream ss;
  ss << "{\"meta\": {\"tool\": \"upcint\"}}\n";
  write_events_ndjson(ss, evs);
  const auto back = read_events_ndjson(ss);
  REQUIRE(back.size() == evs.size());
  for (std::size_t i = 0; i < evs.size(); ++i) CHECK(event_to_json(back[i]) == event_to_json(evs[i]));
}
