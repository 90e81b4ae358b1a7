#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "support.hpp"
#include "upcint/errors.hpp"
#include "upcint/spectrum.hpp"

using namespace upcint;

namespace {

constexpr double kHbarC = 197.3269804;

// Trapezoid in phi; exponentially accurate for this periodic integrand.
double phi_average(double pt, double b, const AmplitudeRatio& c, double e, double a1) {
  const int n = 4096;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += point_rate({0.0, pt, 2.0 * std::numbers::pi * i / n, b}, c, e, a1);
  return s / n;
}

}  // namespace

TEST_CASE("eta models") {
  const auto& jpsi = upcint::testing::catalog().meson("jpsi");
  const double ctau = jpsi.ctau_fm();
  const double m = jpsi.mass_mev;
  CHECK(eta(20.0, jpsi, m, 0.0, DecoherenceModel::full_coherence()) == 0.0);
  CHECK(eta(20.0, jpsi, m, 0.0, DecoherenceModel::full_decoherence()) == 1.0);
  CHECK(eta(20.0, jpsi, m, 0.0, DecoherenceModel::fixed(0.3)) == 0.3);
  CHECK(eta(20.0, jpsi, m, 0.0, DecoherenceModel::survival_light_speed()) ==
        doctest::Approx(1.0 - std::exp(-20.0 / ctau)).epsilon(1e-12));
  CHECK(eta(20.0, jpsi, 2.0 * m, 0.0, DecoherenceModel::survival_light_speed()) ==
        doctest::Approx(1.0 - std::exp(-10.0 / ctau)).epsilon(1e-12));
  CHECK(eta(20.0, jpsi, m, 0.0, DecoherenceModel::survival_meson_velocity()) == 1.0);
  CHECK(eta(0.0, jpsi, m, 50.0, DecoherenceModel::survival_meson_velocity()) == 0.0);
  CHECK(eta(20.0, jpsi, m, 50.0, DecoherenceModel::survival_meson_velocity()) ==
        doctest::Approx(1.0 - std::exp(-m * 20.0 / (50.0 * ctau))).epsilon(1e-12));

  const auto& rho = upcint::testing::catalog().meson("rho0");
  CHECK(eta(14.0, rho, rho.mass_mev, 0.0, DecoherenceModel::survival_light_speed()) > 0.999);

  double prev = -1.0;
  for (double b = 1.0; b < 1e4; b *= 1.5) {
    const double e = eta(b, jpsi, m, 0.0, DecoherenceModel::survival_light_speed());
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    CHECK(e > prev);
    prev = e;
  }
  CHECK_THROWS(DecoherenceModel::fixed(1.5));
  CHECK(DecoherenceModel::parse("survival_meson_velocity").kind == DecoherenceKind::SurvivalMesonVelocity);
  CHECK(DecoherenceModel::parse("fixed", 0.4).fixed_eta == 0.4);
}

TEST_CASE("point rate") {
  const AmplitudeRatio one{1.0, 0.0};
  CHECK(point_rate({0.0, 0.0, 0.0, 40.0}, one, 0.0, 2.0) == 0.0);
  CHECK(point_rate({0.0, 100.0, std::numbers::pi / 2, 40.0}, one, 0.0, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
  const double pt_pi = std::numbers::pi * kHbarC / 40.0;
  CHECK(point_rate({0.0, pt_pi, 0.0, 40.0}, one, 0.0, 2.0) == doctest::Approx(8.0));
  CHECK(point_rate({0.0, 0.0, 0.0, 40.0}, one, 1.0, 2.0) == 4.0);
  CHECK(point_rate({0.0, 0.0, 0.0, 40.0}, one, 0.25, 1.0) == doctest::Approx(0.5));
  CHECK(point_rate({0.0, 0.0, 0.0, 40.0}, {1.0, std::numbers::pi}, 0.0, 1.0) == doctest::Approx(4.0));
  CHECK(point_rate({0.0, 0.0, 0.0, 40.0}, {0.5, 0.0}, 0.0, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("azimuthal average against phi quadrature on a 50x50 grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double pt = 300.0 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double b = 14.0 * std::pow(500.0 / 14.0, j / 49.0);
      const AmplitudeRatio c{0.2 + 2.0 * u(rng), 0.5 * u(rng)};
      const double e = u(rng);
      const double exact = azimuth_averaged_rate(pt, b, c, e, 1.0);
      const double scale = 1.0 + c.magnitude * c.magnitude;
      CHECK(std::abs(exact - phi_average(pt, b, c, e, 1.0)) / scale < 1e-8);
    }
  }
}

TEST_CASE("rate bounds") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const KinematicPoint kp{0.0, 200.0 * u(rng), 2.0 * std::numbers::pi * u(rng), 14.0 + 300.0 * u(rng)};
    const AmplitudeRatio c{3.0 * u(rng), u(rng)};
    const double r = point_rate(kp, c, u(rng), 1.0);
    CHECK(r >= 0.0);
    CHECK(r <= (1.0 + c.magnitude) * (1.0 + c.magnitude) * (1.0 + 1e-12));
  }
}

TEST_CASE("b weight and window") {
  const auto model = upcint::testing::rhic("rho0");
  const auto w = resolve_b_window(model, 0.0);
  CHECK(w.b_min == 14.0);
  CHECK(w.b_max > 10.0 * impact_parameter_summary(model, 0.0, w).median * 0.999);
  CHECK(b_weight(10.0, 0.0, model, w) == 0.0);
  CHECK(b_weight(w.b_max * 1.01, 0.0, model, w) == 0.0);
  CHECK(b_weight(40.0, 0.0, model, w) == doctest::Approx(model.source_weights(0.0, 40.0).total()));
  const auto s = impact_parameter_summary(model, 0.0, w);
  CHECK(s.median > w.b_min);
  CHECK(s.median < s.mean);
}

TEST_CASE("spectrum engine") {
  const auto model = upcint::testing::rhic("rho0");
  const SpectrumEngine engine(model, 0.0);

  SUBCASE("symmetric null at pT = 0") {
    const auto p = engine.evaluate(0.0, DecoherenceModel::full_coherence());
    CHECK(p.rate_interf <= 1e-12 * p.rate_no_interf);
  }
  SUBCASE("full decoherence leaves the spectrum untouched") {
    PtGrid g{0.0, 150.0, 30};
    const auto t = engine.pt_spectrum(g, DecoherenceModel::full_decoherence(), false);
    for (std::size_t i = 0; i < t.pt.size(); ++i) {
      CHECK(t.rate_interf[i] == t.rate_no_interf[i]);
      CHECK(t.ratio[i] == 1.0);
    }
  }
  SUBCASE("dip depth scales with 1 - eta") {
    const double d0 = engine.dip_depth(DecoherenceModel::full_coherence());
    CHECK(d0 == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 2.0;
    for (double e : {0.0, 0.1, 0.3, 0.5, 0.9, 1.0}) {
      const double d = engine.dip_depth(DecoherenceModel::fixed(e));
      CHECK(d == doctest::Approx((1.0 - e) * d0).epsilon(1e-9));
      CHECK(d < prev);
      prev = d;
    }
  }
  SUBCASE("interference moves rate without changing the total") {
    const double with = engine.pt_integrated_rate(0.0, 600.0, DecoherenceModel::full_coherence());
    const double without =
        engine.pt_integrated_rate(0.0, 600.0, DecoherenceModel::full_decoherence(), false);
    CHECK(std::abs(with / without - 1.0) < 1e-3);
  }
  SUBCASE("no-interference rate against a 2D (pT, b) quadrature") {
    // Simpson in pT times Simpson in ln b, independent of the engine's GK panels.
    const auto win = engine.window();
    const int nb = 2000, np = 2000;
    const double u0 = std::log(win.b_min), u1 = std::log(win.b_max), du = (u1 - u0) / nb;
    double bint = 0.0;
    for (int i = 0; i <= nb; ++i) {
      const double b = std::exp(u0 + i * du);
      const double wt = (i == 0 || i == nb) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      bint += wt * 2.0 * std::numbers::pi * b * b * model.source_weights(0.0, b).total();
    }
    bint *= du / 3.0;
    double pint = 0.0;
    const double dp = 200.0 / np;
    for (int i = 0; i <= np; ++i) {
      const double pt = i * dp, f = model.form_factor()(pt);
      const double wt = (i == 0 || i == np) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      pint += wt * 2.0 * std::numbers::pi * pt * f * f;
    }
    pint *= dp / 3.0;
    CHECK(engine.no_interference_integral() == doctest::Approx(bint).epsilon(1e-6));
    CHECK(engine.pt_integrated_rate(0.0, 200.0, DecoherenceModel::full_decoherence(), false) ==
          doctest::Approx(bint * pint).epsilon(1e-6));
  }
  SUBCASE("fig2 normalization") {
    PtGrid g{0.0, 100.0, 10};
    const auto raw = engine.pt_spectrum(g, DecoherenceModel::full_coherence(), false);
    const auto norm = engine.pt_spectrum(g, DecoherenceModel::full_coherence(), true);
    CHECK(norm.normalization == engine.no_interference_integral());
    for (std::size_t i = 0; i < raw.pt.size(); ++i) {
      CHECK(norm.rate_interf[i] == doctest::Approx(raw.rate_interf[i] / norm.normalization));
      CHECK(norm.ratio[i] == raw.ratio[i]);
    }
    CHECK(norm.max_rel_error < SpectrumEngine::kMaxRelError);
  }
  SUBCASE("threads give identical tables") {
    PtGrid g{0.0, 150.0, 40};
    const auto a = engine.pt_spectrum(g, DecoherenceModel::survival_light_speed(), false, 1);
    const auto b = engine.pt_spectrum(g, DecoherenceModel::survival_light_speed(), false, 4);
    CHECK(a.rate_interf == b.rate_interf);
  }
}

TEST_CASE("rapidity reflection symmetry of the dip") {
  const auto model = upcint::testing::rhic("jpsi");
  for (double y : {0.5, 1.5}) {
    const SpectrumEngine plus(model, y), minus(model, -y);
    const auto dec = DecoherenceModel::survival_light_speed();
    CHECK(plus.dip_depth(dec) == doctest::Approx(minus.dip_depth(dec)).epsilon(1e-6));
  }
}

TEST_CASE("vanishing production weight raises NonConvergence") {
  const auto model = upcint::testing::rhic("jpsi");
  CHECK_THROWS_AS(SpectrumEngine(model, 0.0, BWindow{1e6, 2e6}), NonConvergence);
  CHECK_THROWS_AS(SpectrumEngine(model, 0.0, BWindow{20.0, 10.0}), std::invalid_argument);
}
