#include <cmath>
#include <sstream>

#include <doctest.h>

#include "support.hpp"
#include "upcint/errors.hpp"

using namespace upcint;
using upcint::testing::catalog;

TEST_CASE("physical constants") {
  CHECK(PhysicalConstants::hbar_c == 197.3269804);
  CHECK(PhysicalConstants::alpha_em == doctest::Approx(1.0 / 137.035999).epsilon(1e-15));
  CHECK(PhysicalConstants::c_light == 2.99792458e23);
}

TEST_CASE("lorentz gamma") {
  CHECK(lorentz_gamma(2.0 * 0.9315, 0.9315) == doctest::Approx(1.0));
  CHECK(lorentz_gamma(200.0, 0.9315) == doctest::Approx(100.0 / 0.9315).epsilon(1e-14));
  CHECK(lorentz_gamma(200.0) == doctest::Approx(107.4).epsilon(1e-3));
  CHECK(lorentz_gamma(5500.0) == doctest::Approx(2952.0).epsilon(1e-3));
  CHECK(lorentz_gamma(200.0) / lorentz_gamma(100.0) == 2.0);
  CHECK_THROWS_AS(lorentz_gamma(1.0), std::domain_error);
}

TEST_CASE("decay distance") {
  const auto& rho = catalog().meson("rho0");
  const auto& jpsi = catalog().meson("jpsi");
  NucleusSpec au = catalog().nucleus("Au");
  // Independent evaluation: 2 hbar c (c tau) / (R M).
  const double c = 2.99792458e23;
  CHECK(decay_distance(rho, au) ==
        doctest::Approx(2.0 * 197.3269804 / (7.0 * 775.26) * 4e-24 * c).epsilon(1e-12));
  CHECK(decay_distance(rho, au) == doctest::Approx(0.09).epsilon(0.05));
  CHECK(decay_distance(jpsi, au) == doctest::Approx(41.0).epsilon(0.01));

  MesonSpec stable = jpsi;
  stable.lifetime_s = 0.0;
  CHECK(decay_distance(stable, au) == 0.0);

  SUBCASE("linear scaling") {
    const double d0 = decay_distance(jpsi, au);
    MesonSpec m = jpsi;
    m.lifetime_s *= 2.0;
    CHECK(decay_distance(m, au) == doctest::Approx(2.0 * d0));
    m = jpsi;
    m.mass_mev *= 2.0;
    CHECK(decay_distance(m, au) == doctest::Approx(0.5 * d0));
    NucleusSpec big = au;
    big.radius_fm *= 2.0;
    CHECK(decay_distance(jpsi, big) == doctest::Approx(0.5 * d0));
  }
}

TEST_CASE("photon energies for rapidity") {
  auto k0 = photon_energies_for_rapidity(0.0, 775.26);
  CHECK(k0.k1 == doctest::Approx(387.63));
  CHECK(k0.k2 == doctest::Approx(387.63));
  auto k1 = photon_energies_for_rapidity(1.0, 775.26);
  CHECK(k1.k1 == doctest::Approx(1053.7).epsilon(1e-4));
  CHECK(k1.k2 == doctest::Approx(142.6).epsilon(1e-3));
  auto km = photon_energies_for_rapidity(-1.0, 775.26);
  CHECK(km.k1 == doctest::Approx(k1.k2));
  CHECK(km.k2 == doctest::Approx(k1.k1));
  for (double y : {-4.0, -0.3, 0.0, 2.2, 7.5})
    CHECK(photon_energies_for_rapidity(y, 3096.9).k1 * photon_energies_for_rapidity(y, 3096.9).k2 ==
          doctest::Approx(3096.9 * 3096.9 / 4.0).epsilon(1e-13));
}

TEST_CASE("shipped catalog") {
  const auto& au = catalog().nucleus("Au");
  CHECK(au.Z == 79);
  CHECK(au.A == 197);
  CHECK(au.radius_fm == 7.0);
  const auto& pb = catalog().nucleus("Pb");
  CHECK(pb.Z == 82);
  CHECK(pb.A == 208);
  CHECK(pb.radius_fm == 7.1);

  CHECK(catalog().meson("rho0").lifetime_s == 4e-24);
  CHECK(catalog().meson("jpsi").lifetime_s == 7.5e-21);
  for (const auto& ch : catalog().meson("jpsi").channels) CHECK(ch.fraction <= 0.07);
  for (const auto& [name, m] : catalog().mesons()) {
    CHECK(m.other_fraction() >= 0.0);
    for (const auto& ch : m.channels) CHECK(ch.mass_sum() < m.mass_mev);
  }
  CHECK_THROWS_AS(catalog().meson("upsilon"), ConfigError);
}

TEST_CASE("beam window") {
  auto beam = make_beam(catalog().nucleus("Au"), 200.0);
  CHECK(beam.nucleus.gamma_beam == doctest::Approx(107.354).epsilon(1e-5));
  CHECK(beam.effective_b_min() == 14.0);
  beam.b_min_fm = 10.0;
  CHECK_THROWS_AS(beam.validate(), std::invalid_argument);
  beam.hadronic_exclusion = false;
  CHECK_NOTHROW(beam.validate());
}

TEST_CASE("catalog parse errors carry line and key") {
  SUBCASE("unknown key") {
    std::istringstream in("kind = nucleus\nname = X\nZ = 1\nA = 1\nradius_fm = 1\ncolour = red\n");
    try {
      Catalog::parse(in, "t");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 6);
      CHECK(e.key() == "colour");
    }
  }
  SUBCASE("closed channel") {
    std::istringstream in(
        "kind = meson\nname = light\nmass_mev = 100\nlifetime_s = 1e-23\n"
        "channel = pipi:0.5:139.57,139.57\nsigma.pomeron_norm = 1\n");
    CHECK_THROWS_AS(Catalog::parse(in, "t"), ConfigError);
  }
  SUBCASE("fractions above one") {
    std::istringstream in(
        "kind = meson\nname = m\nmass_mev = 1000\nlifetime_s = 1e-23\n"
        "channel = a:0.7:1,1\nchannel = b:0.7:1,1\nsigma.pomeron_norm = 1\n");
    CHECK_THROWS_AS(Catalog::parse(in, "t"), ConfigError);
  }
  SUBCASE("bad number") {
    std::istringstream in("kind = nucleus\nname = X\nZ = one\n");
    try {
      Catalog::parse(in, "t");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
      CHECK(e.key() == "Z");
    }
  }
}
