#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vibcav/core_model.hpp"
#include "vibcav/errors.hpp"

using namespace vibcav;

TEST_CASE("physical constants") {
  const auto si = PhysicalConstants::codata();
  CHECK(si.c() == 299792458.0);
  CHECK(si.hbar() == 1.054571817e-34);
  CHECK(si.k_B() == 1.380649e-23);
  const auto unit = PhysicalConstants::natural();
  CHECK(unit.c() == 1.0);
  CHECK_THROWS_AS(PhysicalConstants(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhysicalConstants(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhysicalConstants(1.0, 1.0, std::nan("")), DomainError);
}

TEST_CASE("mirror models are lossless") {
  const auto perfect = MirrorModel::perfect();
  CHECK(perfect.reflection(3.0) == std::complex<double>(-1.0, 0.0));
  CHECK(perfect.transmission(3.0) == std::complex<double>(0.0, 0.0));

  auto g = oracle::rng();
  for (int i = 0; i < 1000; ++i) {
    const double r = oracle::uniform(g, 1e-6, 1.0);
    const auto m = MirrorModel::constant_real(r);
    const double s = m.transmission(1.0).real();
    CHECK(s >= 0.0);
    CHECK(std::abs(r * r + s * s - 1.0) <= 1e-15);
  }
  CHECK(MirrorModel::constant_real(1.0).transmission(2.0) == 0.0);
  CHECK_THROWS_AS(MirrorModel::constant_real(0.0), DomainError);
  CHECK_THROWS_AS(MirrorModel::constant_real(1.2), DomainError);
}

TEST_CASE("tabulated mirror interpolation renormalizes") {
  const double c = std::cos(0.3), s = std::sin(0.3);
  const auto m = MirrorModel::tabulated({{1.0, {-1.0, 0.0}, {0.0, 0.0}},
                                         {2.0, {-c, 0.0}, {s, 0.0}},
                                         {4.0, {0.0, -1.0}, {0.0, 0.0}}});
  CHECK(m.kind() == MirrorKind::Tabulated);
  CHECK(m.has_complex_phases());
  for (double w : {0.5, 1.0, 1.3, 2.0, 2.7, 3.99, 4.0, 9.0}) {
    const auto a = m.amplitudes(w);
    CHECK(std::norm(a.r) + std::norm(a.s) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // held constant outside the sampled band
  CHECK(m.reflection(0.1) == std::complex<double>(-1.0, 0.0));
  CHECK(m.reflection(10.0) == std::complex<double>(0.0, -1.0));
  // at a sample the tabulated value is returned unchanged
  CHECK(m.reflection(2.0).real() == doctest::Approx(-c).epsilon(1e-15));

  const auto real = MirrorModel::tabulated({{1.0, {-1.0, 0.0}, {0.0, 0.0}},
                                            {2.0, {-c, 0.0}, {s, 0.0}}});
  CHECK_FALSE(real.has_complex_phases());

  CHECK_THROWS_AS(MirrorModel::tabulated({{1.0, {-1.0, 0.0}, {0.0, 0.0}}}), DomainError);
  CHECK_THROWS_AS(MirrorModel::tabulated({{2.0, {-1.0, 0.0}, {0.0, 0.0}},
                                          {1.0, {-1.0, 0.0}, {0.0, 0.0}}}),
                  DomainError);
  CHECK_THROWS_AS(MirrorModel::tabulated({{1.0, {-0.9, 0.0}, {0.0, 0.0}},
                                          {2.0, {-1.0, 0.0}, {0.0, 0.0}}}),
                  DomainError);
}

TEST_CASE("harmonic drive") {
  const HarmonicDrive d(0.1, 2.0, 5.0, PhysicalConstants::natural());
  CHECK(d.peak_velocity() == 2.0 * 2.0 * 0.1);
  CHECK(d.displacement(1.0) == doctest::Approx(0.2 * std::cos(2.0)));
  CHECK(d.displacement(-1.0) == 0.0);
  CHECK(d.displacement(6.0) == 0.0);
  // v/c = 0.4 lies outside the perturbative regime: warning, not an error
  CHECK(d.warnings().size() == 1);

  const HarmonicDrive small(1e-9, 2.0 * oracle::pi * 1e9, 1.0);
  CHECK(small.warnings().empty());

  CHECK_THROWS_AS(HarmonicDrive(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(HarmonicDrive(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(HarmonicDrive(1.0, 1.0, 0.0), DomainError);

  auto g = oracle::rng(7);
  for (int i = 0; i < 200; ++i) {
    const double a = oracle::log_uniform(g, 1e-12, 1.0);
    const double w = oracle::log_uniform(g, 1e-3, 1e12);
    const HarmonicDrive dr(a, w, 1.0);
    CHECK(dr.peak_velocity() == 2.0 * w * a);
  }
}

TEST_CASE("cavity configuration accessors") {
  const CavityConfig cav(0.5e-9, 0.01, 1e-9, -2e-9, 2.0 * oracle::pi * 1e9, 1.0);
  CHECK(cav.mirror_product() == doctest::Approx(std::exp(-0.02)));
  CHECK(cav.finesse() == doctest::Approx(100.0));
  CHECK(cav.fundamental_frequency() == doctest::Approx(oracle::pi / 0.5e-9));
  CHECK(cav.resonance_order() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cav.warnings().empty());

  const CavityConfig lossy(1.0, 0.5, 0.1, 0.0, 1.0, 1.0);
  CHECK(lossy.warnings().size() == 1);

  CHECK_THROWS_AS(CavityConfig(0.0, 0.01, 0.1, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CavityConfig(1.0, 0.0, 0.1, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CavityConfig(1.0, 0.01, 0.1, 0.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(CavityConfig(1.0, 0.01, 0.1, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("nondimensionalize") {
  const auto unit = PhysicalConstants::natural();
  SUBCASE("unit choice c = tau = 1") {
    const CavityConfig cav(1.0, 0.01, 0.1, 0.0, 2.0 * oracle::pi, 1.0);
    const auto d = nondimensionalize(cav, unit);
    CHECK(d.x_drive == doctest::Approx(2.0 * oracle::pi));
    CHECK(d.alpha1 == doctest::Approx(0.1));
    CHECK(d.alpha2 == 0.0);
  }
  SUBCASE("GHz drive in a half-nanosecond cavity") {
    const CavityConfig cav(0.5e-9, 0.01, 1e-9, 0.0, 2.0 * oracle::pi * 1e9, 1.0);
    const auto d = nondimensionalize(cav, PhysicalConstants::codata());
    CHECK(d.x_drive == doctest::Approx(oracle::pi).epsilon(1e-15));
  }
  SUBCASE("round trip on random configurations") {
    auto g = oracle::rng(11);
    const auto si = PhysicalConstants::codata();
    auto rel = [](double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); };
    for (int i = 0; i < 2000; ++i) {
      const double tau = oracle::log_uniform(g, 1e-12, 1.0);
      const CavityConfig cav(tau, oracle::log_uniform(g, 1e-9, 1e-1),
                             oracle::uniform(g, -1e-6, 1e-6), oracle::uniform(g, -1e-6, 1e-6),
                             oracle::log_uniform(g, 1e-2, 1e3) / tau,
                             oracle::log_uniform(g, 1e-3, 1e3));
      const auto back = redimensionalize(nondimensionalize(cav, si), tau, cav.duration(), si);
      CHECK(rel(back.omega(), cav.omega()) <= 1e-15);
      CHECK(rel(back.a1(), cav.a1()) <= 1e-15);
      CHECK(rel(back.a2(), cav.a2()) <= 1e-15);
      CHECK(back.rho() == cav.rho());
      CHECK(back.tau() == cav.tau());
    }
  }
}

TEST_CASE("thermal occupation") {
  const auto si = PhysicalConstants::codata();
  CHECK(thermal_occupation(ThermalContext(0.0), 1e9, si) == 0.0);
  CHECK(vacuum_ok(ThermalContext(0.0), 1e9, si));

  // hbar w = k_B theta ln 2 is the n = 1 boundary
  const double theta = 0.05;
  const double w = si.k_B() * theta * std::log(2.0) / si.hbar();
  CHECK(thermal_occupation(ThermalContext(theta), w, si) == doctest::Approx(1.0).epsilon(1e-14));

  // 30 mK at 1 GHz; reference from a 30-digit evaluation of the Bose factor
  const double occ = thermal_occupation(ThermalContext(0.03), 2.0 * oracle::pi * 1e9, si);
  CHECK(occ == doctest::Approx(0.253050339447834).epsilon(1e-13));
  CHECK(vacuum_ok(ThermalContext(0.03), 2.0 * oracle::pi * 1e9, si));
  CHECK_FALSE(vacuum_ok(ThermalContext(4.0), 2.0 * oracle::pi * 1e9, si));

  CHECK_THROWS_AS(thermal_occupation(ThermalContext(1.0), 0.0, si), DomainError);
  CHECK_THROWS_AS(ThermalContext(-1.0), DomainError);

  SUBCASE("monotone in frequency and temperature") {
    double prev = INFINITY;
    for (int i = 1; i <= 200; ++i) {
      const double n = thermal_occupation(ThermalContext(0.1), 1e9 * i, si);
      CHECK(n < prev);
      prev = n;
    }
    prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double n = thermal_occupation(ThermalContext(0.01 * i), 1e10, si);
      CHECK(n > prev);
      prev = n;
    }
  }
}
