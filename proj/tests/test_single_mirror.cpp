#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vibcav/errors.hpp"
#include "vibcav/single_mirror.hpp"

using namespace vibcav;

namespace {
const auto kUnit = PhysicalConstants::natural();

bool rel_diff_ok(double value, double exact) {
  return std::abs(value - exact) <= 1e-8 * std::abs(exact);
}
}  // namespace

TEST_CASE("pair-emission kernel") {
  const auto perfect = MirrorModel::perfect();
  CHECK(gamma_pair(perfect, 0.3, 0.7) == 8.0);
  CHECK(gamma_pair(perfect, 1e9, 5.0) == 8.0);
  // 4 (1 - 0.36 + 0.64), by hand
  CHECK(gamma_pair(MirrorModel::constant_real(0.8), 0.2, 0.9) ==
        doctest::Approx(5.12).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_pair(perfect, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_pair(perfect, 1.0, -1.0), DomainError);

  SUBCASE("symmetric and non-negative for lossless real amplitudes") {
    const double c = std::cos(0.4), s = std::sin(0.4);
    const auto tab = MirrorModel::tabulated({{0.0, {-1.0, 0.0}, {0.0, 0.0}},
                                             {1.0, {-c, 0.0}, {s, 0.0}},
                                             {2.0, {0.6, 0.0}, {0.8, 0.0}}});
    auto g = oracle::rng(5);
    for (int i = 0; i < 500; ++i) {
      const double w = oracle::uniform(g, 1e-3, 2.5);
      const double wp = oracle::uniform(g, 1e-3, 2.5);
      CHECK(gamma_pair(tab, w, wp) == gamma_pair(tab, wp, w));
      CHECK(gamma_pair(tab, w, wp) >= 0.0);
    }
  }
}

TEST_CASE("emission spectrum density") {
  const auto perfect = MirrorModel::perfect();
  const HarmonicDrive drive(0.1, 1.0, 1.0, kUnit);
  CHECK(emission_spectrum_density(perfect, drive, 1.0, kUnit) == 0.0);
  CHECK(emission_spectrum_density(perfect, drive, 0.0, kUnit) == 0.0);
  CHECK(emission_spectrum_density(perfect, drive, 1.5, kUnit) == 0.0);
  CHECK(emission_spectrum_density(perfect, drive, -0.5, kUnit) == 0.0);
  // 0.01 * 0.25 * 8 / (2 pi)
  CHECK(emission_spectrum_density(perfect, drive, 0.5, kUnit) ==
        doctest::Approx(3.18309886183790672e-3).epsilon(1e-14));

  SUBCASE("narrow-bin quadrature agrees with the point value") {
    const double h = 1e-4;
    const double bin = oracle::simpson(
        [&](double w) { return emission_spectrum_density(perfect, drive, w, kUnit); },
        0.5 - h, 0.5 + h, 8);
    CHECK(bin / (2 * h) == doctest::Approx(3.18309886183790672e-3).epsilon(1e-8));
  }

  SUBCASE("parabolic shape with maximum at Omega/2") {
    const HarmonicDrive d(0.3, 7.0, 1.0, kUnit);
    const double peak = emission_spectrum_density(perfect, d, 3.5, kUnit);
    for (int i = 1; i < 700; ++i) {
      const double w = 0.01 * i;
      const double dens = emission_spectrum_density(perfect, d, w, kUnit);
      const double shape = w * (7.0 - w) / (3.5 * 3.5);
      CHECK(std::abs(dens / peak - shape) <= 1e-12 * shape);
      CHECK(dens <= peak);
      CHECK(dens == doctest::Approx(emission_spectrum_density(perfect, d, 7.0 - w, kUnit))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("single-mirror flux") {
  const auto perfect = MirrorModel::perfect();
  const HarmonicDrive drive(0.1, 1.0, 1.0, kUnit);
  const auto q = flux(perfect, drive, kUnit);
  // 2 a^2 Omega^3 / (3 pi c^2) with a = 0.1
  CHECK(q.value == doctest::Approx(2.12206590789193781e-3).epsilon(1e-12));
  CHECK(flux_perfect(drive, kUnit) == doctest::Approx(2.12206590789193781e-3).epsilon(1e-15));

  CHECK(flux(perfect, HarmonicDrive(0.0, 1.0, 1.0, kUnit), kUnit).value == 0.0);

  SUBCASE("oracle equivalence over six decades of Omega") {
    for (double w = 1e-3; w <= 1e3 * 1.0001; w *= 10.0) {
      const HarmonicDrive d(0.01, w, 1.0, kUnit);
      CHECK(rel_diff_ok(flux(perfect, d, kUnit).value, flux_perfect(d, kUnit)));
    }
  }

  SUBCASE("constant mirror approaches the perfect reflector from below") {
    const double target = flux_perfect(drive, kUnit);
    double prev = 0.0;
    for (double r : {0.9, 0.99, 0.999}) {
      const double f = flux(MirrorModel::constant_real(r), drive, kUnit).value;
      CHECK(f < target);
      CHECK(f > prev);
      CHECK(f == doctest::Approx(r * r * target).epsilon(1e-12));
      prev = f;
    }
  }

  SUBCASE("amplitude scaling") {
    const auto tab = MirrorModel::tabulated({{0.2, {-1.0, 0.0}, {0.0, 0.0}},
                                             {0.8, {0.6, 0.0}, {-0.8, 0.0}}});
    const HarmonicDrive base(0.02, 1.0, 1.0, kUnit);
    const double f0 = flux(tab, base, kUnit).value;
    for (double lambda : {0.5, 2.0, 3.7}) {
      const HarmonicDrive scaled(0.02 * lambda, 1.0, 1.0, kUnit);
      CHECK(flux(tab, scaled, kUnit).value ==
            doctest::Approx(lambda * lambda * f0).epsilon(1e-12));
    }
    CHECK(flux_perfect(HarmonicDrive(0.2, 1.0, 1.0, kUnit), kUnit) ==
          doctest::Approx(4.0 * flux_perfect(drive, kUnit)).epsilon(1e-15));
  }
}

TEST_CASE("perfect-mirror photon count") {
  // Omega T = 6 pi and v/c = 0.01 give exactly 1e-4 photons
  const double w = 1.0;
  const double a = 0.01 / (2.0 * w);
  const HarmonicDrive d(a, w, 6.0 * oracle::pi, kUnit);
  CHECK(photons_emitted_perfect(d, kUnit) == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(photons_emitted_perfect(d, kUnit) == flux_perfect(d, kUnit) * d.duration());
  const double v_over_c = d.peak_velocity() / kUnit.c();
  CHECK(photons_emitted_perfect(d, kUnit) ==
        doctest::Approx(w * d.duration() / (6 * oracle::pi) * v_over_c * v_over_c)
            .epsilon(1e-15));
}

TEST_CASE("radiated power") {
  const auto si = PhysicalConstants::codata();
  CHECK(radiated_power(0.0, 1e9, si) == 0.0);
  CHECK(radiated_power(10.0, 2 * oracle::pi * 1e9, si) ==
        doctest::Approx(3.31303507297003983e-24).epsilon(1e-14));
  CHECK_THROWS_AS(radiated_power(-1.0, 1.0, si), DomainError);

  // each pair carries hbar w + hbar (Omega - w) = hbar Omega, half a pair per photon
  const auto perfect = MirrorModel::perfect();
  const HarmonicDrive d(0.1, 1.0, 1.0, kUnit);
  const double moment = integrate(
      [&](double w) { return w * emission_spectrum_density(perfect, d, w, kUnit); }, 0.0,
      1.0).value;
  CHECK(radiated_power(flux_perfect(d, kUnit), 1.0, kUnit) ==
        doctest::Approx(moment).epsilon(1e-12));
}
