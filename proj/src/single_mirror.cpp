#include "vibcav/single_mirror.hpp"

#include <cmath>

#include "vibcav/errors.hpp"

namespace vibcav {

double gamma_pair(const MirrorModel& mirror, double omega, double omega_p) {
  if (!(omega > 0.0) || !(omega_p > 0.0)) {
    throw DomainError("emission kernel needs strictly positive frequencies");
  }
  const auto m = mirror.amplitudes(omega);
  const auto mp = mirror.amplitudes(omega_p);
  // 2 z + 2 conj(z) with z = 1 - s s' + r r'
  return 4.0 * (1.0 - m.s * mp.s + m.r * mp.r).real();
}

double emission_spectrum_density(const MirrorModel& mirror, const HarmonicDrive& drive,
                                 double omega, const PhysicalConstants& constants) {
  const double big = drive.omega();
  if (!(omega > 0.0) || !(omega < big)) return 0.0;
  const double scale = drive.amplitude() / constants.c();
  const double partner = big - omega;
  return scale * scale / (2.0 * kPi) * omega * partner *
         gamma_pair(mirror, omega, partner);
}

IntegrationResult flux(const MirrorModel& mirror, const HarmonicDrive& drive,
                       const PhysicalConstants& constants,
                       const IntegrationSettings& settings) {
  const double big = drive.omega();
  IntegrationSettings local = settings;
  // Tabulated amplitudes have slope kinks at the sample frequencies.
  if (mirror.kind() == MirrorKind::Tabulated) {
    const auto samples = mirror.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double w = samples[i].omega;
      const double gap =
          i + 1 < samples.size() ? samples[i + 1].omega - w : w - samples[i - 1].omega;
      local.pole_hints.push_back({w / big, 0.5 * gap / big});
      local.pole_hints.push_back({1.0 - w / big, 0.5 * gap / big});
    }
  }
  // integrate over u = omega / Omega so the partition is scale free
  auto integrand = [&](double u) {
    return big * emission_spectrum_density(mirror, drive, u * big, constants);
  };
  return integrate(integrand, 0.0, 1.0, local);
}

double flux_perfect(const HarmonicDrive& drive, const PhysicalConstants& constants) {
  const double a = drive.amplitude() / constants.c();
  const double w = drive.omega();
  return 2.0 * a * a * w * w * w / (3.0 * kPi);
}

double photons_emitted_perfect(const HarmonicDrive& drive,
                               const PhysicalConstants& constants) {
  return flux_perfect(drive, constants) * drive.duration();
}

double radiated_power(double flux, double omega, const PhysicalConstants& constants) {
  if (!(flux >= 0.0)) throw DomainError("photon flux must be non-negative");
  return 0.5 * flux * constants.hbar() * omega;
}

}  // namespace vibcav
