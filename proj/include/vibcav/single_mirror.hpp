#pragma once

// Photon emission from one harmonically vibrating mirror in vacuum.

#include "vibcav/core_model.hpp"
#include "vibcav/quadrature.hpp"

namespace vibcav {

/// Pair-emission kernel 4 Re(1 - s[w] s[w'] + r[w] r[w']), summed over both
/// output ports. Equals 8 for a perfect reflector and 8 r^2 for a constant
/// real mirror. Throws DomainError unless both frequencies are positive.
double gamma_pair(const MirrorModel& mirror, double omega, double omega_p);

/// d(N/T)/d(omega) in photons per second per (rad/s):
/// (a^2/c^2) (1/2pi) w (Omega - w) gamma[w, Omega - w] on 0 < w < Omega,
/// zero elsewhere.
double emission_spectrum_density(const MirrorModel& mirror, const HarmonicDrive& drive,
                                  double omega, const PhysicalConstants& constants);

/// Photon flux N/T (photons/s), integrating the emission density over
/// (0, Omega). The integration runs over u = omega/Omega in (0, 1); pole
/// hints in `settings` are read in that variable. Propagates
/// ConvergenceFailure.
IntegrationResult flux(const MirrorModel& mirror, const HarmonicDrive& drive,
                       const PhysicalConstants& constants,
                       const IntegrationSettings& settings = {});

/// Closed form for a perfect reflector: N/T = 2 a^2 Omega^3 / (3 pi c^2).
double flux_perfect(const HarmonicDrive& drive, const PhysicalConstants& constants);
/// N = flux_perfect * T, equivalently (Omega T / 6 pi) (v/c)^2.
double photons_emitted_perfect(const HarmonicDrive& drive,
                               const PhysicalConstants& constants);

/// Radiated power 0.5 * flux * hbar * Omega (one hbar*Omega per emitted pair).
double radiated_power(double flux, double omega, const PhysicalConstants& constants);

}  // namespace vibcav
