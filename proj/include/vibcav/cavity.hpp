#pragma once

// Vibrating two-mirror cavity with partly transmitting mirrors.
//
// Frequencies enter the cavity response through x = omega * tau. Mode k sits
// at x = k pi with half-width rho. The per-mode-pair and resummed fluxes are
// high-finesse (rho << 1) results; flux_quadrature integrates the pair
// emission kernel directly and serves as their cross-check.

#include <vector>

#include "vibcav/core_model.hpp"
#include "vibcav/quadrature.hpp"

namespace vibcav {

/// D+(x) = sinh(2 rho) / (cosh(2 rho) - cos(2x)). Throws DomainError for rho <= 0.
double airy_plus(double x, double rho);
/// D-(x) = 2 sinh(rho) cos(x) / (cosh(2 rho) - cos(2x)).
double airy_minus(double x, double rho);

/// Lorentzian expansions sum_{k=-K..K} rho / (rho^2 + (x - k pi)^2), the
/// second one weighted by (-1)^k. Throws DomainError for K < 1.
double airy_plus_polesum(double x, double rho, int max_order);
double airy_minus_polesum(double x, double rho, int max_order);
/// Bound 2 rho / (pi (K pi - |x|)) on the truncation error of either pole sum.
/// Requires K pi > |x|.
double airy_polesum_tail_bound(double x, double rho, int max_order);

/// Symmetric 2x2 pair-emission kernel; gamma22 = gamma11, gamma21 = gamma12.
struct CavityKernel {
  double g11;
  double g12;
};

/// gamma11 = 4 + 4 D+[x] D+[x'], gamma12 = -4 D-[x] D-[x'] at x = omega tau.
CavityKernel gamma_cavity(double omega, double omega_p, const CavityConfig& cavity);
CavityKernel gamma_cavity_dimensionless(double x, double x_p, double rho);

/// Emission density d(N/T)/d(omega) of the cavity, photons/s per (rad/s).
double cavity_emission_density(const CavityConfig& cavity, double omega,
                               const PhysicalConstants& constants);

/// Smallest rho for which the direct quadrature is attempted.
inline constexpr double kQuadratureMinRho = 1e-6;

/// Total flux from direct integration of the pair-emission kernel.
/// Throws UnsupportedRegime for rho < kQuadratureMinRho (use flux_mode_sum or
/// flux_resummed there).
IntegrationResult flux_quadrature(const CavityConfig& cavity,
                                  const PhysicalConstants& constants,
                                  const IntegrationSettings& settings = {});

/// Direct reflection term Omega^3 (a1^2 + a2^2) / (3 pi c^2), photons/s.
double nonresonant_flux(const CavityConfig& cavity, const PhysicalConstants& constants);

/// Emission rate into the mode pair (k, k'), photons/s. A Lorentzian in
/// Omega tau centred at (k + k') pi with half-width 2 rho; vanishes when
/// a1 = (-1)^(k+k') a2. Throws DomainError unless k, k' >= 1.
double mode_peak_flux(const CavityConfig& cavity, int k, int k_p,
                      const PhysicalConstants& constants);

/// Stationary photon number in the mode pair: emission rate divided by the
/// escape rate 4 rho / (2 tau).
double intracavity_photons(const CavityConfig& cavity, int k, int k_p,
                           const PhysicalConstants& constants);

struct ModePeak {
  int k;
  int k_p;
  double flux;         ///< photons/s
  double intracavity;  ///< photons
};

struct FluxBreakdown {
  double total = 0.0;
  double nonresonant = 0.0;
  std::vector<ModePeak> peaks;
  /// Summed contribution of the first shell k + k' left out of the sum.
  double tail_estimate = 0.0;
  int k_max = 0;
  /// Omega tau < pi: below the first resonance.
  bool below_first_resonance = false;
};

/// Smallest cutoff satisfying the truncation policy of flux_mode_sum.
int default_mode_cutoff(const CavityConfig& cavity);

/// High-finesse mode sum. Pairs with 1 <= k, k' <= k_max are kept when
/// k + k' <= ceil(Omega tau / pi) + 2 or when their centre lies within
/// 100 rho of Omega tau. k_max = 0 selects default_mode_cutoff. Throws
/// DomainError when 2 k_max pi < Omega tau + 100 rho.
FluxBreakdown flux_mode_sum(const CavityConfig& cavity,
                            const PhysicalConstants& constants, int k_max = 0);

/// Sum of intracavity_photons over the pairs selected by flux_mode_sum.
double intracavity_total(const CavityConfig& cavity, const PhysicalConstants& constants,
                         int k_max = 0);

struct ResummedFlux {
  double nonresonant = 0.0;
  /// (a1 + a2)^2 term, resonant at odd multiples of pi/tau.
  double translation = 0.0;
  /// (a1 - a2)^2 term, resonant at even multiples of pi/tau.
  double elongation = 0.0;
  double total = 0.0;
  bool below_first_resonance = false;
};

/// Closed-form sum over all mode pairs.
ResummedFlux flux_resummed_terms(const CavityConfig& cavity,
                                 const PhysicalConstants& constants);
double flux_resummed(const CavityConfig& cavity, const PhysicalConstants& constants);

struct PhotonEstimate {
  double outside;  ///< radiated photons during `duration`
  double inside;   ///< stationary intracavity photons
};

/// Resonant order-of-magnitude estimate N ~ (Omega T / 2 pi)(v/c)^2 / rho and
/// N_inside ~ (v/c)^2 / rho^2, both multiplied by the Fresnel number. The
/// caller picks v as the sum (odd resonance) or difference (even resonance)
/// of the mirrors' peak velocities.
PhotonEstimate order_of_magnitude(double v, double omega, double rho, double duration,
                                  const PhysicalConstants& constants,
                                  double fresnel_number = 1.0);

}  // namespace vibcav
