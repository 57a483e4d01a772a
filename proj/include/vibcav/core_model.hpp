#pragma once

// Domain types shared by the single-mirror and cavity calculators.
//
// The public API works in SI units. Cavity formulas only depend on the
// dimensionless drive phase x = Omega*tau, the loss parameter rho and the
// scaled amplitudes a_i/(c*tau); `nondimensionalize` produces that set.

#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace vibcav {

inline constexpr double kPi = std::numbers::pi;

class PhysicalConstants {
 public:
  /// Throws DomainError unless every constant is finite and strictly positive.
  PhysicalConstants(double c, double hbar, double k_B);

  /// CODATA 2018 exact/recommended SI values.
  static PhysicalConstants codata();
  /// c = hbar = k_B = 1, for dimensionless work.
  static PhysicalConstants natural();

  double c() const noexcept { return c_; }
  double hbar() const noexcept { return hbar_; }
  double k_B() const noexcept { return k_B_; }

 private:
  double c_;
  double hbar_;
  double k_B_;
};

enum class MirrorKind { PerfectReflector, ConstantReal, Tabulated };

struct MirrorAmplitudes {
  std::complex<double> r;
  std::complex<double> s;
};

struct MirrorSample {
  double omega;
  std::complex<double> r;
  std::complex<double> s;
};

/// Reflection and transmission amplitudes of one lossless mirror.
///
/// Every variant satisfies |r|^2 + |s|^2 = 1. Tabulated mirrors interpolate
/// linearly between samples and renormalize the result; outside the sampled
/// band the end samples are held constant.
class MirrorModel {
 public:
  static MirrorModel perfect();
  /// r in (0, 1]; the transmission is s = +sqrt(1 - r^2).
  static MirrorModel constant_real(double r);
  /// Samples must be sorted by strictly increasing frequency and each one
  /// lossless to 1e-12.
  static MirrorModel tabulated(std::vector<MirrorSample> samples);

  MirrorKind kind() const noexcept { return kind_; }
  MirrorAmplitudes amplitudes(double omega) const;
  std::complex<double> reflection(double omega) const { return amplitudes(omega).r; }
  std::complex<double> transmission(double omega) const { return amplitudes(omega).s; }

  /// True when some amplitude carries a non-zero imaginary part. The
  /// first-order emission kernel is only validated for real amplitudes.
  bool has_complex_phases() const noexcept;
  std::span<const MirrorSample> samples() const noexcept { return samples_; }

 private:
  MirrorModel(MirrorKind kind, double r, double s, std::vector<MirrorSample> samples);

  MirrorKind kind_;
  double r_;
  double s_;
  std::vector<MirrorSample> samples_;
};

/// Harmonic mirror trajectory dq(t) = 2a cos(Omega t) for 0 < t < T.
class HarmonicDrive {
 public:
  /// `constants` is only used for the perturbative-regime check (v/c > 1e-3
  /// records a warning, it does not throw).
  HarmonicDrive(double amplitude, double omega, double duration,
                const PhysicalConstants& constants = PhysicalConstants::codata());

  double amplitude() const noexcept { return amplitude_; }
  double omega() const noexcept { return omega_; }
  double duration() const noexcept { return duration_; }
  double peak_velocity() const noexcept { return 2.0 * omega_ * amplitude_; }
  double displacement(double t) const noexcept;

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  double amplitude_;
  double omega_;
  double duration_;
  std::vector<std::string> warnings_;
};

/// Two-mirror cavity driven at a common frequency.
///
/// Mirror amplitudes a1, a2 are signed: equal signs mean in-phase motion.
/// Only the product r1*r2 = exp(-2 rho) enters the cavity formulas. The
/// finesse is reported as 1/rho, not the conventional pi/(2 rho).
class CavityConfig {
 public:
  /// Records a warning when rho > 0.1, where the high-finesse formulas degrade.
  CavityConfig(double tau, double rho, double a1, double a2, double omega,
               double duration);

  double tau() const noexcept { return tau_; }
  double rho() const noexcept { return rho_; }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double omega() const noexcept { return omega_; }
  double duration() const noexcept { return duration_; }

  double mirror_product() const;
  double finesse() const noexcept { return 1.0 / rho_; }
  /// pi / tau
  double fundamental_frequency() const noexcept { return kPi / tau_; }
  double resonance_order() const noexcept { return resonance_order(omega_); }
  double resonance_order(double omega) const noexcept { return omega * tau_ / kPi; }

  CavityConfig with_omega(double omega) const;
  CavityConfig with_amplitudes(double a1, double a2) const;
  CavityConfig with_rho(double rho) const;

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  double tau_;
  double rho_;
  double a1_;
  double a2_;
  double omega_;
  double duration_;
  std::vector<std::string> warnings_;
};

struct DimensionlessCavity {
  double x_drive;  ///< Omega * tau
  double rho;
  double alpha1;   ///< a1 / (c tau)
  double alpha2;   ///< a2 / (c tau)
};

DimensionlessCavity nondimensionalize(const CavityConfig& cavity,
                                      const PhysicalConstants& constants);
CavityConfig redimensionalize(const DimensionlessCavity& cavity, double tau,
                              double duration, const PhysicalConstants& constants);

class ThermalContext {
 public:
  explicit ThermalContext(double theta);
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// Bose-Einstein mean occupation 1/(exp(hbar omega / k_B theta) - 1).
double thermal_occupation(const ThermalContext& ctx, double omega,
                          const PhysicalConstants& constants);
/// The vacuum input assumption holds when the occupation is below one.
bool vacuum_ok(const ThermalContext& ctx, double omega,
               const PhysicalConstants& constants);

}  // namespace vibcav
