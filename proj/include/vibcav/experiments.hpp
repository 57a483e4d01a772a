#pragma once

// Drive-frequency scans, sampled emission spectra and peak characterization.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vibcav/cavity.hpp"
#include "vibcav/core_model.hpp"
#include "vibcav/quadrature.hpp"

namespace vibcav {

struct SpectralPeak {
  double center;
  double height;
  double fwhm;
};

/// Local maxima that fall below half their height on both sides before any
/// higher sample is met. Centre is refined by a three-point parabola and the
/// half-height crossings are linearly interpolated. Throws PeakUnresolved if
/// fewer than `min_samples_per_fwhm` samples lie inside a peak's FWHM.
std::vector<SpectralPeak> find_peaks(std::span<const double> x, std::span<const double> y,
                                     std::size_t min_samples_per_fwhm = 3);

enum class FluxBackend { Resummed, ModeSum, Quadrature };

namespace regime {
inline constexpr std::uint32_t kBelowFirstResonance = 1u << 0;  ///< Omega tau < pi
inline constexpr std::uint32_t kLowFinesse = 1u << 1;           ///< rho > 0.1
inline constexpr std::uint32_t kNonPerturbative = 1u << 2;      ///< v/c > 1e-3
inline constexpr std::uint32_t kComputeError = 1u << 3;
}  // namespace regime

struct ScanRow {
  double x;  ///< swept value, the drive frequency in rad/s
  double flux_total;
  double flux_nonresonant;
  int dominant_k;  ///< 0 when no mode pair carries flux
  int dominant_kp;
  std::uint32_t flags;
  std::optional<std::string> error;  ///< fluxes are NaN when set
};

struct ScanResult {
  std::string axis_name = "omega";
  std::string axis_unit = "rad/s";
  std::vector<ScanRow> rows;  ///< sorted by x
};

struct ScanPolicy {
  std::size_t base_points = 401;
  /// Samples across the FWHM (4 rho in Omega tau) of every resonance.
  int samples_per_fwhm = 20;
  /// Half-width of each refined window, in FWHM units.
  double window_fwhm = 4.0;
  FluxBackend backend = FluxBackend::Resummed;
  int k_max = 0;
  IntegrationSettings settings;
};

/// Sweeps the drive frequency of `cavity_template` over [omega_lo, omega_hi].
/// The grid is uniform plus a refined window around every resonance
/// n pi / tau (n >= 2) in range. Failures are recorded per row.
ScanResult scan_drive_frequency(const CavityConfig& cavity_template, double omega_lo,
                                double omega_hi, const ScanPolicy& policy,
                                const PhysicalConstants& constants);

/// Peaks of flux_total over the scan axis (rows with errors skipped).
std::vector<SpectralPeak> find_scan_peaks(const ScanResult& scan);

struct SpectrumTable {
  std::vector<double> omega_grid;  ///< rad/s, increasing
  std::vector<double> density;     ///< photons/s per (rad/s)
  std::vector<SpectralPeak> peaks; ///< sorted by center
};

struct SpectrumGridPolicy {
  std::size_t base_points = 2001;
  /// Samples across each mode's FWHM (2 rho in omega tau).
  int samples_per_fwhm = 20;
  double window_fwhm = 4.0;
};

/// Samples the cavity emission density over [0, Omega] with refinement
/// around each mode k pi / tau and each partner Omega - k pi / tau.
/// Throws UnsupportedRegime for rho < 1e-6.
SpectrumTable sample_emission_spectrum(const CavityConfig& cavity,
                                       const SpectrumGridPolicy& policy,
                                       const PhysicalConstants& constants);

/// Uniformly sampled single-mirror emission density over [0, Omega].
SpectrumTable sample_single_spectrum(const MirrorModel& mirror, const HarmonicDrive& drive,
                                     const PhysicalConstants& constants,
                                     std::size_t points = 1001);

}  // namespace vibcav
