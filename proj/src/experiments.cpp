#include "vibcav/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vibcav/errors.hpp"
#include "vibcav/single_mirror.hpp"

namespace vibcav {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kLowFinesseRho = 0.1;
constexpr double kPerturbativeVelocityRatio = 1e-3;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n < 2) return {lo, hi};
  out.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

// Samples c + j * step for |j * step| <= half_width, kept inside [lo, hi].
void add_window(std::vector<double>& grid, double c, double half_width, double step,
                double lo, double hi) {
  const auto n = static_cast<long>(std::floor(half_width / step + 1e-9));
  for (long j = -n; j <= n; ++j) {
    const double x = c + static_cast<double>(j) * step;
    if (x >= lo && x <= hi) grid.push_back(x);
  }
}

void sort_unique(std::vector<double>& grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
}

double interpolate_crossing(double x0, double y0, double x1, double y1, double level) {
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

SpectralPeak refine_vertex(std::span<const double> x, std::span<const double> y,
                           std::size_t i) {
  const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
  const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);  // leading coefficient
  if (!(curvature < 0.0)) return {x1, y1, 0.0};
  // y = y1 + d01 (t - x1) + curvature (t - x0)(t - x1)
  const double slope_at_x1 = d01 + curvature * (x1 - x0);
  const double xv = x1 - slope_at_x1 / (2.0 * curvature);
  if (xv < x0 || xv > x2) return {x1, y1, 0.0};
  const double yv = y1 + d01 * (xv - x1) + curvature * (xv - x0) * (xv - x1);
  return {xv, std::max(yv, y1), 0.0};
}

std::uint32_t cavity_flags(const CavityConfig& cavity, const PhysicalConstants& constants) {
  std::uint32_t flags = 0;
  if (cavity.omega() * cavity.tau() < kPi) flags |= regime::kBelowFirstResonance;
  if (cavity.rho() > kLowFinesseRho) flags |= regime::kLowFinesse;
  const double v = 2.0 * cavity.omega() * std::max(std::abs(cavity.a1()), std::abs(cavity.a2()));
  if (v / constants.c() > kPerturbativeVelocityRatio) flags |= regime::kNonPerturbative;
  return flags;
}

ScanRow evaluate_row(const CavityConfig& cavity, const ScanPolicy& policy,
                     const PhysicalConstants& constants) {
  ScanRow row{cavity.omega(), kNaN, kNaN, 0, 0, cavity_flags(cavity, constants), {}};
  try {
    const auto modes = flux_mode_sum(cavity, constants, policy.k_max);
    double best = 0.0;
    for (const auto& p : modes.peaks) {
      if (p.flux > best) {
        best = p.flux;
        row.dominant_k = p.k;
        row.dominant_kp = p.k_p;
      }
    }
    switch (policy.backend) {
      case FluxBackend::Resummed: {
        const auto r = flux_resummed_terms(cavity, constants);
        row.flux_total = r.total;
        row.flux_nonresonant = r.nonresonant;
        break;
      }
      case FluxBackend::ModeSum:
        row.flux_total = modes.total;
        row.flux_nonresonant = modes.nonresonant;
        break;
      case FluxBackend::Quadrature:
        row.flux_total = flux_quadrature(cavity, constants, policy.settings).value;
        row.flux_nonresonant = nonresonant_flux(cavity, constants);
        break;
    }
  } catch (const Error& e) {
    row.flux_total = kNaN;
    row.flux_nonresonant = kNaN;
    row.flags |= regime::kComputeError;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SpectralPeak> find_peaks(std::span<const double> x, std::span<const double> y,
                                     std::size_t min_samples_per_fwhm) {
  if (x.size() != y.size()) throw DomainError("peak finder needs matching x and y");
  std::vector<SpectralPeak> peaks;
  const std::size_t n = x.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] > 0.0)) continue;
    const double half = 0.5 * y[i];

    bool isolated = true;
    std::size_t left = i;
    while (left > 0 && y[left - 1] >= half) {
      if (y[left - 1] > y[i]) { isolated = false; break; }
      --left;
    }
    std::size_t right = i;
    while (isolated && right + 1 < n && y[right + 1] >= half) {
      if (y[right + 1] > y[i]) { isolated = false; break; }
      ++right;
    }
    if (!isolated || left == 0 || right + 1 == n) continue;

    const double x_left = interpolate_crossing(x[left - 1], y[left - 1], x[left], y[left], half);
    const double x_right =
        interpolate_crossing(x[right], y[right], x[right + 1], y[right + 1], half);
    const std::size_t inside = right - left + 1;
    if (inside < min_samples_per_fwhm) {
      throw PeakUnresolved("grid resolves only " + std::to_string(inside) +
                           " samples across a peak FWHM");
    }
    SpectralPeak peak = refine_vertex(x, y, i);
    peak.fwhm = x_right - x_left;
    peaks.push_back(peak);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) { return a.center < b.center; });
  return peaks;
}

ScanResult scan_drive_frequency(const CavityConfig& cavity_template, double omega_lo,
                                double omega_hi, const ScanPolicy& policy,
                                const PhysicalConstants& constants) {
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo) || !std::isfinite(omega_hi)) {
    throw DomainError("scan range needs 0 < omega_lo < omega_hi");
  }
  if (policy.samples_per_fwhm < 1 || !(policy.window_fwhm > 0.0)) {
    throw DomainError("scan refinement needs samples_per_fwhm >= 1 and a positive window");
  }
  const double tau = cavity_template.tau();
  const double x_lo = omega_lo * tau;
  const double x_hi = omega_hi * tau;
  auto grid = linspace(x_lo, x_hi, policy.base_points);

  const double fwhm = 4.0 * cavity_template.rho();
  const double half_width = policy.window_fwhm * fwhm;
  const double step = fwhm / (policy.samples_per_fwhm + 1);
  const int n_first = std::max(2, static_cast<int>(std::ceil((x_lo - half_width) / kPi)));
  const int n_last = static_cast<int>(std::floor((x_hi + half_width) / kPi));
  for (int n = n_first; n <= n_last; ++n) {
    add_window(grid, n * kPi, half_width, step, x_lo, x_hi);
  }
  sort_unique(grid);

  ScanResult result;
  result.rows.reserve(grid.size());
  for (double x : grid) {
    result.rows.push_back(evaluate_row(cavity_template.with_omega(x / tau), policy, constants));
  }
  return result;
}

std::vector<SpectralPeak> find_scan_peaks(const ScanResult& scan) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : scan.rows) {
    if (row.error) continue;
    xs.push_back(row.x);
    ys.push_back(row.flux_total);
  }
  return find_peaks(xs, ys);
}

SpectrumTable sample_emission_spectrum(const CavityConfig& cavity,
                                       const SpectrumGridPolicy& policy,
                                       const PhysicalConstants& constants) {
  if (cavity.rho() < kQuadratureMinRho) {
    throw UnsupportedRegime("spectrum sampling needs rho >= 1e-6");
  }
  if (policy.samples_per_fwhm < 1 || !(policy.window_fwhm > 0.0)) {
    throw DomainError("spectrum refinement needs samples_per_fwhm >= 1 and a positive window");
  }
  const double x_drive = cavity.omega() * cavity.tau();
  auto grid = linspace(0.0, x_drive, policy.base_points);
  const double fwhm = 2.0 * cavity.rho();
  const double half_width = policy.window_fwhm * fwhm;
  const double step = fwhm / (policy.samples_per_fwhm + 1);
  for (int k = 1; k * kPi < x_drive + half_width; ++k) {
    add_window(grid, k * kPi, half_width, step, 0.0, x_drive);
    add_window(grid, x_drive - k * kPi, half_width, step, 0.0, x_drive);
  }
  sort_unique(grid);

  SpectrumTable table;
  table.omega_grid.reserve(grid.size());
  table.density.reserve(grid.size());
  for (double x : grid) {
    const double omega = x / cavity.tau();
    table.omega_grid.push_back(omega);
    table.density.push_back(cavity_emission_density(cavity, omega, constants));
  }
  table.peaks = find_peaks(table.omega_grid, table.density);
  return table;
}

SpectrumTable sample_single_spectrum(const MirrorModel& mirror, const HarmonicDrive& drive,
                                     const PhysicalConstants& constants, std::size_t points) {
  if (points < 3) throw DomainError("single-mirror spectrum needs at least 3 points");
  SpectrumTable table;
  table.omega_grid = linspace(0.0, drive.omega(), points);
  table.density.reserve(points);
  for (double w : table.omega_grid) {
    table.density.push_back(emission_spectrum_density(mirror, drive, w, constants));
  }
  table.peaks = find_peaks(table.omega_grid, table.density);
  return table;
}

}  // namespace vibcav
