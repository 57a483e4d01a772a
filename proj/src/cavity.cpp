#include "vibcav/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "vibcav/errors.hpp"

namespace vibcav {
namespace {

constexpr double kModeWindowInWidths = 100.0;

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("loss parameter rho must be strictly positive");
  }
}

// cosh(2 rho) - cos(2x), written without cancellation.
double airy_denominator(double x, double rho) {
  const double sr = std::sinh(rho);
  const double sx = std::sin(x);
  return 2.0 * (sr * sr + sx * sx);
}

double lorentzian(double x, double rho, int k) {
  const double d = x - k * kPi;
  return rho / (rho * rho + d * d);
}

double polesum(double x, double rho, int max_order, bool alternating) {
  check_rho(rho);
  if (max_order < 1) throw DomainError("pole sum needs max_order >= 1");
  // smallest terms first
  double sum = 0.0;
  for (int k = max_order; k >= 1; --k) {
    const double pair = lorentzian(x, rho, k) + lorentzian(x, rho, -k);
    sum += (alternating && k % 2 != 0) ? -pair : pair;
  }
  return sum + lorentzian(x, rho, 0);
}

int parity_sign(int k, int k_p) { return (k + k_p) % 2 == 0 ? 1 : -1; }

// (k pi)(k' pi) A^2 / (4 rho^2 + (Omega tau - (k + k') pi)^2), with
// A = (a1 - (-1)^(k+k') a2) / (c tau). Shared by the flux and intracavity
// formulas so the balance identity only sees the final scalings.
double pair_weight(const CavityConfig& cavity, int k, int k_p,
                   const PhysicalConstants& constants) {
  if (k < 1 || k_p < 1) throw DomainError("mode indices must be >= 1");
  const double x = cavity.omega() * cavity.tau();
  const double rho = cavity.rho();
  const double amp = (cavity.a1() - parity_sign(k, k_p) * cavity.a2()) /
                     (constants.c() * cavity.tau());
  const double detuning = x - (k + k_p) * kPi;
  return (k * kPi) * (k_p * kPi) * amp * amp /
         (4.0 * rho * rho + detuning * detuning);
}

double flux_from_weight(double weight, const CavityConfig& cavity) {
  return weight * (4.0 * cavity.rho()) / cavity.tau();
}

struct ModeSelection {
  int n_cut;
  double x;
  double window;
  bool keeps(int n) const {
    return n <= n_cut || std::abs(x - n * kPi) <= window;
  }
};

ModeSelection selection(const CavityConfig& cavity) {
  const double x = cavity.omega() * cavity.tau();
  return {static_cast<int>(std::ceil(x / kPi)) + 2, x,
          kModeWindowInWidths * cavity.rho()};
}

int resolve_cutoff(const CavityConfig& cavity, int k_max) {
  if (k_max == 0) return default_mode_cutoff(cavity);
  const auto sel = selection(cavity);
  if (k_max < 1 || 2.0 * k_max * kPi < sel.x + sel.window) {
    throw DomainError("k_max too small: mode pairs must reach Omega tau + 100 rho");
  }
  return k_max;
}

// Emission density per unit omega as a function of x = omega tau.
double density_in_x(const DimensionlessCavity& d, double x) {
  const double x_p = d.x_drive - x;
  if (!(x > 0.0) || !(x_p > 0.0)) return 0.0;
  const auto g = gamma_cavity_dimensionless(x, x_p, d.rho);
  const double form = (d.alpha1 * d.alpha1 + d.alpha2 * d.alpha2) * g.g11 +
                      2.0 * d.alpha1 * d.alpha2 * g.g12;
  return x * x_p * form / (2.0 * kPi);
}

}  // namespace

double airy_plus(double x, double rho) {
  check_rho(rho);
  return std::sinh(2.0 * rho) / airy_denominator(x, rho);
}

double airy_minus(double x, double rho) {
  check_rho(rho);
  return 2.0 * std::sinh(rho) * std::cos(x) / airy_denominator(x, rho);
}

double airy_plus_polesum(double x, double rho, int max_order) {
  return polesum(x, rho, max_order, false);
}

double airy_minus_polesum(double x, double rho, int max_order) {
  return polesum(x, rho, max_order, true);
}

double airy_polesum_tail_bound(double x, double rho, int max_order) {
  const double gap = max_order * kPi - std::abs(x);
  if (!(gap > 0.0)) throw DomainError("tail bound needs K pi > |x|");
  return 2.0 * rho / (kPi * gap);
}

CavityKernel gamma_cavity_dimensionless(double x, double x_p, double rho) {
  if (!(x > 0.0) || !(x_p > 0.0)) {
    throw DomainError("cavity kernel needs strictly positive frequencies");
  }
  return {4.0 + 4.0 * airy_plus(x, rho) * airy_plus(x_p, rho),
          -4.0 * airy_minus(x, rho) * airy_minus(x_p, rho)};
}

CavityKernel gamma_cavity(double omega, double omega_p, const CavityConfig& cavity) {
  return gamma_cavity_dimensionless(omega * cavity.tau(), omega_p * cavity.tau(),
                                    cavity.rho());
}

double cavity_emission_density(const CavityConfig& cavity, double omega,
                               const PhysicalConstants& constants) {
  if (!(omega > 0.0) || !(omega < cavity.omega())) return 0.0;
  return density_in_x(nondimensionalize(cavity, constants), omega * cavity.tau());
}

IntegrationResult flux_quadrature(const CavityConfig& cavity,
                                  const PhysicalConstants& constants,
                                  const IntegrationSettings& settings) {
  if (cavity.rho() < kQuadratureMinRho) {
    throw UnsupportedRegime(
        "rho below 1e-6 is outside the quadrature validation range; use "
        "flux_mode_sum or flux_resummed");
  }
  const double x_drive = cavity.omega() * cavity.tau();
  IntegrationSettings local = settings;
  const int top = static_cast<int>(std::floor(x_drive / kPi)) + 1;
  for (int k = 0; k <= top; ++k) {
    local.pole_hints.push_back({k * kPi, cavity.rho()});
    local.pole_hints.push_back({x_drive - k * kPi, cavity.rho()});
  }
  // dN/T = density d(omega) = density d(x) / tau
  const auto d = nondimensionalize(cavity, constants);
  auto integrand = [&](double x) { return density_in_x(d, x) / cavity.tau(); };
  return integrate(integrand, 0.0, x_drive, local);
}

double nonresonant_flux(const CavityConfig& cavity, const PhysicalConstants& constants) {
  const auto d = nondimensionalize(cavity, constants);
  const double x3 = d.x_drive * d.x_drive * d.x_drive;
  return x3 * (d.alpha1 * d.alpha1 + d.alpha2 * d.alpha2) / (3.0 * kPi) / cavity.tau();
}

double mode_peak_flux(const CavityConfig& cavity, int k, int k_p,
                      const PhysicalConstants& constants) {
  return flux_from_weight(pair_weight(cavity, k, k_p, constants), cavity);
}

double intracavity_photons(const CavityConfig& cavity, int k, int k_p,
                           const PhysicalConstants& constants) {
  return 2.0 * pair_weight(cavity, k, k_p, constants);
}

int default_mode_cutoff(const CavityConfig& cavity) {
  const auto sel = selection(cavity);
  const int n_hi = std::max(sel.n_cut, static_cast<int>(std::floor((sel.x + sel.window) / kPi)));
  const int reach = static_cast<int>(std::ceil((sel.x + sel.window) / (2.0 * kPi)));
  return std::max({1, n_hi - 1, reach});
}

FluxBreakdown flux_mode_sum(const CavityConfig& cavity,
                            const PhysicalConstants& constants, int k_max) {
  FluxBreakdown out;
  out.k_max = resolve_cutoff(cavity, k_max);
  out.nonresonant = nonresonant_flux(cavity, constants);
  out.below_first_resonance = cavity.omega() * cavity.tau() < kPi;

  const auto sel = selection(cavity);
  int n_top = 0;
  double peaks_sum = 0.0;
  for (int k = 1; k <= out.k_max; ++k) {
    for (int k_p = 1; k_p <= out.k_max; ++k_p) {
      if (!sel.keeps(k + k_p)) continue;
      const double weight = pair_weight(cavity, k, k_p, constants);
      out.peaks.push_back({k, k_p, flux_from_weight(weight, cavity), 2.0 * weight});
      peaks_sum += out.peaks.back().flux;
      n_top = std::max(n_top, k + k_p);
    }
  }
  out.total = out.nonresonant + peaks_sum;

  const int shell = n_top + 1;
  for (int k = 1; k < shell; ++k) {
    out.tail_estimate += mode_peak_flux(cavity, k, shell - k, constants);
  }
  return out;
}

double intracavity_total(const CavityConfig& cavity, const PhysicalConstants& constants,
                         int k_max) {
  const auto breakdown = flux_mode_sum(cavity, constants, k_max);
  double total = 0.0;
  for (const auto& p : breakdown.peaks) total += p.intracavity;
  return total;
}

ResummedFlux flux_resummed_terms(const CavityConfig& cavity,
                                 const PhysicalConstants& constants) {
  const auto d = nondimensionalize(cavity, constants);
  const double x = d.x_drive;
  const double sr = std::sinh(d.rho);
  const double ch = std::cos(0.5 * x);
  const double sh = std::sin(0.5 * x);
  // cosh(2 rho) +- cos(x) = 2 sinh^2(rho) + 2 cos^2(x/2) or 2 sin^2(x/2)
  const double den_plus = 2.0 * (sr * sr + ch * ch);
  const double den_minus = 2.0 * (sr * sr + sh * sh);
  const double prefactor =
      x / (6.0 * kPi) * (x * x - kPi * kPi) * std::sinh(2.0 * d.rho) / cavity.tau();
  const double sum = d.alpha1 + d.alpha2;
  const double diff = d.alpha1 - d.alpha2;

  ResummedFlux out;
  out.nonresonant = nonresonant_flux(cavity, constants);
  out.translation = prefactor * sum * sum / den_plus;
  out.elongation = prefactor * diff * diff / den_minus;
  out.total = out.nonresonant + out.translation + out.elongation;
  out.below_first_resonance = x < kPi;
  return out;
}

double flux_resummed(const CavityConfig& cavity, const PhysicalConstants& constants) {
  return flux_resummed_terms(cavity, constants).total;
}

PhotonEstimate order_of_magnitude(double v, double omega, double rho, double duration,
                                  const PhysicalConstants& constants,
                                  double fresnel_number) {
  check_rho(rho);
  if (!(v >= 0.0) || !(omega > 0.0) || !(duration > 0.0) || !(fresnel_number > 0.0)) {
    throw DomainError("estimate needs v >= 0 and positive omega, duration, Fresnel number");
  }
  const double beta2 = (v / constants.c()) * (v / constants.c());
  return {fresnel_number * omega * duration / (2.0 * kPi) * beta2 / rho,
          fresnel_number * beta2 / (rho * rho)};
}

}  // namespace vibcav
