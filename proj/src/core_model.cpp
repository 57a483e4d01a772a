#include "vibcav/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "vibcav/errors.hpp"

namespace vibcav {
namespace {

constexpr double kLosslessTolerance = 1e-12;
constexpr double kPerturbativeVelocityRatio = 1e-3;
constexpr double kHighFinesseRhoLimit = 0.1;

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(6);
  os << what << value;
  return os.str();
}

}  // namespace

PhysicalConstants::PhysicalConstants(double c, double hbar, double k_B)
    : c_(c), hbar_(hbar), k_B_(k_B) {
  require(positive_finite(c) && positive_finite(hbar) && positive_finite(k_B),
          "physical constants must be finite and strictly positive");
}

PhysicalConstants PhysicalConstants::codata() {
  return {299792458.0, 1.054571817e-34, 1.380649e-23};
}

PhysicalConstants PhysicalConstants::natural() { return {1.0, 1.0, 1.0}; }

// ---------------------------------------------------------------------------

MirrorModel::MirrorModel(MirrorKind kind, double r, double s,
                         std::vector<MirrorSample> samples)
    : kind_(kind), r_(r), s_(s), samples_(std::move(samples)) {}

MirrorModel MirrorModel::perfect() {
  return MirrorModel(MirrorKind::PerfectReflector, -1.0, 0.0, {});
}

MirrorModel MirrorModel::constant_real(double r) {
  require(std::isfinite(r) && r > 0.0 && r <= 1.0,
          "constant mirror reflection must lie in (0, 1]");
  return MirrorModel(MirrorKind::ConstantReal, r, std::sqrt(1.0 - r * r), {});
}

MirrorModel MirrorModel::tabulated(std::vector<MirrorSample> samples) {
  require(samples.size() >= 2, "tabulated mirror needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    require(std::isfinite(p.omega) && p.omega >= 0.0,
            "tabulated mirror frequencies must be finite and non-negative");
    require(i == 0 || p.omega > samples[i - 1].omega,
            "tabulated mirror frequencies must be strictly increasing");
    const double norm = std::norm(p.r) + std::norm(p.s);
    require(std::abs(norm - 1.0) <= kLosslessTolerance,
            "tabulated mirror sample violates |r|^2 + |s|^2 = 1");
  }
  return MirrorModel(MirrorKind::Tabulated, 0.0, 0.0, std::move(samples));
}

MirrorAmplitudes MirrorModel::amplitudes(double omega) const {
  switch (kind_) {
    case MirrorKind::PerfectReflector:
    case MirrorKind::ConstantReal:
      return {r_, s_};
    case MirrorKind::Tabulated:
      break;
  }
  if (omega <= samples_.front().omega) return {samples_.front().r, samples_.front().s};
  if (omega >= samples_.back().omega) return {samples_.back().r, samples_.back().s};

  auto hi = std::upper_bound(
      samples_.begin(), samples_.end(), omega,
      [](double w, const MirrorSample& p) { return w < p.omega; });
  auto lo = hi - 1;
  const double t = (omega - lo->omega) / (hi->omega - lo->omega);
  std::complex<double> r = lo->r + t * (hi->r - lo->r);
  std::complex<double> s = lo->s + t * (hi->s - lo->s);
  const double norm = std::sqrt(std::norm(r) + std::norm(s));
  return {r / norm, s / norm};
}

bool MirrorModel::has_complex_phases() const noexcept {
  return std::any_of(samples_.begin(), samples_.end(), [](const MirrorSample& p) {
    return p.r.imag() != 0.0 || p.s.imag() != 0.0;
  });
}

// ---------------------------------------------------------------------------

HarmonicDrive::HarmonicDrive(double amplitude, double omega, double duration,
                             const PhysicalConstants& constants)
    : amplitude_(amplitude), omega_(omega), duration_(duration) {
  require(std::isfinite(amplitude) && amplitude >= 0.0,
          "drive amplitude must be finite and non-negative");
  require(positive_finite(omega), "drive frequency must be strictly positive");
  require(positive_finite(duration), "drive duration must be strictly positive");
  const double ratio = peak_velocity() / constants.c();
  if (ratio > kPerturbativeVelocityRatio) {
    warnings_.push_back(describe(
        "peak velocity outside the perturbative regime: v/c = ", ratio));
  }
}

double HarmonicDrive::displacement(double t) const noexcept {
  if (t <= 0.0 || t >= duration_) return 0.0;
  return 2.0 * amplitude_ * std::cos(omega_ * t);
}

// ---------------------------------------------------------------------------

CavityConfig::CavityConfig(double tau, double rho, double a1, double a2,
                           double omega, double duration)
    : tau_(tau), rho_(rho), a1_(a1), a2_(a2), omega_(omega), duration_(duration) {
  require(positive_finite(tau), "flight time tau must be strictly positive");
  require(positive_finite(rho), "loss parameter rho must be strictly positive");
  require(std::isfinite(a1) && std::isfinite(a2), "mirror amplitudes must be finite");
  require(positive_finite(omega), "drive frequency must be strictly positive");
  require(positive_finite(duration), "drive duration must be strictly positive");
  if (rho > kHighFinesseRhoLimit) {
    warnings_.push_back(describe(
        "loss parameter outside the high-finesse regime: rho = ", rho));
  }
}

double CavityConfig::mirror_product() const { return std::exp(-2.0 * rho_); }

CavityConfig CavityConfig::with_omega(double omega) const {
  return {tau_, rho_, a1_, a2_, omega, duration_};
}

CavityConfig CavityConfig::with_amplitudes(double a1, double a2) const {
  return {tau_, rho_, a1, a2, omega_, duration_};
}

CavityConfig CavityConfig::with_rho(double rho) const {
  return {tau_, rho, a1_, a2_, omega_, duration_};
}

DimensionlessCavity nondimensionalize(const CavityConfig& cavity,
                                      const PhysicalConstants& constants) {
  const double length = constants.c() * cavity.tau();
  return {cavity.omega() * cavity.tau(), cavity.rho(), cavity.a1() / length,
          cavity.a2() / length};
}

CavityConfig redimensionalize(const DimensionlessCavity& cavity, double tau,
                              double duration, const PhysicalConstants& constants) {
  const double length = constants.c() * tau;
  return {tau,
          cavity.rho,
          cavity.alpha1 * length,
          cavity.alpha2 * length,
          cavity.x_drive / tau,
          duration};
}

// ---------------------------------------------------------------------------

ThermalContext::ThermalContext(double theta) : theta_(theta) {
  require(std::isfinite(theta) && theta >= 0.0, "temperature must be non-negative");
}

double thermal_occupation(const ThermalContext& ctx, double omega,
                          const PhysicalConstants& constants) {
  require(positive_finite(omega), "thermal occupation needs omega > 0");
  if (ctx.theta() == 0.0) return 0.0;
  const double x = constants.hbar() * omega / (constants.k_B() * ctx.theta());
  return 1.0 / std::expm1(x);
}

bool vacuum_ok(const ThermalContext& ctx, double omega,
               const PhysicalConstants& constants) {
  return thermal_occupation(ctx, omega, constants) < 1.0;
}

}  // namespace vibcav
