#include "vibcav/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <utility>

#include "vibcav/errors.hpp"

namespace vibcav {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHintGrowth = 4.0;

struct Piece {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool final;  // error already at the rounding floor
};

double sample(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at x = " << x;
    throw DomainError(os.str());
  }
  return y;
}

Piece kronrod15(const std::function<double(double)>& f, double lo, double hi,
                int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = sample(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    // offsets from the nearer endpoint, so the rule spans exactly [lo, hi]
    const double inset = half * (1.0 - kXgk[j]);
    const double f1 = sample(f, lo + inset);
    const double f2 = sample(f, hi - inset);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  const double floor = 50.0 * kEps * abs_sum * std::abs(half);
  return {lo, hi, value, error, depth, error <= floor};
}

bool by_error(const Piece& a, const Piece& b) { return a.error < b.error; }

}  // namespace

std::vector<double> initial_partition(double lo, double hi,
                                      std::span<const PoleHint> hints) {
  std::vector<double> points{lo, hi};
  const double length = hi - lo;
  for (const auto& hint : hints) {
    if (!std::isfinite(hint.center) || !std::isfinite(hint.width) || hint.width <= 0.0) {
      throw DomainError("pole hints need a finite center and a positive width");
    }
    points.push_back(hint.center);
    for (double step = hint.width; step < length; step *= kHintGrowth) {
      points.push_back(hint.center - step);
      points.push_back(hint.center + step);
    }
  }
  std::erase_if(points, [&](double x) { return x < lo || x > hi; });
  std::sort(points.begin(), points.end());
  const double merge = 8.0 * kEps * (std::abs(lo) + std::abs(hi));
  std::vector<double> out;
  for (double x : points) {
    if (out.empty() || x - out.back() > merge) out.push_back(x);
  }
  // keep the exact endpoints
  out.front() = lo;
  if (out.size() == 1) out.push_back(hi);
  out.back() = hi;
  return out;
}

IntegrationResult integrate(const std::function<double(double)>& f, double lo,
                            double hi, const IntegrationSettings& settings) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw DomainError("integration bounds must be finite with lo < hi");
  }
  if (!(settings.rel_tol > 0.0) || !(settings.abs_tol > 0.0) || settings.max_depth < 1) {
    throw DomainError("integration tolerances must be positive and max_depth >= 1");
  }

  const auto breaks = initial_partition(lo, hi, settings.pole_hints);
  std::vector<Piece> active;
  std::vector<Piece> settled;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Piece p = kronrod15(f, breaks[i], breaks[i + 1], 0);
    (p.final ? settled : active).push_back(p);
  }
  std::make_heap(active.begin(), active.end(), by_error);

  auto totals = [&] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : active) { value += p.value; error += p.error; }
    for (const auto& p : settled) { value += p.value; error += p.error; }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  std::size_t since_resum = 0;
  while (true) {
    if (error <= std::max(settings.rel_tol * std::abs(value), settings.abs_tol)) {
      std::tie(value, error) = totals();
      if (error <= std::max(settings.rel_tol * std::abs(value), settings.abs_tol)) break;
    }
    if (active.empty()) break;  // everything sits at the rounding floor

    std::pop_heap(active.begin(), active.end(), by_error);
    const Piece worst = active.back();
    active.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool splittable = mid > worst.lo && mid < worst.hi;
    if (worst.depth >= settings.max_depth || !splittable ||
        active.size() + settled.size() + 1 >= settings.max_subdivisions) {
      active.push_back(worst);
      std::tie(value, error) = totals();
      std::ostringstream os;
      os.precision(3);
      os << "adaptive integration did not converge on [" << lo << ", " << hi
         << "]: error estimate " << error << " exceeds tolerance";
      throw ConvergenceFailure(os.str(), value, error);
    }

    const Piece left = kronrod15(f, worst.lo, mid, worst.depth + 1);
    const Piece right = kronrod15(f, mid, worst.hi, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    for (const Piece& p : {left, right}) {
      if (p.final) {
        settled.push_back(p);
      } else {
        active.push_back(p);
        std::push_heap(active.begin(), active.end(), by_error);
      }
    }
    if (++since_resum == 256) {
      std::tie(value, error) = totals();
      since_resum = 0;
    }
  }

  // Sum in abscissa order so the result does not depend on heap layout.
  std::vector<Piece> all;
  all.reserve(active.size() + settled.size());
  all.insert(all.end(), active.begin(), active.end());
  all.insert(all.end(), settled.begin(), settled.end());
  std::sort(all.begin(), all.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  IntegrationResult result;
  for (const auto& p : all) {
    result.value += p.value;
    result.error_estimate += p.error;
  }
  result.subdivisions = all.size();
  return result;
}

}  // namespace vibcav
