#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vibcav {

/// A near-singular feature of the integrand: a peak at `center` with
/// characteristic half-width `width`.
struct PoleHint {
  double center;
  double width;
};

struct IntegrationSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  /// Maximum number of bisections applied to any piece of the initial partition.
  int max_depth = 60;
  /// Hard cap on the number of live subintervals.
  std::size_t max_subdivisions = 200000;
  std::vector<PoleHint> pole_hints;
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< absolute
  std::size_t subdivisions = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over [lo, hi].
///
/// The interval is first cut at every pole hint, with breakpoints at
/// center +- width * 4^m, so each hinted peak owns subintervals no wider
/// than its width. The subinterval with the largest |K15 - G7| is then
/// bisected until the summed estimate meets max(rel_tol*|value|, abs_tol).
///
/// Throws ConvergenceFailure (carrying the partial result) when the worst
/// subinterval reaches max_depth or the subdivision cap, DomainError for
/// lo >= hi, invalid settings or non-finite integrand samples.
IntegrationResult integrate(const std::function<double(double)>& f, double lo,
                            double hi, const IntegrationSettings& settings = {});

/// Breakpoints (including lo and hi) of the hint-refined starting partition.
std::vector<double> initial_partition(double lo, double hi,
                                      std::span<const PoleHint> hints);

}  // namespace vibcav
