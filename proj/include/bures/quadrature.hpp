#pragma once

#include <functional>
#include <span>

#include "bures/region.hpp"

namespace bures::quadrature {

enum class Method {
  /// tanh-sinh rule with level doubling.
  DoubleExponential,
  /// Globally adaptive 7/15-point Gauss-Kronrod subdivision.
  AdaptiveSubdivision,
};

struct QuadratureConfig {
  Method method = Method::DoubleExponential;
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  /// Level doublings for DoubleExponential; log2 of the interval budget for
  /// AdaptiveSubdivision.
  int max_levels = 9;
  /// Fraction of the interval trimmed at each end before integrating.
  double endpoint_inset = 0.0;
  /// Remove inverse-square-root endpoint singularities by an algebraic
  /// substitution at endpoints flagged singular.
  bool substitute_singular_endpoints = true;

  /// Throws UsageError unless rel_tol > 0 and max_levels >= 3.
  void validate() const;
  static QuadratureConfig one_dim() { return {}; }
  static QuadratureConfig multi_dim() {
    QuadratureConfig c;
    c.rel_tol = 1e-6;
    c.max_levels = 7;
    return c;
  }
};

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evaluations = 0;
  /// Nodes dropped because the integrand was not finite or not defined
  /// there; only allowed within a vanishing distance of an endpoint.
  long skipped = 0;
  bool converged = true;
};

using Integrand1D = std::function<double(double)>;
using IntegrandND = std::function<double(std::span<const double>)>;

/// Integral of f over [a, b]. Non-convergence is reported through
/// `converged`, never thrown.
[[nodiscard]] IntegralResult integrate_1d(const Integrand1D& f, double a, double b, const QuadratureConfig& cfg,
                                          bool singular_a = false, bool singular_b = false);

/// Iterated integration innermost-first over the ordered limits; f receives
/// the integration variables (outermost first), not the mapped parameters.
[[nodiscard]] IntegralResult integrate_nested(const IntegrandND& f, const NestedRegion& region,
                                              const QuadratureConfig& cfg);

/// Sum over the pieces of a region of the integral of f(params) * jacobian.
[[nodiscard]] IntegralResult integrate_region(const IntegrandND& f_of_params, const RegionSpec& region,
                                              const QuadratureConfig& cfg);
[[nodiscard]] IntegralResult integrate_piece(const IntegrandND& f_of_params, const NestedRegion& piece,
                                             const QuadratureConfig& cfg);

/// Root of g in [a, b] by bisection, bracketed to width tol. Requires a sign
/// change; an exact zero at an endpoint is returned as is.
[[nodiscard]] double find_root_bisect(const std::function<double(double)>& g, double a, double b, double tol = 1e-12);

}  // namespace bures::quadrature
