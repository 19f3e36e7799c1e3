#pragma once

#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bures {

/// One endpoint of an integration level, as a function of the outer
/// (already fixed) variables. `singular` marks an integrable blow-up of the
/// integrand at this endpoint.
struct Bound {
  std::function<double(std::span<const double>)> at;
  bool singular = false;

  static Bound constant(double value, bool singular = false) {
    return {[value](std::span<const double>) { return value; }, singular};
  }
};

struct LimitLevel {
  std::string variable;
  Bound lower;
  Bound upper;
  /// Interior points where the integrand is not smooth; may be empty.
  std::function<std::vector<double>(std::span<const double>)> breakpoints;
};

/// A region described by ordered limits, outermost variable first. The
/// integration variables may differ from the family parameters; `to_params`
/// maps them and `jacobian` is |d params / d vars| (constant).
struct NestedRegion {
  std::string name;
  std::vector<LimitLevel> levels;
  std::function<std::vector<double>(std::span<const double>)> to_params;
  double jacobian = 1.0;

  [[nodiscard]] std::size_t arity() const { return levels.size(); }
  [[nodiscard]] std::vector<double> params(std::span<const double> vars) const {
    return to_params ? to_params(vars) : std::vector<double>(vars.begin(), vars.end());
  }
};

enum class RegionKind { Interval, NestedLimits, Simplex, Product };

/// Integration region: a union of disjoint nested pieces plus a membership
/// predicate in family-parameter coordinates.
struct RegionSpec {
  RegionKind kind = RegionKind::Interval;
  std::vector<NestedRegion> pieces;
  std::function<bool(std::span<const double>)> contains;
  std::string description;

  static RegionSpec interval(double a, double b, bool singular_a, bool singular_b, std::string var = "t");
  /// {x_i >= 0, sum x_i <= 1} in n variables, every face singular.
  static RegionSpec simplex(int n, std::vector<std::string> vars);

  /// Both endpoints of a single-interval region.
  [[nodiscard]] std::pair<double, double> endpoints() const;
  [[nodiscard]] bool is_interval() const { return kind == RegionKind::Interval; }
  [[nodiscard]] bool member(std::span<const double> params) const;

  /// Draws a point of the first piece by level-wise uniform sampling with the
  /// fraction `inset` kept away from every bound, rejecting points that fail
  /// `contains`.
  [[nodiscard]] std::vector<double> sample(std::mt19937_64& rng, double inset = 0.05) const;
};

}  // namespace bures
