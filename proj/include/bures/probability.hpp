#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bures/families.hpp"
#include "bures/quadrature.hpp"

namespace bures::probability {

/// One compared quantity. `tol` is absolute; relative tolerances are
/// converted with the reference value as scale.
struct Target {
  std::string name;
  double paper = 0.0;
  double computed = 0.0;
  double tol = 0.0;
  bool pass = false;

  [[nodiscard]] double abs_diff() const { return std::abs(computed - paper); }
  friend bool operator==(const Target&, const Target&) = default;
};

struct ScenarioResult {
  std::string family;
  /// Normalization mass. For improper priors, the mass up to the cutoff.
  double Z = 0.0;
  /// Separable mass (zero when the family has no separable states).
  double S = 0.0;
  /// S / Z; empty for improper priors and families without a bipartition.
  std::optional<double> p_sep;
  /// Propagated quadrature error estimate on p_sep, or on Z when p_sep is empty.
  double err = 0.0;
  bool improper = false;
  bool converged = true;
  /// Additional named quantities (sub-masses, cutoff integrals, alternative methods).
  std::vector<std::pair<std::string, double>> values;
  std::vector<Target> targets;

  [[nodiscard]] bool passed() const;
  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

enum class PriorSource { MetricEngine, ClosedForm };

struct TargetSpec {
  std::string name;
  double paper;
  double tol;
  bool relative = false;
};

struct Scenario {
  std::string id;
  std::string description;
  int k = 0;
  /// "2x2", "3x3", "2x3", "3" (single system) or "-" when no state map is known.
  std::string dims;
  PriorSource source = PriorSource::MetricEngine;
  std::vector<TargetSpec> targets;
};

struct RunOptions {
  quadrature::QuadratureConfig one_dim = quadrature::QuadratureConfig::one_dim();
  quadrature::QuadratureConfig multi_dim = quadrature::QuadratureConfig::multi_dim();
  /// The unitary family, whose targets are only good to about 1e-3.
  quadrature::QuadratureConfig unitary = [] {
    auto c = quadrature::QuadratureConfig::multi_dim();
    c.rel_tol = 1e-4;
    return c;
  }();
  /// Tolerance overrides keyed "scenario.target" or "target".
  std::map<std::string, double> tolerances;
  /// Reference-value overrides, keyed like `tolerances`.
  std::map<std::string, double> references;

  /// Applies one key=value setting. Recognized keys: tol.<target>,
  /// tol.<scenario>.<target>, ref.<target>, ref.<scenario>.<target>, quad.rel_tol_1d, quad.rel_tol_nd,
  /// quad.rel_tol_unitary, quad.max_levels_1d, quad.max_levels_nd,
  /// quad.method (de | gk).
  /// Throws UsageError otherwise.
  void set(const std::string& key, const std::string& value);
  [[nodiscard]] double tolerance_for(const std::string& scenario, const TargetSpec& spec) const;
  [[nodiscard]] double reference_for(const std::string& scenario, const TargetSpec& spec) const;
};

/// Every runnable scenario, ordered by id.
[[nodiscard]] const std::vector<Scenario>& scenarios();
/// Throws UsageError for an unknown id.
[[nodiscard]] const Scenario& find_scenario(const std::string& id);

/// Runs a registered scenario and fills its targets.
[[nodiscard]] ScenarioResult run_scenario(const std::string& id, const RunOptions& opts = {});

/// Z and S of a registered family from its prior source, with no targets.
[[nodiscard]] ScenarioResult run_scenario(const families::DensityFamily& fam, const RunOptions& opts = {});

/// Unnormalized prior of a family at theta, from its prior source. Engine
/// values use the integration eigenvalue cut.
[[nodiscard]] double prior_value(const families::DensityFamily& fam, std::span<const double> theta);

/// Normalized marginal density of parameter `var_index` on `grid`. The
/// parameter must be the outermost integration variable of the feasible
/// region. Throws UsageError otherwise.
[[nodiscard]] std::vector<std::pair<double, double>> marginal(const families::DensityFamily& fam, int var_index,
                                                              const std::vector<double>& grid,
                                                              const RunOptions& opts = {});

/// Prior-weighted mean entanglement of formation over the feasible region.
/// Throws UsageError for families that are not two-qubit or whose prior is
/// improper.
[[nodiscard]] double eof_weighted(const families::DensityFamily& fam, const RunOptions& opts = {});

/// Masses of the unitary family over the simplex times [0, 2 pi]. The
/// separable w-arc around w = 0 comes from PPT bisection (S_ppt) or from the
/// arcsin half-width (S_arcsin).
struct UnitaryFamilyMasses {
  double Z = 0.0;
  double S_ppt = 0.0;
  double S_arcsin = 0.0;
  double err = 0.0;
  bool converged = true;
};
[[nodiscard]] UnitaryFamilyMasses unitary_family_masses(const RunOptions& opts = {});

/// PPT half-width of the w-arc around w = 0 at fixed (x, y, z), capped at pi/4.
[[nodiscard]] double unitary_ppt_halfwidth(double x, double y, double z, double tol = 1e-10);

/// Exactly `points` rows. One-parameter scenarios give (theta, normalized
/// prior) on an equispaced grid including both endpoints, with singular
/// endpoints reported as +inf. Others give (outermost variable, marginal)
/// at cell midpoints.
[[nodiscard]] std::vector<std::pair<double, double>> plot_data(const std::string& id, int points,
                                                               const RunOptions& opts = {});

}  // namespace bures::probability
