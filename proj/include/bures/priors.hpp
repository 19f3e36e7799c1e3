#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bures/region.hpp"

namespace bures::priors {

enum class PriorKind { Normalized, Unnormalized, Improper };

/// A printed prior or marginal density with its domain.
struct ClosedFormPrior {
  std::string id;
  std::string formula;
  std::vector<std::string> vars;
  std::function<double(std::span<const double>)> density;
  RegionSpec domain;
  /// Integral over the domain when one is known.
  std::optional<double> normalization;
  PriorKind kind = PriorKind::Unnormalized;

  [[nodiscard]] int arity() const { return static_cast<int>(vars.size()); }
  /// Evaluates at a domain point. Throws DomainError outside the domain or
  /// where a radicand turns negative.
  [[nodiscard]] double eval(std::span<const double> theta) const;
  [[nodiscard]] double eval(std::initializer_list<double> theta) const {
    return eval(std::span<const double>(theta.begin(), theta.size()));
  }
};

/// Immutable catalog, ordered by id.
[[nodiscard]] const std::vector<ClosedFormPrior>& catalog();
/// Throws UsageError for an unknown id.
[[nodiscard]] const ClosedFormPrior& find(const std::string& id);

/// Tsallis q = 1 density exactly as printed:
///   1 / (pi sqrt(8 - s) sqrt(s - 8 b^4)).
[[nodiscard]] double tsallis_q1_prior(double b, double s2);
/// Tsallis q = 1 density with the radicand read as s^2 - 8 b^2, the reading
/// under which the density integrates to one:
///   1 / (pi sqrt(8 - s) sqrt(s^2 - 8 b^2)).
[[nodiscard]] double tsallis_q1_prior_normalized(double b, double s2);
/// Tsallis q = 1/2 density 32 / (pi (32 + 4b^2 + (s - 8)s)^{3/2}).
[[nodiscard]] double tsallis_qhalf_prior(double b, double s2);

/// Domain 0 <= b <= 2 sqrt 2, 2 sqrt 2 b <= s <= 8 in (b, s).
[[nodiscard]] RegionSpec tsallis_domain();
[[nodiscard]] RegionSpec tsallis_q1_separable();
[[nodiscard]] RegionSpec tsallis_qhalf_separable();

/// Factor 1 / (4(x^2 + y^2 + z^2 - (v-2)^2)) separating the two conditional
/// qutrit priors.
[[nodiscard]] double complementary_factor(double v, double x, double y, double z);

/// Half-width sqrt(807599)/175 of the feasible range of the Rains-Smolin states.
[[nodiscard]] double rains_smolin_halfwidth();

struct MarginalForm {
  std::string id;
  std::function<double(double)> density;
  double lo;
  double hi;
  bool divergent;
};

/// Printed univariate marginals: p(v), q(v) and the eta marginal of the
/// two-parameter intra family.
[[nodiscard]] std::vector<MarginalForm> marginals();

}  // namespace bures::priors
