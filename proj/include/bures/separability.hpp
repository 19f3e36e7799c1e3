#pragma once

#include <utility>

#include "bures/families.hpp"
#include "bures/linalg.hpp"

namespace bures::separability {

enum class Criterion {
  /// PPT is necessary and sufficient (d_A d_B <= 6).
  Exact,
  /// PPT is only necessary.
  NecessaryOnly,
  /// Range taken from the literature.
  External,
};

struct SeparabilityVerdict {
  double ppt_min_eigenvalue = 0.0;
  bool is_ppt = false;
  Criterion criterion = Criterion::Exact;
};

inline constexpr double kPptTolerance = 1e-10;

/// PPT test on a state with declared dims.
[[nodiscard]] SeparabilityVerdict is_separable(const linalg::DensityMatrix& rho);

/// Smallest eigenvalue of the partial transpose (over B) of a family state.
[[nodiscard]] double min_pt_eigenvalue(const families::DensityFamily& fam, double t);

/// Feasible endpoints of a one-parameter family, from bisection on the
/// smallest eigenvalue starting inside `bracket`.
[[nodiscard]] std::pair<double, double> feasible_interval(const families::DensityFamily& fam,
                                                          std::pair<double, double> bracket, double tol = 1e-13);

/// Separable interval of a one-parameter family. PPT-decisive dimensions:
/// the feasible interval is shrunk to the PPT set by bisection on the
/// smallest partial-transpose eigenvalue. External families: the declared
/// range. Throws UsageError otherwise.
[[nodiscard]] std::pair<double, double> separable_interval(const families::DensityFamily& fam, double tol = 1e-13);

/// Wootters concurrence of a two-qubit state.
[[nodiscard]] double concurrence(const linalg::DensityMatrix& rho);
[[nodiscard]] double concurrence(const linalg::ComplexSquareMatrix& rho);

/// Binary entropy in bits, h(0) = h(1) = 0.
[[nodiscard]] double binary_entropy(double x);
/// Entanglement of formation from the concurrence.
[[nodiscard]] double eof_from_concurrence(double c);
[[nodiscard]] double eof(const linalg::DensityMatrix& rho);

}  // namespace bures::separability
