#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bures/linalg.hpp"
#include "bures/region.hpp"

namespace bures::families {

using linalg::ComplexSquareMatrix;

enum class PriorMode { MetricEngine, ClosedForm };

/// How the separable part of a family is known.
///  Region:   an explicit region (PPT-decisive dimensions, cross-checked).
///  External: a literature range that PPT can only bound (3x3 and up).
enum class SeparableSource { Region, External };

/// A named parameterized map theta -> rho(theta) with its derivative maps.
struct DensityFamily {
  std::string id;
  std::string description;
  int dim = 0;
  std::optional<linalg::Dims> dims;
  std::vector<std::string> param_names;
  std::function<ComplexSquareMatrix(std::span<const double>)> rho_matrix;
  std::function<std::vector<ComplexSquareMatrix>(std::span<const double>)> drho;
  /// True when drho does not depend on theta.
  bool affine = false;
  RegionSpec feasible;
  std::optional<RegionSpec> separable;
  SeparableSource separable_source = SeparableSource::Region;
  PriorMode prior_mode = PriorMode::MetricEngine;
  /// Catalog id of the printed prior used when prior_mode is ClosedForm, or as
  /// an oracle otherwise; empty when none is printed.
  std::string closed_form_prior;

  [[nodiscard]] int k() const { return static_cast<int>(param_names.size()); }
  /// The state at theta, validated in boundary-tolerant mode.
  [[nodiscard]] linalg::DensityMatrix rho(std::span<const double> theta) const;
};

/// An affine family rho(theta) = base + sum_i theta_i * generators[i].
[[nodiscard]] DensityFamily make_affine(std::string id, std::string description, std::optional<linalg::Dims> dims,
                                        std::vector<std::string> names, ComplexSquareMatrix base,
                                        std::vector<ComplexSquareMatrix> generators);

[[nodiscard]] DensityFamily family_s1_equal_intra();
[[nodiscard]] DensityFamily family_s2_two_pos_one_neg();
[[nodiscard]] DensityFamily family_s3_equal_inter();
[[nodiscard]] DensityFamily family_s4_intra_vs_inter();
[[nodiscard]] DensityFamily family_s5_all_nine();
[[nodiscard]] DensityFamily family_s6_all_fifteen();
[[nodiscard]] DensityFamily family_s7_antisym_inter();
[[nodiscard]] DensityFamily family_werner_qq();
[[nodiscard]] DensityFamily family_twoparam_intra();
[[nodiscard]] DensityFamily family_threeparam_intra();
[[nodiscard]] DensityFamily family_diag4();
[[nodiscard]] DensityFamily family_diag4_unitary();
[[nodiscard]] DensityFamily family_werner_qutrit();
[[nodiscard]] DensityFamily family_sixlevel();
[[nodiscard]] DensityFamily family_werner_qubit_qutrit();
[[nodiscard]] DensityFamily family_rhoQ();
[[nodiscard]] DensityFamily family_rhoP();
[[nodiscard]] DensityFamily family_bloch2();
/// All fifteen Pauli-basis coordinates a_i, b_j, zeta_ij of a two-qubit state.
[[nodiscard]] DensityFamily family_two_qubit_general();

/// The unitary U1(w) rotating basis states |01> and |10> of two qubits.
[[nodiscard]] ComplexSquareMatrix rotation_u1(double w);

/// Half-width u(x,y,z) of the w-interval [-u, u] on which the rotated
/// diagonal state stays PPT, from the closed arcsin expression; capped at
/// pi/4 when the arcsin argument exceeds 1.
[[nodiscard]] double unitary_separable_halfwidth(double x, double y, double z);

/// Printed decimal endpoints, kept for comparison with the bisection values.
inline constexpr double kSixLevelFeasibleLowerPrinted = -0.0546647;
inline constexpr double kSixLevelFeasibleUpperPrinted = 0.10277;

/// All registered families, ordered by id. Immutable after first use.
[[nodiscard]] const std::vector<DensityFamily>& registry();
/// Throws UsageError for an unknown id.
[[nodiscard]] const DensityFamily& find(std::string_view id);

}  // namespace bures::families
