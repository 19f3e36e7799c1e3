#pragma once

#include <array>
#include <span>
#include <vector>

#include "bures/families.hpp"
#include "bures/linalg.hpp"

namespace bures::metric {

using linalg::ComplexSquareMatrix;
/// k x k real symmetric Bures metric at a parameter point.
using MetricTensor = linalg::RealMatrix;

/// Pairs with lambda_a + lambda_b at or below this are skipped.
inline constexpr double kEigenvalueCut = 1e-12;
/// Cut used under integrals that run up to rank-deficient boundaries, where
/// the 1/lambda terms of nearly singular states carry the integrable blow-up.
inline constexpr double kIntegrationCut = 1e-300;

/// Spectral Bures metric
///   G_ij = 1/2 sum_{a,b} Re[<a|d_i rho|b><b|d_j rho|a>] / (lambda_a + lambda_b).
/// Throws DomainError when rho is not positive within the boundary tolerance.
[[nodiscard]] MetricTensor metric_spectral(const ComplexSquareMatrix& rho,
                                           const std::vector<ComplexSquareMatrix>& drho,
                                           double cut = kEigenvalueCut);
[[nodiscard]] MetricTensor metric_spectral(const families::DensityFamily& fam, std::span<const double> theta,
                                           double cut = kEigenvalueCut);

/// Closed quadratic form for 2x2 states,
///   d^2 = 1/4 Tr{drho drho + (drho - rho drho)^2 / det rho},
/// turned into G by polarization. Throws DomainError for singular rho.
[[nodiscard]] MetricTensor metric_dittmann2(const ComplexSquareMatrix& rho,
                                            const std::vector<ComplexSquareMatrix>& drho);
[[nodiscard]] MetricTensor metric_dittmann2(const families::DensityFamily& fam, std::span<const double> theta);

/// Eigenvalue-free quadratic form for 3x3 states,
///   d^2 = 1/4 Tr{drho drho + c (drho - rho drho)^2 + c det(rho) (drho - rho^-1 drho)^2},
///   c = 3 / (1 - Tr rho^3),
/// turned into G by polarization. Throws DomainError for pure or singular rho.
[[nodiscard]] MetricTensor metric_dittmann3(const ComplexSquareMatrix& rho,
                                            const std::vector<ComplexSquareMatrix>& drho);
[[nodiscard]] MetricTensor metric_dittmann3(const families::DensityFamily& fam, std::span<const double> theta);

/// The 8x8 metric of the eight-parameter qutrit family taken at
/// (v, x, y, z, 0, 0, 0, 0). Throws DomainError off the open feasible set.
[[nodiscard]] MetricTensor conditioned_metric_rhoQ(double v, double x, double y, double z);

/// Closed forms for blocks of the conditioned tensor and the qubit metric.
[[nodiscard]] MetricTensor restricted_block_closed_form(double v, double x, double y, double z);
/// Same block with the three lower diagonal entries negated, as in an older
/// printed variant. Its determinant differs from the unflipped block.
[[nodiscard]] MetricTensor restricted_block_sign_flipped(double v, double x, double y, double z);
[[nodiscard]] MetricTensor qubit_metric_closed_form(double x, double y, double z);

/// Closed-form eigenvalues of the conditioned tensor at radius r, sorted
/// ascending; the last pair is the +/- branch of
///   1 / (-2(r^2 + (v-2)v) +/- 2 sqrt(r^4 + v^4 + 2r^2(2 + (v-4)v))).
[[nodiscard]] std::array<double, 8> printed_eigenvalues(double v, double r);

struct EigenPairs {
  std::array<double, 8> numeric;
  std::array<double, 8> printed;
};

/// Eigenvalues of the conditioned tensor at (v, r along a generic direction)
/// next to the closed forms. Requires 0 <= r < v < 1.
[[nodiscard]] EigenPairs eigen_pairs_check(double v, double r);

struct VolumeElementValue {
  double magnitude = 0.0;
  int det_sign = 0;
};

/// magnitude = sqrt|det G|, with the sign of det G reported separately.
[[nodiscard]] VolumeElementValue volume_element(const MetricTensor& g);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
[[nodiscard]] double fidelity(const ComplexSquareMatrix& rho, const ComplexSquareMatrix& sigma);
/// Squared Bures distance 2(1 - sqrt F).
[[nodiscard]] double bures_distance_sq(const ComplexSquareMatrix& rho, const ComplexSquareMatrix& sigma);

}  // namespace bures::metric
