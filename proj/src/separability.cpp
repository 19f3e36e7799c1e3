#include "bures/separability.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bures/errors.hpp"
#include "bures/quadrature.hpp"

namespace bures::separability {

SeparabilityVerdict is_separable(const linalg::DensityMatrix& rho) {
  if (!rho.dims()) throw UsageError("is_separable: state has no bipartite dims");
  const auto pt = linalg::partial_transpose(rho);
  SeparabilityVerdict v;
  v.ppt_min_eigenvalue = linalg::min_eigenvalue(pt.matrix());
  v.is_ppt = v.ppt_min_eigenvalue >= -kPptTolerance;
  v.criterion = rho.dims()->total() <= 6 ? Criterion::Exact : Criterion::NecessaryOnly;
  return v;
}

double min_pt_eigenvalue(const families::DensityFamily& fam, double t) {
  if (!fam.dims) throw UsageError("family '" + fam.id + "' has no bipartite dims");
  const double theta[1] = {t};
  return linalg::min_eigenvalue(linalg::partial_transpose(fam.rho_matrix(theta), *fam.dims));
}

std::pair<double, double> feasible_interval(const families::DensityFamily& fam, std::pair<double, double> bracket,
                                            double tol) {
  if (fam.k() != 1) throw UsageError("feasible_interval: one-parameter family required");
  auto g = [&](double t) {
    const double theta[1] = {t};
    return linalg::min_eigenvalue(fam.rho_matrix(theta));
  };
  const double mid = 0.5 * (bracket.first + bracket.second);
  if (g(mid) <= 0.0) throw UsageError("feasible_interval: bracket midpoint is not an interior state");
  const double lo = quadrature::find_root_bisect(g, bracket.first, mid, tol);
  const double hi = quadrature::find_root_bisect(g, mid, bracket.second, tol);
  return {lo, hi};
}

std::pair<double, double> separable_interval(const families::DensityFamily& fam, double tol) {
  if (fam.k() != 1) throw UsageError("separable_interval: one-parameter family required");
  if (fam.separable_source == families::SeparableSource::External) {
    if (!fam.separable) throw UsageError("separable_interval: external range missing");
    return fam.separable->endpoints();
  }
  if (!fam.dims || fam.dims->total() > 6) {
    throw UsageError("separable_interval: PPT does not decide separability for family '" + fam.id +
                     "' and no external range is declared");
  }
  const auto [a, b] = fam.feasible.endpoints();
  auto g = [&](double t) { return min_pt_eigenvalue(fam, t); };
  // A PPT point to start from: the fully mixed point is PPT for every family here.
  double anchor = std::clamp(0.0, a, b);
  if (g(anchor) < 0.0) throw NumericalFailure("separable_interval: no PPT anchor in the feasible interval");
  const double lo = g(a) >= -kPptTolerance ? a : quadrature::find_root_bisect(g, a, anchor, tol);
  const double hi = g(b) >= -kPptTolerance ? b : quadrature::find_root_bisect(g, anchor, b, tol);
  return {lo, hi};
}

double concurrence(const linalg::ComplexSquareMatrix& rho) {
  if (rho.rows() != 4) throw UsageError("concurrence: two-qubit state required");
  const linalg::ComplexSquareMatrix yy = linalg::kron(linalg::pauli(2), linalg::pauli(2));
  const linalg::ComplexSquareMatrix tilde = yy * rho.conjugate() * yy;
  // Eigenvalues of rho * tilde equal those of the Hermitian sqrt(rho) tilde sqrt(rho).
  const linalg::Spectrum s = linalg::herm_eig(linalg::HermitianMatrix(rho, {1e-10, 1e-10, 1e-10, 1e-6}));
  const linalg::RealVector root = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const linalg::ComplexSquareMatrix sq = s.eigenvectors * root.asDiagonal() * s.eigenvectors.adjoint();
  linalg::ComplexSquareMatrix r = sq * tilde * sq;
  r = 0.5 * (r + r.adjoint()).eval();
  linalg::RealVector mu = linalg::herm_eigenvalues(linalg::HermitianMatrix(r, {1e-10, 1e-10, 1e-10, 1e-6}));
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = std::sqrt(std::max(mu(i), 0.0));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence(const linalg::DensityMatrix& rho) { return concurrence(rho.matrix()); }

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
  const double cc = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - cc * cc)));
}

double eof(const linalg::DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

}  // namespace bures::separability
