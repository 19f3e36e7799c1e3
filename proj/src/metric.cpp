#include "bures/metric.hpp"

#include <algorithm>
#include <cmath>

#include "bures/errors.hpp"

namespace bures::metric {

namespace {

void check_shapes(const ComplexSquareMatrix& rho, const std::vector<ComplexSquareMatrix>& drho, int required_dim) {
  if (rho.rows() != rho.cols()) throw UsageError("metric: rho must be square");
  if (required_dim > 0 && rho.rows() != required_dim) {
    throw UsageError("metric: engine needs a " + std::to_string(required_dim) + "x" +
                     std::to_string(required_dim) + " state");
  }
  for (const auto& d : drho) {
    if (d.rows() != rho.rows() || d.cols() != rho.cols()) throw UsageError("metric: derivative shape mismatch");
  }
}

template <class Form>
MetricTensor polarize(const std::vector<ComplexSquareMatrix>& drho, Form q) {
  const auto k = static_cast<Eigen::Index>(drho.size());
  MetricTensor g(k, k);
  std::vector<double> diag(drho.size());
  for (Eigen::Index i = 0; i < k; ++i) diag[i] = q(drho[i]);
  for (Eigen::Index i = 0; i < k; ++i) {
    g(i, i) = diag[i];
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double v = 0.5 * (q(ComplexSquareMatrix(drho[i] + drho[j])) - diag[i] - diag[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

std::vector<ComplexSquareMatrix> rhoQ_generators() {
  static const std::vector<ComplexSquareMatrix> gens = [] {
    const auto fam = families::family_rhoQ();
    return fam.drho(std::vector<double>(8, 0.0));
  }();
  return gens;
}

ComplexSquareMatrix rhoQ_at(double v, double x, double y, double z) {
  static const families::DensityFamily fam = families::family_rhoQ();
  const std::vector<double> p{v, x, y, z, 0.0, 0.0, 0.0, 0.0};
  return fam.rho_matrix(p);
}

}  // namespace

MetricTensor metric_spectral(const ComplexSquareMatrix& rho, const std::vector<ComplexSquareMatrix>& drho,
                             double cut) {
  check_shapes(rho, drho, 0);
  const linalg::Spectrum spec = linalg::herm_eig(linalg::HermitianMatrix(rho));
  const auto n = rho.rows();
  if (spec.eigenvalues(0) < -linalg::kDefaultTolerances.boundary_psd) {
    throw DomainError("metric_spectral: state has eigenvalue " + std::to_string(spec.eigenvalues(0)));
  }
  std::vector<ComplexSquareMatrix> rotated;
  rotated.reserve(drho.size());
  for (const auto& d : drho) rotated.push_back(spec.eigenvectors.adjoint() * d * spec.eigenvectors);

  linalg::RealMatrix inv_sum = linalg::RealMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double s = spec.eigenvalues(a) + spec.eigenvalues(b);
      if (s > cut) inv_sum(a, b) = 1.0 / s;
    }
  }
  const auto k = static_cast<Eigen::Index>(drho.size());
  MetricTensor g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      // <a|A_i|b><b|A_j|a> = A_i(a,b) * A_j(b,a)
      const double v =
          0.5 * (rotated[i].array() * rotated[j].transpose().array()).real().cwiseProduct(inv_sum.array()).sum();
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

MetricTensor metric_spectral(const families::DensityFamily& fam, std::span<const double> theta, double cut) {
  return metric_spectral(fam.rho(theta).matrix(), fam.drho(theta), cut);
}

MetricTensor metric_dittmann2(const ComplexSquareMatrix& rho, const std::vector<ComplexSquareMatrix>& drho) {
  check_shapes(rho, drho, 2);
  const double det = rho.determinant().real();
  if (std::abs(det) < 1e-15) throw DomainError("metric_dittmann2: singular state");
  return polarize(drho, [&](const ComplexSquareMatrix& d) {
    const ComplexSquareMatrix x = d - rho * d;
    return 0.25 * (d * d + x * x / det).trace().real();
  });
}

MetricTensor metric_dittmann2(const families::DensityFamily& fam, std::span<const double> theta) {
  return metric_dittmann2(fam.rho(theta).matrix(), fam.drho(theta));
}

MetricTensor metric_dittmann3(const ComplexSquareMatrix& rho, const std::vector<ComplexSquareMatrix>& drho) {
  check_shapes(rho, drho, 3);
  const double purity3 = (rho * rho * rho).trace().real();
  if (std::abs(1.0 - purity3) < 1e-14) throw DomainError("metric_dittmann3: pure state");
  const double det = rho.determinant().real();
  if (std::abs(det) < 1e-15) throw DomainError("metric_dittmann3: singular state");
  const double c = 3.0 / (1.0 - purity3);
  const ComplexSquareMatrix inv = rho.inverse();
  return polarize(drho, [&](const ComplexSquareMatrix& d) {
    const ComplexSquareMatrix x1 = d - rho * d;
    const ComplexSquareMatrix x2 = d - inv * d;
    return 0.25 * (d * d + c * x1 * x1 + c * det * x2 * x2).trace().real();
  });
}

MetricTensor metric_dittmann3(const families::DensityFamily& fam, std::span<const double> theta) {
  return metric_dittmann3(fam.rho(theta).matrix(), fam.drho(theta));
}

MetricTensor conditioned_metric_rhoQ(double v, double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  if (!(v > 0.0 && v < 1.0 && r2 < v * v)) {
    throw DomainError("conditioned_metric_rhoQ: point is not interior-feasible");
  }
  return metric_spectral(rhoQ_at(v, x, y, z), rhoQ_generators());
}

MetricTensor restricted_block_closed_form(double v, double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  MetricTensor m(4, 4);
  m << (v - r2) / (1.0 - v), -x, -y, -z,                //
      -x, (v * v - y * y - z * z) / v, x * y / v, x * z / v,  //
      -y, x * y / v, (v * v - x * x - z * z) / v, y * z / v,  //
      -z, x * z / v, y * z / v, (v * v - x * x - y * y) / v;
  return m / (4.0 * (v * v - r2));
}

MetricTensor restricted_block_sign_flipped(double v, double x, double y, double z) {
  MetricTensor m = restricted_block_closed_form(v, x, y, z);
  for (int i = 1; i < 4; ++i) m(i, i) = -m(i, i);
  return m;
}

MetricTensor qubit_metric_closed_form(double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  MetricTensor m(3, 3);
  m << 1 - y * y - z * z, x * y, x * z,  //
      x * y, 1 - x * x - z * z, y * z,   //
      x * z, y * z, 1 - x * x - y * y;
  return m / (4.0 * (1.0 - r2));
}

std::array<double, 8> printed_eigenvalues(double v, double r) {
  const double l12 = 1.0 / (4.0 * v);
  const double l34 = 1.0 / (4.0 + 2.0 * r - 2.0 * v);
  const double l56 = -1.0 / (2.0 * (r + v - 2.0));
  const double base = -2.0 * (r * r + (v - 2.0) * v);
  const double root = 2.0 * std::sqrt(std::pow(r, 4) + std::pow(v, 4) + 2.0 * r * r * (2.0 + (v - 4.0) * v));
  std::array<double, 8> out{l12, l12, l34, l34, l56, l56, 1.0 / (base + root), 1.0 / (base - root)};
  std::sort(out.begin(), out.end());
  return out;
}

EigenPairs eigen_pairs_check(double v, double r) {
  // A generic direction, so no accidental alignment with the axes.
  const double nx = 1.0 / std::sqrt(14.0);
  const double ny = 2.0 / std::sqrt(14.0);
  const double nz = 3.0 / std::sqrt(14.0);
  const MetricTensor g = conditioned_metric_rhoQ(v, r * nx, r * ny, r * nz);
  Eigen::SelfAdjointEigenSolver<MetricTensor> solver(g, Eigen::EigenvaluesOnly);
  EigenPairs out{};
  for (int i = 0; i < 8; ++i) out.numeric[i] = solver.eigenvalues()(i);
  out.printed = printed_eigenvalues(v, r);
  return out;
}

VolumeElementValue volume_element(const MetricTensor& g) {
  const double det = g.rows() == 0 ? 1.0 : g.determinant();
  return {std::sqrt(std::abs(det)), det > 0.0 ? 1 : (det < 0.0 ? -1 : 0)};
}

double fidelity(const ComplexSquareMatrix& rho, const ComplexSquareMatrix& sigma) {
  const linalg::Spectrum s = linalg::herm_eig(linalg::HermitianMatrix(rho));
  const linalg::RealVector root = s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  const ComplexSquareMatrix sqrt_rho = s.eigenvectors * root.asDiagonal() * s.eigenvectors.adjoint();
  ComplexSquareMatrix inner = sqrt_rho * sigma * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const linalg::RealVector ev = linalg::herm_eigenvalues(linalg::HermitianMatrix(inner));
  const double tr = ev.cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

double bures_distance_sq(const ComplexSquareMatrix& rho, const ComplexSquareMatrix& sigma) {
  return 2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)));
}

}  // namespace bures::metric
