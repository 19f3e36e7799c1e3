#include "bures/linalg.hpp"

#include <cmath>
#include <string>

#include "bures/errors.hpp"

namespace bures::linalg {

double max_abs(const ComplexSquareMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HermitianMatrix::HermitianMatrix(const ComplexSquareMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw UsageError("HermitianMatrix: matrix must be square and non-empty");
  }
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol.hermitian) {
    throw DomainError("HermitianMatrix: deviation from Hermiticity " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(HermitianMatrix h, std::optional<Dims> dims, PsdMode mode, const Tolerances& tol)
    : h_(std::move(h)), dims_(dims) {
  if (dims_ && dims_->total() != h_.dim()) {
    throw UsageError("DensityMatrix: factorization does not match the matrix dimension");
  }
  const double tr = h_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  min_eig_ = herm_eigenvalues(h_)(0);
  const double floor = mode == PsdMode::Strict ? tol.psd : tol.boundary_psd;
  if (min_eig_ < -floor) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig_));
  }
}

ComplexSquareMatrix kron(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b) {
  ComplexSquareMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Spectrum herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexSquareMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("herm_eig: eigen-iteration did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector herm_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexSquareMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("herm_eig: eigen-iteration did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexSquareMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexSquareMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("min_eigenvalue: eigen-iteration did not converge");
  }
  return solver.eigenvalues()(0);
}

ComplexSquareMatrix partial_transpose(const ComplexSquareMatrix& m, Dims dims, Subsystem sys) {
  if (dims.total() != m.rows() || m.rows() != m.cols()) {
    throw UsageError("partial_transpose: factorization does not match the matrix dimension");
  }
  ComplexSquareMatrix out(m.rows(), m.cols());
  const int da = dims.a;
  const int db = dims.b;
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) {
      for (int k = 0; k < da; ++k) {
        for (int l = 0; l < db; ++l) {
          const Complex v = m(i * db + j, k * db + l);
          if (sys == Subsystem::B) {
            out(i * db + l, k * db + j) = v;
          } else {
            out(k * db + j, i * db + l) = v;
          }
        }
      }
    }
  }
  return out;
}

HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem sys) {
  if (!rho.dims()) {
    throw UsageError("partial_transpose: state has no declared (d_A, d_B) factorization");
  }
  return HermitianMatrix(partial_transpose(rho.matrix(), *rho.dims(), sys));
}

ComplexSquareMatrix partial_trace(const ComplexSquareMatrix& m, Dims dims, Subsystem traced) {
  if (dims.total() != m.rows()) {
    throw UsageError("partial_trace: factorization does not match the matrix dimension");
  }
  const int keep = traced == Subsystem::B ? dims.a : dims.b;
  const int drop = traced == Subsystem::B ? dims.b : dims.a;
  ComplexSquareMatrix out = ComplexSquareMatrix::Zero(keep, keep);
  for (int i = 0; i < keep; ++i) {
    for (int k = 0; k < keep; ++k) {
      for (int j = 0; j < drop; ++j) {
        out(i, k) += traced == Subsystem::B ? m(i * dims.b + j, k * dims.b + j)
                                            : m(j * dims.b + i, j * dims.b + k);
      }
    }
  }
  return out;
}

Complex determinant(const ComplexSquareMatrix& m) { return m.determinant(); }

const ComplexSquareMatrix& pauli(int index) {
  static const std::array<ComplexSquareMatrix, 4> table = [] {
    const Complex i{0.0, 1.0};
    std::array<ComplexSquareMatrix, 4> t;
    for (auto& p : t) p = ComplexSquareMatrix::Zero(2, 2);
    t[0] << 1, 0, 0, 1;
    t[1] << 0, 1, 1, 0;
    t[2] << 0, -i, i, 0;
    t[3] << 1, 0, 0, -1;
    return t;
  }();
  if (index < 0 || index > 3) throw UsageError("pauli: index must be in 0..3");
  return table[static_cast<std::size_t>(index)];
}

ComplexSquareMatrix pauli_two_qubit_matrix(const Vec3& a, const Vec3& b, const Mat3& zeta) {
  ComplexSquareMatrix rho = 0.25 * kron(pauli(0), pauli(0));
  for (int i = 0; i < 3; ++i) {
    rho += a[i] * kron(pauli(i + 1), pauli(0));
    rho += b[i] * kron(pauli(0), pauli(i + 1));
    for (int j = 0; j < 3; ++j) {
      rho += zeta[i][j] * kron(pauli(i + 1), pauli(j + 1));
    }
  }
  return rho;
}

DensityMatrix pauli_two_qubit(const Vec3& a, const Vec3& b, const Mat3& zeta) {
  return DensityMatrix(pauli_two_qubit_matrix(a, b, zeta), Dims{2, 2}, PsdMode::BoundaryTolerant);
}

}  // namespace bures::linalg
