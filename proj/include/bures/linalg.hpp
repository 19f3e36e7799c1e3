#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>

#include <Eigen/Dense>

namespace bures::linalg {

using Complex = std::complex<double>;
using ComplexSquareMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerances used by the validating constructors. Every function
/// taking a Tolerances argument defaults to these values.
struct Tolerances {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double psd = 1e-10;
  /// Allowed negative eigenvalue in boundary-tolerant mode.
  double boundary_psd = 1e-6;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Bipartite factorization d_A x d_B of a Hilbert space dimension.
struct Dims {
  int a = 0;
  int b = 0;
  [[nodiscard]] int total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

enum class PsdMode { Strict, BoundaryTolerant };

class HermitianMatrix {
 public:
  /// Validates Hermiticity within `tol.hermitian` (absolute, entrywise) and
  /// stores the exactly symmetrized matrix.
  explicit HermitianMatrix(const ComplexSquareMatrix& m, const Tolerances& tol = kDefaultTolerances);

  [[nodiscard]] const ComplexSquareMatrix& matrix() const { return m_; }
  [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
  [[nodiscard]] double trace() const { return m_.trace().real(); }

 private:
  ComplexSquareMatrix m_;
};

class DensityMatrix {
 public:
  DensityMatrix(HermitianMatrix h, std::optional<Dims> dims, PsdMode mode = PsdMode::Strict,
                const Tolerances& tol = kDefaultTolerances);
  DensityMatrix(const ComplexSquareMatrix& m, std::optional<Dims> dims, PsdMode mode = PsdMode::Strict,
                const Tolerances& tol = kDefaultTolerances)
      : DensityMatrix(HermitianMatrix(m, tol), dims, mode, tol) {}

  [[nodiscard]] const HermitianMatrix& hermitian() const { return h_; }
  [[nodiscard]] const ComplexSquareMatrix& matrix() const { return h_.matrix(); }
  [[nodiscard]] const std::optional<Dims>& dims() const { return dims_; }
  [[nodiscard]] int dim() const { return h_.dim(); }
  [[nodiscard]] double min_eigenvalue() const { return min_eig_; }

 private:
  HermitianMatrix h_;
  std::optional<Dims> dims_;
  double min_eig_ = 0.0;
};

struct Spectrum {
  RealVector eigenvalues;            // ascending
  ComplexSquareMatrix eigenvectors;  // orthonormal columns
};

[[nodiscard]] ComplexSquareMatrix kron(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b);

/// Throws NumericalFailure if the eigen-iteration does not converge.
[[nodiscard]] Spectrum herm_eig(const HermitianMatrix& h);
[[nodiscard]] RealVector herm_eigenvalues(const HermitianMatrix& h);
[[nodiscard]] double min_eigenvalue(const ComplexSquareMatrix& hermitian);

/// Block-wise transpose on one tensor factor. Throws UsageError when the
/// state has no declared factorization.
[[nodiscard]] HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem sys = Subsystem::B);
[[nodiscard]] ComplexSquareMatrix partial_transpose(const ComplexSquareMatrix& m, Dims dims,
                                                    Subsystem sys = Subsystem::B);
[[nodiscard]] ComplexSquareMatrix partial_trace(const ComplexSquareMatrix& m, Dims dims, Subsystem traced);

[[nodiscard]] Complex determinant(const ComplexSquareMatrix& m);

/// Pauli matrices indexed 0..3 = I, x, y, z.
[[nodiscard]] const ComplexSquareMatrix& pauli(int index);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// rho = (1/4)(I + sum_i 4 a_i s_i x I + sum_j 4 b_j I x s_j + sum_ij 4 zeta_ij s_i x s_j).
/// Returned in boundary-tolerant mode; feasibility is judged by the caller.
[[nodiscard]] DensityMatrix pauli_two_qubit(const Vec3& a, const Vec3& b, const Mat3& zeta);
/// The matrix part of pauli_two_qubit without validation.
[[nodiscard]] ComplexSquareMatrix pauli_two_qubit_matrix(const Vec3& a, const Vec3& b, const Mat3& zeta);

[[nodiscard]] double max_abs(const ComplexSquareMatrix& m);

}  // namespace bures::linalg
