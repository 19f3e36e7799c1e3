#include <cmath>
#include <random>

#include <doctest.h>

#include "bures/errors.hpp"
#include "bures/linalg.hpp"
#include "oracles.hpp"

using namespace bures::linalg;

namespace {

ComplexSquareMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  ComplexSquareMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

DensityMatrix random_state(std::mt19937_64& rng, Dims dims) {
  std::normal_distribution<double> g;
  const int n = dims.total();
  ComplexSquareMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  ComplexSquareMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(ComplexSquareMatrix((rho + rho.adjoint()) / 2.0), dims);
}

ComplexSquareMatrix singlet() {
  ComplexSquareMatrix psi = ComplexSquareMatrix::Zero(4, 1);
  psi(1, 0) = 1.0 / std::sqrt(2.0);
  psi(2, 0) = -1.0 / std::sqrt(2.0);
  return psi * psi.adjoint();
}

}  // namespace

TEST_CASE("kron of identities and diagonal Paulis") {
  CHECK(max_abs(kron(pauli(0), pauli(0)) - ComplexSquareMatrix::Identity(4, 4)) == 0.0);
  ComplexSquareMatrix zz = ComplexSquareMatrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs(kron(pauli(3), pauli(3)) - zz) == 0.0);
}

TEST_CASE("kron of sigma_x and sigma_y is the antidiagonal (-i, i, -i, i)") {
  const ComplexSquareMatrix k = kron(pauli(1), pauli(2));
  ComplexSquareMatrix expected = ComplexSquareMatrix::Zero(4, 4);
  const Complex I{0.0, 1.0};
  expected(0, 3) = -I;
  expected(1, 2) = I;
  expected(2, 1) = -I;
  expected(3, 0) = I;
  CHECK(max_abs(k - expected) == 0.0);
}

TEST_CASE("kron agrees with an index-loop implementation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_hermitian(rng, 2);
    const auto b = random_hermitian(rng, 3);
    CHECK(max_abs(kron(a, b) - oracle::kron(a, b)) == 0.0);
  }
}

TEST_CASE("herm_eig examples") {
  ComplexSquareMatrix d = ComplexSquareMatrix::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  const auto s = herm_eig(HermitianMatrix(d));
  CHECK(s.eigenvalues(0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.9).epsilon(1e-15));
  const auto x = herm_eigenvalues(HermitianMatrix(pauli(1)));
  CHECK(x(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("herm_eig reconstruction and orthonormality on random inputs") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4, 6, 9}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto h = random_hermitian(rng, n);
      const auto s = herm_eig(HermitianMatrix(h));
      const ComplexSquareMatrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
      CHECK(max_abs(rec - h) <= 1e-10 * max_abs(h));
      CHECK(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - ComplexSquareMatrix::Identity(n, n)) <= 1e-10);
      for (int i = 1; i < n; ++i) CHECK(s.eigenvalues(i - 1) <= s.eigenvalues(i));
    }
  }
}

TEST_CASE("validating constructors") {
  ComplexSquareMatrix m = ComplexSquareMatrix::Identity(2, 2) / 2.0;
  m(0, 1) = 1e-9;
  CHECK_THROWS_AS((void)HermitianMatrix(m), bures::DomainError);
  ComplexSquareMatrix t = ComplexSquareMatrix::Identity(2, 2) * 0.6;
  CHECK_THROWS_AS((void)DensityMatrix(t, std::nullopt), bures::DomainError);
  ComplexSquareMatrix neg = ComplexSquareMatrix::Zero(2, 2);
  neg(0, 0) = 1.0 + 1e-7;
  neg(1, 1) = -1e-7;
  CHECK_THROWS_AS((void)DensityMatrix(neg, std::nullopt), bures::DomainError);
  CHECK_NOTHROW((void)DensityMatrix(neg, std::nullopt, PsdMode::BoundaryTolerant));
}

TEST_CASE("partial transpose requires a factorization") {
  const DensityMatrix rho(ComplexSquareMatrix(ComplexSquareMatrix::Identity(4, 4) / 4.0), std::nullopt);
  CHECK_THROWS_AS((void)partial_transpose(rho), bures::UsageError);
}

TEST_CASE("partial transpose agrees with a matrix-unit implementation") {
  std::mt19937_64 rng(3);
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}, Dims{3, 2}}) {
    const auto rho = random_state(rng, d);
    CHECK(max_abs(partial_transpose(rho).matrix() - oracle::partial_transpose_b(rho.matrix(), d.a, d.b)) <= 1e-15);
  }
}

TEST_CASE("partial transpose is an involution and preserves the trace") {
  std::mt19937_64 rng(5);
  for (Dims d : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    for (auto sys : {Subsystem::A, Subsystem::B}) {
      const auto rho = random_state(rng, d);
      const ComplexSquareMatrix once = partial_transpose(rho.matrix(), d, sys);
      CHECK(max_abs(partial_transpose(once, d, sys) - rho.matrix()) == 0.0);
      CHECK(std::abs(once.trace().real() - rho.hermitian().trace()) <= 1e-14);
    }
  }
}

TEST_CASE("product states have a nonnegative partial transpose") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_state(rng, Dims{1, 2});
    const auto b = random_state(rng, Dims{1, 3});
    const DensityMatrix prod(kron(a.matrix(), b.matrix()), Dims{2, 3});
    CHECK(min_eigenvalue(partial_transpose(prod).matrix()) >= -1e-14);
  }
}

TEST_CASE("singlet partial transpose has smallest eigenvalue -1/2") {
  const DensityMatrix s(singlet(), Dims{2, 2}, PsdMode::BoundaryTolerant);
  CHECK(min_eigenvalue(partial_transpose(s).matrix()) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("partial trace of a product state") {
  std::mt19937_64 rng(13);
  const auto a = random_state(rng, Dims{1, 2});
  const auto b = random_state(rng, Dims{1, 3});
  const ComplexSquareMatrix prod = kron(a.matrix(), b.matrix());
  CHECK(max_abs(partial_trace(prod, Dims{2, 3}, Subsystem::B) - a.matrix()) <= 1e-15);
  CHECK(max_abs(partial_trace(prod, Dims{2, 3}, Subsystem::A) - b.matrix()) <= 1e-15);
}

TEST_CASE("pauli_two_qubit examples") {
  const Mat3 zero{};
  const auto mixed = pauli_two_qubit({0, 0, 0}, {0, 0, 0}, zero);
  CHECK(max_abs(mixed.matrix() - ComplexSquareMatrix::Identity(4, 4) / 4.0) == 0.0);
  Mat3 z{};
  for (int i = 0; i < 3; ++i) z[i][i] = -0.25;
  CHECK(max_abs(pauli_two_qubit({0, 0, 0}, {0, 0, 0}, z).matrix() - singlet()) <= 1e-15);
}

TEST_CASE("pauli_two_qubit with equal diagonal correlations has the expected spectrum") {
  for (double zeta : {-0.25, -0.1, 0.0, 0.05, 1.0 / 12}) {
    Mat3 z{};
    for (int i = 0; i < 3; ++i) z[i][i] = zeta;
    const auto ev = herm_eigenvalues(HermitianMatrix(pauli_two_qubit_matrix({0, 0, 0}, {0, 0, 0}, z)));
    const double lo = std::min((1 + 4 * zeta) / 4, (1 - 12 * zeta) / 4);
    CHECK(ev(0) == doctest::Approx(lo).epsilon(1e-14));
    CHECK(ev(3) == doctest::Approx(std::max((1 + 4 * zeta) / 4, (1 - 12 * zeta) / 4)).epsilon(1e-14));
  }
}

TEST_CASE("pauli_two_qubit matches the Pauli expansion") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  Vec3 a, b;
  Mat3 z;
  for (int i = 0; i < 3; ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
    for (int j = 0; j < 3; ++j) z[i][j] = u(rng);
  }
  oracle::Mat expected = oracle::kron(oracle::pauli(0), oracle::pauli(0)) / 4.0;
  for (int i = 0; i < 3; ++i) {
    expected += a[i] * oracle::kron(oracle::pauli(i + 1), oracle::pauli(0));
    expected += b[i] * oracle::kron(oracle::pauli(0), oracle::pauli(i + 1));
    for (int j = 0; j < 3; ++j) expected += z[i][j] * oracle::kron(oracle::pauli(i + 1), oracle::pauli(j + 1));
  }
  CHECK(max_abs(pauli_two_qubit_matrix(a, b, z) - expected) <= 1e-15);
}

TEST_CASE("pauli_two_qubit is affine in every parameter") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  auto random_point = [&] {
    Vec3 a, b;
    Mat3 z;
    for (int i = 0; i < 3; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      for (int j = 0; j < 3; ++j) z[i][j] = u(rng);
    }
    return std::tuple{a, b, z};
  };
  const double delta = 0.01;
  for (int p = 0; p < 15; ++p) {
    ComplexSquareMatrix first;
    for (int trial = 0; trial < 3; ++trial) {
      auto [a, b, z] = random_point();
      const auto base = pauli_two_qubit_matrix(a, b, z);
      if (p < 3) a[p] += delta;
      else if (p < 6) b[p - 3] += delta;
      else z[(p - 6) / 3][(p - 6) % 3] += delta;
      const ComplexSquareMatrix step = pauli_two_qubit_matrix(a, b, z) - base;
      if (trial == 0) first = step;
      else CHECK(max_abs(step - first) <= 1e-15);
    }
  }
}
