#pragma once
// Independent reference computations for the unit tests. Nothing here calls
// into the library's metric, separability or quadrature code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/// Kronecker product by explicit index arithmetic.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat pauli(int i) {
  Mat m = Mat::Zero(2, 2);
  const Complex I{0.0, 1.0};
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Transpose of the second factor, written as a sum over matrix units.
inline Mat partial_transpose_b(const Mat& m, int da, int db) {
  Mat out = Mat::Zero(da * db, da * db);
  for (int j = 0; j < db; ++j) {
    for (int l = 0; l < db; ++l) {
      Mat ejl = Mat::Zero(db, db);
      ejl(j, l) = 1.0;
      Mat elj = Mat::Zero(db, db);
      elj(l, j) = 1.0;
      // (1 x <j|) m (1 x |l>) is the (j, l) block in the second factor.
      Mat block(da, da);
      for (int i = 0; i < da; ++i)
        for (int k = 0; k < da; ++k) block(i, k) = m(i * db + j, k * db + l);
      out += kron(block, elj);
    }
  }
  return out;
}

inline double min_eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> s(h, Eigen::EigenvaluesOnly);
  return s.eigenvalues()(0);
}

/// Uhlmann fidelity through the singular values of sqrt(rho) sqrt(sigma).
inline double fidelity(const Mat& rho, const Mat& sigma) {
  auto msqrt = [](const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> s(m);
    return Mat(s.eigenvectors() * s.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
               s.eigenvectors().adjoint());
  };
  Eigen::JacobiSVD<Mat> svd(msqrt(rho) * msqrt(sigma));
  const double t = svd.singularValues().sum();
  return t * t;
}

/// Metric from the fidelity distance d2 = 2(1 - sqrt F) by polarization:
/// G_ii = d2(h e_i) / h^2 and G_ij = [d2(h(e_i + e_j)) - d2(h(e_i - e_j))] / (4 h^2).
inline Eigen::MatrixXd metric_from_fidelity(const std::function<Mat(const std::vector<double>&)>& rho,
                                            const std::vector<double>& t, double h = 1e-4) {
  const int k = static_cast<int>(t.size());
  const Mat r0 = rho(t);
  auto d2 = [&](int i, double si, int j, double sj) {
    std::vector<double> s(t);
    s[i] += si * h;
    s[j] += sj * h;
    std::vector<double> m(t);
    m[i] -= si * h;
    m[j] -= sj * h;
    // Average of the two one-sided distances cancels the cubic term.
    return (2.0 * (1.0 - std::sqrt(fidelity(r0, rho(s)))) + 2.0 * (1.0 - std::sqrt(fidelity(r0, rho(m))))) / 2.0;
  };
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double v;
      if (i == j) {
        v = d2(i, 1.0, i, 0.0) / (h * h);
      } else {
        v = (d2(i, 1.0, j, 1.0) - d2(i, 1.0, j, -1.0)) / (4.0 * h * h);
      }
      g(i, j) = g(j, i) = v;
    }
  }
  return g;
}

/// Werner qubit-qubit (singlet) concurrence.
inline double werner_concurrence(double e) { return std::max(0.0, (3.0 * e - 1.0) / 2.0); }

inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Integral on [a, b] by Boost's tanh-sinh rule.
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-13);
}

/// Integral on [a, b] of f with inverse-square-root blow-ups at both ends,
/// through x = a + (b - a) sin^2(phi) and Gauss-Kronrod in phi.
inline double integrate_sqrt_ends(const std::function<double(double)>& f, double a, double b) {
  auto g = [&](double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    return f(a + (b - a) * s * s) * 2.0 * (b - a) * s * c;
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, kPi / 2, 2, 1e-14);
}

/// Integral on [a, b] of a smooth function by 61-point Gauss-Kronrod.
inline double integrate_smooth(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-14);
}

}  // namespace oracle
