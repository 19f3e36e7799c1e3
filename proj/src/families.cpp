#include "bures/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bures/errors.hpp"
#include "bures/quadrature.hpp"

namespace bures::families {

namespace {

using linalg::Complex;
using linalg::Dims;
using linalg::Mat3;
using linalg::Vec3;

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

ComplexSquareMatrix identity(int n) { return ComplexSquareMatrix::Identity(n, n); }

ComplexSquareMatrix projector(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

/// Correlation pattern zeta_ij = scale * pattern[i][j], with optional equal
/// Bloch coefficients on both qubits.
ComplexSquareMatrix pauli_generator(const Mat3& pattern, double bloch = 0.0) {
  const Vec3 ab{bloch, bloch, bloch};
  return linalg::pauli_two_qubit_matrix(ab, ab, pattern) - 0.25 * identity(4);
}

DensityFamily one_parameter_two_qubit(std::string id, std::string description, const Mat3& pattern, double lo,
                                      double hi, double sep_lo, double sep_hi, double bloch = 0.0) {
  auto fam = make_affine(std::move(id), std::move(description), Dims{2, 2}, {"zeta"}, 0.25 * identity(4),
                         {pauli_generator(pattern, bloch)});
  fam.feasible = RegionSpec::interval(lo, hi, true, true, "zeta");
  fam.separable = RegionSpec::interval(sep_lo, sep_hi, sep_lo == lo, sep_hi == hi, "zeta");
  return fam;
}

double min_eig_along(const DensityFamily& fam, double t) {
  const double theta[1] = {t};
  return linalg::min_eigenvalue(fam.rho_matrix(theta));
}

double min_pt_eig_along(const DensityFamily& fam, double t) {
  const double theta[1] = {t};
  return linalg::min_eigenvalue(linalg::partial_transpose(fam.rho_matrix(theta), *fam.dims));
}

RegionSpec ball_region(const std::string& radial_name, bool radial_is_parameter) {
  // Outer radial variable v in [0,1] (absent for the unit Bloch ball), then x, y, z.
  RegionSpec r;
  r.kind = RegionKind::NestedLimits;
  NestedRegion piece;
  piece.name = "ball";
  const std::size_t off = radial_is_parameter ? 1 : 0;
  auto radius = [off](std::span<const double> outer) { return off == 1 ? outer[0] : 1.0; };
  if (radial_is_parameter) {
    piece.levels.push_back({radial_name, Bound::constant(0.0), Bound::constant(1.0, true), {}});
  }
  piece.levels.push_back({"x",
                          {[radius](std::span<const double> o) { return -radius(o); }, false},
                          {[radius](std::span<const double> o) { return radius(o); }, false},
                          {}});
  auto disk = [radius, off](std::span<const double> o) {
    const double r2 = radius(o) * radius(o) - o[off] * o[off];
    return std::sqrt(std::max(r2, 0.0));
  };
  piece.levels.push_back({"y",
                          {[disk](std::span<const double> o) { return -disk(o); }, false},
                          {[disk](std::span<const double> o) { return disk(o); }, false},
                          {}});
  auto chord = [radius, off](std::span<const double> o) {
    const double r2 = radius(o) * radius(o) - o[off] * o[off] - o[off + 1] * o[off + 1];
    return std::sqrt(std::max(r2, 0.0));
  };
  piece.levels.push_back({"z",
                          {[chord](std::span<const double> o) { return -chord(o); }, true},
                          {[chord](std::span<const double> o) { return chord(o); }, true},
                          {}});
  r.pieces.push_back(std::move(piece));
  r.contains = [off](std::span<const double> p) {
    const double rad = off == 1 ? p[0] : 1.0;
    if (off == 1 && (p[0] < 0.0 || p[0] > 1.0)) return false;
    return p[off] * p[off] + p[off + 1] * p[off + 1] + p[off + 2] * p[off + 2] <= rad * rad;
  };
  r.description = radial_is_parameter ? "x^2+y^2+z^2 <= v^2, 0 <= v <= 1" : "x^2+y^2+z^2 <= 1";
  return r;
}

}  // namespace

linalg::DensityMatrix DensityFamily::rho(std::span<const double> theta) const {
  if (!rho_matrix) throw UsageError("family '" + id + "' has no density-matrix map");
  if (static_cast<int>(theta.size()) != k()) throw UsageError("family '" + id + "': wrong parameter count");
  return linalg::DensityMatrix(rho_matrix(theta), dims, linalg::PsdMode::BoundaryTolerant);
}

DensityFamily make_affine(std::string id, std::string description, std::optional<Dims> dims,
                          std::vector<std::string> names, ComplexSquareMatrix base,
                          std::vector<ComplexSquareMatrix> generators) {
  if (names.size() != generators.size()) throw UsageError("make_affine: one generator per parameter");
  DensityFamily fam;
  fam.id = std::move(id);
  fam.description = std::move(description);
  fam.dim = static_cast<int>(base.rows());
  fam.dims = dims;
  fam.param_names = std::move(names);
  fam.affine = true;
  fam.rho_matrix = [base, generators](std::span<const double> theta) {
    ComplexSquareMatrix rho = base;
    for (std::size_t i = 0; i < generators.size(); ++i) rho += theta[i] * generators[i];
    return rho;
  };
  fam.drho = [generators](std::span<const double>) { return generators; };
  return fam;
}

DensityFamily family_s1_equal_intra() {
  Mat3 p{};
  for (int i = 0; i < 3; ++i) p[i][i] = 1.0;
  auto fam = one_parameter_two_qubit("s1_equal_intra", "three equal intra-directional correlations", p, -0.25,
                                     1.0 / 12, -1.0 / 12, 1.0 / 12);
  fam.closed_form_prior = "s1_equal_intra";
  return fam;
}

DensityFamily family_s2_two_pos_one_neg() {
  Mat3 p{};
  p[0][0] = p[1][1] = 1.0;
  p[2][2] = -1.0;
  auto fam = one_parameter_two_qubit("s2_two_pos_one_neg", "zeta_xx = zeta_yy = zeta, zeta_zz = -zeta", p,
                                     -1.0 / 12, 0.25, -1.0 / 12, 1.0 / 12);
  fam.closed_form_prior = "s2_two_pos_one_neg";
  return fam;
}

DensityFamily family_s3_equal_inter() {
  Mat3 p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i][j] = i == j ? 0.0 : 1.0;
  auto fam = one_parameter_two_qubit("s3_equal_inter", "six equal inter-directional correlations", p, -0.125,
                                     1.0 / 16, -1.0 / 16, 1.0 / 16);
  fam.closed_form_prior = "s3_equal_inter";
  return fam;
}

DensityFamily family_s4_intra_vs_inter() {
  Mat3 p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i][j] = i == j ? 1.0 : -1.0;
  auto fam = one_parameter_two_qubit("s4_intra_vs_inter", "intra-directional zeta, inter-directional -zeta", p,
                                     -1.0 / 20, 1.0 / 12, -1.0 / 20, 1.0 / 20);
  fam.closed_form_prior = "s4_intra_vs_inter";
  return fam;
}

DensityFamily family_s5_all_nine() {
  Mat3 p{};
  for (auto& row : p) row.fill(1.0);
  auto fam = one_parameter_two_qubit("s5_all_nine", "all nine directional correlations equal", p, -1.0 / 12,
                                     1.0 / 12, -1.0 / 12, 1.0 / 12);
  fam.closed_form_prior = "s5_all_nine";
  return fam;
}

DensityFamily family_s6_all_fifteen() {
  Mat3 p{};
  for (auto& row : p) row.fill(1.0);
  const double lo = -1.0 / (4.0 * (3.0 + 2.0 * kSqrt3));
  auto fam = one_parameter_two_qubit("s6_all_fifteen", "all fifteen parameters equal", p, lo, 1.0 / 12, lo,
                                     1.0 / 12, 1.0);
  fam.closed_form_prior = "s6_all_fifteen";
  return fam;
}

DensityFamily family_s7_antisym_inter() {
  Mat3 p{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i][j] = i < j ? 1.0 : (i > j ? -1.0 : 0.0);
  auto fam = one_parameter_two_qubit("s7_antisym_inter", "antisymmetric inter-directional correlations", p, -1.0,
                                     1.0, -1.0, 1.0);
  const double lo = quadrature::find_root_bisect([&](double t) { return min_eig_along(fam, t); }, -0.5, 0.0, 1e-15);
  const double hi = quadrature::find_root_bisect([&](double t) { return min_eig_along(fam, t); }, 0.0, 0.5, 1e-15);
  fam.feasible = RegionSpec::interval(lo, hi, true, true, "zeta");
  fam.separable = RegionSpec::interval(lo, hi, true, true, "zeta");
  return fam;
}

DensityFamily family_werner_qq() {
  // Intra-directional correlations all equal to -epsilon/4.
  Mat3 p{};
  for (int i = 0; i < 3; ++i) p[i][i] = -0.25;
  auto fam = make_affine("werner_qq", "two-qubit Werner states (1-e) I/4 + e |psi-><psi-|", Dims{2, 2},
                         {"epsilon"}, 0.25 * identity(4), {pauli_generator(p)});
  fam.feasible = RegionSpec::interval(0.0, 1.0, false, true, "epsilon");
  fam.separable = RegionSpec::interval(0.0, 1.0 / 3, false, false, "epsilon");
  fam.closed_form_prior = "werner_qq";
  return fam;
}

DensityFamily family_twoparam_intra() {
  Mat3 pz{};
  pz[0][0] = pz[1][1] = 1.0;
  Mat3 pe{};
  pe[2][2] = 1.0;
  auto fam = make_affine("twoparam_intra", "zeta_xx = zeta_yy = zeta, zeta_zz = eta free", Dims{2, 2},
                         {"zeta", "eta"}, 0.25 * identity(4), {pauli_generator(pz), pauli_generator(pe)});
  // Integration variables are (eta, zeta), eta outermost.
  auto swap = [](std::span<const double> v) { return std::vector<double>{v[1], v[0]}; };
  auto half_width_feasible = [](std::span<const double> o) { return (1.0 - 4.0 * o[0]) / 8.0; };
  auto half_width_sep_neg = [](std::span<const double> o) { return (1.0 + 4.0 * o[0]) / 8.0; };

  NestedRegion feasible{"triangle",
                        {{"eta", Bound::constant(-0.25, true), Bound::constant(0.25), {}},
                         {"zeta",
                          {[=](std::span<const double> o) { return -half_width_feasible(o); }, true},
                          {[=](std::span<const double> o) { return half_width_feasible(o); }, true},
                          {}}},
                        swap,
                        1.0};
  fam.feasible.kind = RegionKind::NestedLimits;
  fam.feasible.pieces = {feasible};
  fam.feasible.contains = [](std::span<const double> p) {
    return 1.0 + 4.0 * p[1] >= 0.0 && std::abs(8.0 * p[0]) <= 1.0 - 4.0 * p[1];
  };
  fam.feasible.description = "eta in [-1/4,1/4], zeta in [(-1+4eta)/8, (1-4eta)/8]";

  NestedRegion sep_pos = feasible;
  sep_pos.name = "eta>0";
  sep_pos.levels[0] = {"eta", Bound::constant(0.0), Bound::constant(0.25), {}};
  NestedRegion sep_neg{"eta<0",
                       {{"eta", Bound::constant(-0.25, true), Bound::constant(0.0), {}},
                        {"zeta",
                         {[=](std::span<const double> o) { return -half_width_sep_neg(o); }, false},
                         {[=](std::span<const double> o) { return half_width_sep_neg(o); }, false},
                         {}}},
                       swap,
                       1.0};
  RegionSpec sep;
  sep.kind = RegionKind::NestedLimits;
  sep.pieces = {sep_pos, sep_neg};
  sep.contains = [](std::span<const double> p) {
    const double zeta = p[0];
    const double eta = p[1];
    const double w = std::min(1.0 - 4.0 * eta, 1.0 + 4.0 * eta) / 8.0;
    return eta >= -0.25 && eta <= 0.25 && std::abs(zeta) <= w;
  };
  sep.description = "rhombus |zeta| <= min(1-4eta, 1+4eta)/8";
  fam.separable = sep;
  fam.closed_form_prior = "twoparam_intra";
  return fam;
}

DensityFamily family_threeparam_intra() {
  Mat3 px{}, py{}, pz{};
  px[0][0] = 1.0;
  py[1][1] = 1.0;
  pz[2][2] = 1.0;
  auto fam = make_affine("threeparam_intra", "independent intra-directional correlations zeta, eta, kappa",
                         Dims{2, 2}, {"zeta", "eta", "kappa"}, 0.25 * identity(4),
                         {pauli_generator(px), pauli_generator(py), pauli_generator(pz)});
  // Integration variables (zeta, upsilon, eta) with upsilon = -1 + 4zeta - 4eta - 4kappa.
  auto to_params = [](std::span<const double> v) {
    const double zeta = v[0];
    const double ups = v[1];
    const double eta = v[2];
    return std::vector<double>{zeta, eta, -0.25 + zeta - eta - ups / 4.0};
  };
  const Bound ups_lo{[](std::span<const double> o) { return 2.0 * (-1.0 + 4.0 * o[0]); }, true};
  NestedRegion feasible{"tetrahedron",
                        {{"zeta", Bound::constant(-0.25), Bound::constant(0.25), {}},
                         {"upsilon", ups_lo, Bound::constant(0.0, true), {}},
                         {"eta",
                          {[](std::span<const double> o) { return (-2.0 - o[1]) / 8.0; }, true},
                          {[](std::span<const double> o) { return (8.0 * o[0] - o[1]) / 8.0; }, true},
                          {}}},
                        to_params,
                        0.25};
  auto bell = [](std::span<const double> p) {
    const double z = p[0], e = p[1], k = p[2];
    return std::array<double, 4>{1 - 4 * z - 4 * e - 4 * k, 1 + 4 * z - 4 * e + 4 * k, 1 - 4 * z + 4 * e + 4 * k,
                                 1 + 4 * z + 4 * e - 4 * k};
  };
  fam.feasible.kind = RegionKind::NestedLimits;
  fam.feasible.pieces = {feasible};
  fam.feasible.contains = [bell](std::span<const double> p) {
    const auto w = bell(p);
    return std::all_of(w.begin(), w.end(), [](double x) { return x >= -1e-12; });
  };
  fam.feasible.description = "tetrahedron of Bell-diagonal states";

  NestedRegion sep{"printed-limits",
                   {{"zeta", Bound::constant(0.0), Bound::constant(0.25), {}},
                    {"upsilon", ups_lo, Bound::constant(0.0, true), {}},
                    {"eta",
                     {[](std::span<const double> o) { return (-2.0 + 8.0 * o[0] - o[1]) / 8.0; }, false},
                     {[](std::span<const double> o) { return -o[1] / 8.0; }, false},
                     {}}},
                   to_params,
                   0.25};
  RegionSpec sep_region;
  sep_region.kind = RegionKind::NestedLimits;
  sep_region.pieces = {sep};
  sep_region.contains = [](std::span<const double> p) {
    const double zeta = p[0], eta = p[1], kappa = p[2];
    const double ups = -1.0 + 4.0 * zeta - 4.0 * eta - 4.0 * kappa;
    const double eps = 1e-12;
    return zeta >= -eps && zeta <= 0.25 + eps && ups >= 2.0 * (-1.0 + 4.0 * zeta) - eps && ups <= eps &&
           eta >= (-2.0 + 8.0 * zeta - ups) / 8.0 - eps && eta <= -ups / 8.0 + eps;
  };
  sep_region.description = "zeta in [0,1/4], upsilon in [2(-1+4zeta),0], eta in [(-2+8zeta-upsilon)/8, -upsilon/8]";
  fam.separable = sep_region;
  fam.closed_form_prior = "threeparam_intra";
  return fam;
}

DensityFamily family_diag4() {
  std::vector<ComplexSquareMatrix> gens;
  for (int i = 0; i < 3; ++i) {
    ComplexSquareMatrix g = ComplexSquareMatrix::Zero(4, 4);
    g(i, i) = 1.0;
    g(3, 3) = -1.0;
    gens.push_back(g);
  }
  ComplexSquareMatrix base = ComplexSquareMatrix::Zero(4, 4);
  base(3, 3) = 1.0;
  auto fam = make_affine("diag4", "diagonal 4x4 states diag(x, y, z, 1-x-y-z)", Dims{2, 2}, {"x", "y", "z"}, base,
                         gens);
  fam.feasible = RegionSpec::simplex(3, {"x", "y", "z"});
  fam.separable = fam.feasible;
  fam.closed_form_prior = "diag4";
  return fam;
}

ComplexSquareMatrix rotation_u1(double w) {
  ComplexSquareMatrix u = identity(4);
  u(1, 1) = std::cos(w);
  u(1, 2) = std::sin(w);
  u(2, 1) = -std::sin(w);
  u(2, 2) = std::cos(w);
  return u;
}

double unitary_separable_halfwidth(double x, double y, double z) {
  const double num = 2.0 * std::sqrt(std::max(x - x * x - x * y - x * z, 0.0));
  const double den = std::abs(y - z);
  if (num >= den) return 0.25 * kPi;
  return 0.5 * std::asin(num / den);
}

DensityFamily family_diag4_unitary() {
  DensityFamily fam;
  fam.id = "diag4_unitary";
  fam.description = "U1(w) diag(x, y, z, 1-x-y-z) U1(w)^T";
  fam.dim = 4;
  fam.dims = Dims{2, 2};
  fam.param_names = {"x", "y", "z", "w"};
  auto diag = [](std::span<const double> t) {
    ComplexSquareMatrix d = ComplexSquareMatrix::Zero(4, 4);
    d(0, 0) = t[0];
    d(1, 1) = t[1];
    d(2, 2) = t[2];
    d(3, 3) = 1.0 - t[0] - t[1] - t[2];
    return d;
  };
  fam.rho_matrix = [diag](std::span<const double> t) {
    const ComplexSquareMatrix u = rotation_u1(t[3]);
    return ComplexSquareMatrix(u * diag(t) * u.adjoint());
  };
  fam.drho = [](std::span<const double> t) {
    const double w = t[3];
    const ComplexSquareMatrix u = rotation_u1(w);
    std::vector<ComplexSquareMatrix> out;
    for (int i = 0; i < 3; ++i) {
      ComplexSquareMatrix g = ComplexSquareMatrix::Zero(4, 4);
      g(i, i) = 1.0;
      g(3, 3) = -1.0;
      out.push_back(u * g * u.adjoint());
    }
    ComplexSquareMatrix du = ComplexSquareMatrix::Zero(4, 4);
    du(1, 1) = -std::sin(w);
    du(1, 2) = std::cos(w);
    du(2, 1) = -std::cos(w);
    du(2, 2) = -std::sin(w);
    ComplexSquareMatrix d = ComplexSquareMatrix::Zero(4, 4);
    d(0, 0) = t[0];
    d(1, 1) = t[1];
    d(2, 2) = t[2];
    d(3, 3) = 1.0 - t[0] - t[1] - t[2];
    out.push_back(du * d * u.adjoint() + u * d * du.adjoint());
    return out;
  };

  RegionSpec feasible = RegionSpec::simplex(3, {"x", "y", "z"});
  feasible.kind = RegionKind::Product;
  auto& piece = feasible.pieces[0];
  piece.levels[2].breakpoints = [](std::span<const double> o) { return std::vector<double>{o[1]}; };
  piece.levels.push_back({"w", Bound::constant(0.0), Bound::constant(2.0 * kPi), {}});
  feasible.contains = [](std::span<const double> p) {
    return p[0] >= 0 && p[1] >= 0 && p[2] >= 0 && p[0] + p[1] + p[2] <= 1.0 && p[3] >= 0.0 && p[3] <= 2.0 * kPi;
  };
  feasible.description = "3-simplex in (x,y,z) times w in [0, 2pi]";
  fam.feasible = feasible;

  RegionSpec sep = feasible;
  sep.pieces[0].levels[3] = {
      "w",
      {[](std::span<const double> o) { return -unitary_separable_halfwidth(o[0], o[1], o[2]); }, false},
      {[](std::span<const double> o) { return unitary_separable_halfwidth(o[0], o[1], o[2]); }, false},
      {}};
  sep.contains = [](std::span<const double> p) {
    return std::abs(p[3]) <= unitary_separable_halfwidth(p[0], p[1], p[2]);
  };
  sep.description = "w in [-u, u], u = arcsin(2 sqrt(x(1-x-y-z)) / |y-z|) / 2";
  fam.separable = sep;
  fam.closed_form_prior = "diag4_unitary";
  return fam;
}

DensityFamily family_werner_qutrit() {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(9);
  for (int i = 0; i < 3; ++i) phi(i * 3 + i) = 1.0 / kSqrt3;
  auto fam = make_affine("werner_qutrit", "two-qutrit Werner states (1-e) I/9 + e |Phi><Phi|", Dims{3, 3},
                         {"epsilon"}, identity(9) / 9.0, {projector(phi) - identity(9) / 9.0});
  fam.feasible = RegionSpec::interval(0.0, 1.0, false, true, "epsilon");
  fam.separable = RegionSpec::interval(0.0, 0.25, false, false, "epsilon");
  fam.separable_source = SeparableSource::External;
  fam.prior_mode = PriorMode::ClosedForm;
  fam.closed_form_prior = "werner_qutrit";
  return fam;
}

DensityFamily family_sixlevel() {
  const Complex i{0.0, 1.0};
  ComplexSquareMatrix g = ComplexSquareMatrix::Zero(6, 6);
  g(0, 0) = g(1, 1) = 2.0 * kSqrt3;
  g(2, 2) = -4.0 * kSqrt3;
  g(3, 3) = g(4, 4) = -2.0 * kSqrt3;
  g(5, 5) = 4.0 * kSqrt3;
  g(0, 2) = g(2, 0) = 6.0;
  g(1, 5) = -12.0 * i;
  g(5, 1) = 12.0 * i;
  g(3, 5) = g(5, 3) = -6.0;
  auto fam = make_affine("sixlevel_s1", "one-parameter 6x6 family with fully mixed reductions", Dims{2, 3}, {"nu"},
                         identity(6) / 6.0, {g / 6.0});
  const double lo = quadrature::find_root_bisect([&](double t) { return min_eig_along(fam, t); }, -0.2, 0.0, 1e-14);
  const double hi = quadrature::find_root_bisect([&](double t) { return min_eig_along(fam, t); }, 0.0, 0.2, 1e-14);
  const double sep_hi =
      quadrature::find_root_bisect([&](double t) { return min_pt_eig_along(fam, t); }, 0.01, 0.1, 1e-14);
  fam.feasible = RegionSpec::interval(lo, hi, true, true, "nu");
  fam.separable = RegionSpec::interval(lo, sep_hi, true, false, "nu");
  return fam;
}

DensityFamily family_werner_qubit_qutrit() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
  psi(0) = psi(4) = 1.0 / std::numbers::sqrt2;
  auto fam = make_affine("werner_qubit_qutrit", "qubit-qutrit Werner states (1-e) I/6 + e |psi><psi|", Dims{2, 3},
                         {"epsilon"}, identity(6) / 6.0, {projector(psi) - identity(6) / 6.0});
  fam.feasible = RegionSpec::interval(0.0, 1.0, false, true, "epsilon");
  fam.separable = RegionSpec::interval(0.0, 0.25, false, false, "epsilon");
  fam.prior_mode = PriorMode::ClosedForm;
  fam.closed_form_prior = "werner_qubit_qutrit";
  return fam;
}

DensityFamily family_rhoQ() {
  const Complex i{0.0, 1.0};
  auto sym = [](int r, int c, Complex upper) {
    ComplexSquareMatrix m = ComplexSquareMatrix::Zero(3, 3);
    m(r, c) = upper;
    m(c, r) = std::conj(upper);
    return m;
  };
  ComplexSquareMatrix base = ComplexSquareMatrix::Zero(3, 3);
  base(1, 1) = 1.0;
  ComplexSquareMatrix gv = ComplexSquareMatrix::Zero(3, 3);
  gv(0, 0) = gv(2, 2) = 0.5;
  gv(1, 1) = -1.0;
  ComplexSquareMatrix gz = ComplexSquareMatrix::Zero(3, 3);
  gz(0, 0) = 0.5;
  gz(2, 2) = -0.5;
  // Order v, x, y, z, s, t, u, w.
  std::vector<ComplexSquareMatrix> gens{gv,
                                        sym(0, 2, 0.5),
                                        sym(0, 2, -0.5 * i),
                                        gz,
                                        sym(1, 2, 0.5),
                                        sym(1, 2, -0.5 * i),
                                        sym(0, 1, 0.5),
                                        sym(0, 1, -0.5 * i)};
  auto fam = make_affine("rhoQ", "eight-parameter 3x3 density matrices", std::nullopt,
                         {"v", "x", "y", "z", "s", "t", "u", "w"}, base, gens);
  RegionSpec box;
  box.kind = RegionKind::NestedLimits;
  NestedRegion piece{"box", {}, {}, 1.0};
  piece.levels.push_back({"v", Bound::constant(0.0), Bound::constant(1.0), {}});
  for (const char* name : {"x", "y", "z", "s", "t", "u", "w"}) {
    piece.levels.push_back({name, Bound::constant(-0.4), Bound::constant(0.4), {}});
  }
  box.pieces = {piece};
  auto rho_map = fam.rho_matrix;
  box.contains = [rho_map](std::span<const double> p) { return linalg::min_eigenvalue(rho_map(p)) > 0.0; };
  box.description = "positive definite rho_Q";
  fam.feasible = box;
  return fam;
}

DensityFamily family_rhoP() {
  const auto q = family_rhoQ();
  auto fam = make_affine("rhoP", "rho_Q with s = t = u = w = 0", std::nullopt, {"v", "x", "y", "z"},
                         q.rho_matrix(std::vector<double>(8, 0.0)),
                         [&] {
                           const auto g = q.drho(std::vector<double>(8, 0.0));
                           return std::vector<ComplexSquareMatrix>(g.begin(), g.begin() + 4);
                         }());
  fam.feasible = ball_region("v", true);
  fam.closed_form_prior = "rhoP";
  return fam;
}

DensityFamily family_bloch2() {
  std::vector<ComplexSquareMatrix> gens;
  for (int i = 1; i <= 3; ++i) gens.push_back(0.5 * linalg::pauli(i));
  auto fam = make_affine("bloch2", "single qubit in Bloch coordinates", std::nullopt, {"x", "y", "z"},
                         0.5 * identity(2), gens);
  fam.feasible = ball_region("", false);
  return fam;
}

DensityFamily family_two_qubit_general() {
  std::vector<ComplexSquareMatrix> gens;
  std::vector<std::string> names;
  const ComplexSquareMatrix id2 = identity(2);
  for (int i = 1; i <= 3; ++i) {
    gens.push_back(linalg::kron(linalg::pauli(i), id2));
    names.push_back("a" + std::to_string(i));
  }
  for (int j = 1; j <= 3; ++j) {
    gens.push_back(linalg::kron(id2, linalg::pauli(j)));
    names.push_back("b" + std::to_string(j));
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      gens.push_back(linalg::kron(linalg::pauli(i), linalg::pauli(j)));
      names.push_back("zeta" + std::to_string(i) + std::to_string(j));
    }
  }
  auto fam = make_affine("two_qubit_general", "fifteen-parameter two-qubit states in the Pauli basis", Dims{2, 2},
                         names, 0.25 * identity(4), gens);
  RegionSpec box;
  box.kind = RegionKind::NestedLimits;
  NestedRegion piece{"box", {}, {}, 1.0};
  for (const auto& n : names) piece.levels.push_back({n, Bound::constant(-0.1), Bound::constant(0.1), {}});
  box.pieces = {piece};
  auto rho_map = fam.rho_matrix;
  box.contains = [rho_map](std::span<const double> p) { return linalg::min_eigenvalue(rho_map(p)) > 0.0; };
  box.description = "positive definite two-qubit states";
  fam.feasible = box;
  return fam;
}

const std::vector<DensityFamily>& registry() {
  static const std::vector<DensityFamily> all = [] {
    std::vector<DensityFamily> v{family_s1_equal_intra(),     family_s2_two_pos_one_neg(),  family_s3_equal_inter(),
                                 family_s4_intra_vs_inter(),  family_s5_all_nine(),         family_s6_all_fifteen(),
                                 family_s7_antisym_inter(),   family_werner_qq(),           family_twoparam_intra(),
                                 family_threeparam_intra(),   family_diag4(),               family_diag4_unitary(),
                                 family_werner_qutrit(),      family_sixlevel(),            family_werner_qubit_qutrit(),
                                 family_rhoQ(),               family_rhoP(),                family_bloch2(),
                                 family_two_qubit_general()};
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return v;
  }();
  return all;
}

const DensityFamily& find(std::string_view id) {
  for (const auto& fam : registry()) {
    if (fam.id == id) return fam;
  }
  throw UsageError("unknown family id '" + std::string(id) + "'");
}

}  // namespace bures::families
