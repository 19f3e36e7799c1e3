#include "bures/priors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bures/errors.hpp"

namespace bures::priors {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

double root(double radicand, const char* what) {
  if (!(radicand >= 0.0)) throw DomainError(std::string(what) + ": negative radicand");
  return std::sqrt(radicand);
}

RegionSpec ball4() {
  RegionSpec r;
  r.kind = RegionKind::NestedLimits;
  r.contains = [](std::span<const double> p) {
    return p[0] > 0.0 && p[0] < 1.0 && p[1] * p[1] + p[2] * p[2] + p[3] * p[3] < p[0] * p[0];
  };
  r.description = "x^2+y^2+z^2 < v^2, 0 < v < 1";
  return r;
}

RegionSpec open_interval(double a, double b, bool sa, bool sb) {
  RegionSpec r = RegionSpec::interval(a, b, sa, sb);
  r.contains = [a, b](std::span<const double> p) { return p.size() == 1 && p[0] >= a && p[0] <= b; };
  return r;
}

double poly(std::initializer_list<double> c, double x) {
  double acc = 0.0;
  for (auto it = std::rbegin(c); it != std::rend(c); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<ClosedFormPrior> build() {
  std::vector<ClosedFormPrior> c;

  c.push_back({"conditioned_rhoQ",
               "|1/(64 v sqrt(1-v) sqrt(v^2-x^2-y^2-z^2) (x^2+y^2+z^2-(v-2)^2))|",
               {"v", "x", "y", "z"},
               [](std::span<const double> p) {
                 const double v = p[0];
                 const double r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
                 return std::abs(1.0 / (64.0 * v * root(1.0 - v, "conditioned_rhoQ") *
                                        root(v * v - r2, "conditioned_rhoQ") * (r2 - (v - 2.0) * (v - 2.0))));
               },
               ball4(),
               std::nullopt,
               PriorKind::Improper});

  c.push_back({"rhoP",
               "1/(16 v sqrt(1-v) sqrt(v^2-x^2-y^2-z^2))",
               {"v", "x", "y", "z"},
               [](std::span<const double> p) {
                 const double v = p[0];
                 const double r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
                 return 1.0 / (16.0 * v * root(1.0 - v, "rhoP") * root(v * v - r2, "rhoP"));
               },
               ball4(),
               kPi * kPi / 12.0,
               PriorKind::Unnormalized});

  {
    RegionSpec dom;
    dom.kind = RegionKind::NestedLimits;
    dom.contains = [](std::span<const double> p) {
      return p[0] > 0.0 && p[0] < 1.0 && p[1] >= 0.0 && p[1] < p[0] && p[2] >= 0.0 && p[2] <= kPi && p[3] >= 0.0 &&
             p[3] <= 2.0 * kPi;
    };
    dom.description = "0 < v < 1, 0 <= r < v, spherical angles";
    c.push_back({"rhoP_spherical",
                 "3 r^2 sin(theta)/(4 pi^2 v sqrt(1-v) sqrt(v^2-r^2))",
                 {"v", "r", "theta", "phi"},
                 [](std::span<const double> p) {
                   const double v = p[0], r = p[1];
                   return 3.0 * r * r * std::sin(p[2]) /
                          (4.0 * kPi * kPi * v * root(1.0 - v, "rhoP_spherical") * root(v * v - r * r, "rhoP_spherical"));
                 },
                 dom,
                 1.0,
                 PriorKind::Normalized});
  }

  c.push_back({"s1_conditioned_after",
               "32768/((1-4z)^3 (1+4z)^{9/2} sqrt(1-12z))",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 32768.0 / (std::pow(1.0 - 4.0 * z, 3) * std::pow(root(1.0 + 4.0 * z, "s1_conditioned_after"), 9) *
                                   root(1.0 - 12.0 * z, "s1_conditioned_after"));
               },
               open_interval(-0.25, 1.0 / 12, true, true),
               std::nullopt,
               PriorKind::Improper});

  c.push_back({"s1_equal_intra",
               "2 sqrt(3)/sqrt(1-8z-48z^2)",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 2.0 * kSqrt3 / root(1.0 - 8.0 * z - 48.0 * z * z, "s1_equal_intra");
               },
               open_interval(-0.25, 1.0 / 12, true, true),
               kPi / 2.0,
               PriorKind::Unnormalized});

  c.push_back({"s2_two_pos_one_neg",
               "4 sqrt(3)/(pi sqrt(1+8z-48z^2))",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 4.0 * kSqrt3 / (kPi * root(1.0 + 8.0 * z - 48.0 * z * z, "s2_two_pos_one_neg"));
               },
               open_interval(-1.0 / 12, 0.25, true, true),
               1.0,
               PriorKind::Normalized});

  c.push_back({"s3_equal_inter",
               "8 sqrt(2)/(pi sqrt(1-8z-128z^2))",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 8.0 * kSqrt2 / (kPi * root(1.0 - 8.0 * z - 128.0 * z * z, "s3_equal_inter"));
               },
               open_interval(-0.125, 1.0 / 16, true, true),
               1.0,
               PriorKind::Normalized});

  c.push_back({"s4_intra_vs_inter",
               "sqrt(12 (3-20z)/((4z-1)(12z-1)(1+20z)))",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return root(12.0 * (3.0 - 20.0 * z) / ((4.0 * z - 1.0) * (12.0 * z - 1.0) * (1.0 + 20.0 * z)),
                             "s4_intra_vs_inter");
               },
               open_interval(-1.0 / 20, 1.0 / 12, true, true),
               std::nullopt,
               PriorKind::Unnormalized});

  c.push_back({"s5_all_nine",
               "12/(pi sqrt(1-144z^2))",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 12.0 / (kPi * root(1.0 - 144.0 * z * z, "s5_all_nine"));
               },
               open_interval(-1.0 / 12, 1.0 / 12, true, true),
               1.0,
               PriorKind::Normalized});

  c.push_back({"s6_all_fifteen",
               "2 sqrt(3-20z)/sqrt(1+12z-336z^2+576z^3)",
               {"zeta"},
               [](std::span<const double> p) {
                 const double z = p[0];
                 return 2.0 * root(3.0 - 20.0 * z, "s6_all_fifteen") /
                        root(1.0 + 12.0 * z - 336.0 * z * z + 576.0 * z * z * z, "s6_all_fifteen");
               },
               open_interval(-1.0 / (4.0 * (3.0 + 2.0 * kSqrt3)), 1.0 / 12, true, true),
               std::nullopt,
               PriorKind::Unnormalized});

  const double u = rains_smolin_halfwidth();
  c.push_back({"rains_smolin",
               "175/(pi sqrt(807599-30625x^2))",
               {"x"},
               [](std::span<const double> p) {
                 return 175.0 / (kPi * root(807599.0 - 30625.0 * p[0] * p[0], "rains_smolin"));
               },
               open_interval(-u, u, true, true),
               1.0,
               PriorKind::Normalized});

  c.push_back({"werner_qq",
               "3 sqrt(3)/(pi sqrt(4+8e-12e^2))",
               {"epsilon"},
               [](std::span<const double> p) {
                 const double e = p[0];
                 return 3.0 * kSqrt3 / (kPi * root(4.0 + 8.0 * e - 12.0 * e * e, "werner_qq"));
               },
               open_interval(0.0, 1.0, false, true),
               1.0,
               PriorKind::Normalized});

  {
    RegionSpec dom;
    dom.kind = RegionKind::NestedLimits;
    dom.contains = [](std::span<const double> p) {
      return 1.0 + 4.0 * p[1] >= 0.0 && std::abs(8.0 * p[0]) <= 1.0 - 4.0 * p[1];
    };
    dom.description = "triangle in (zeta, eta)";
    c.push_back({"twoparam_intra",
                 "8 sqrt(2)/(pi sqrt((1+4eta)((1-4eta)^2-64zeta^2)))",
                 {"zeta", "eta"},
                 [](std::span<const double> p) {
                   const double z = p[0], e = p[1];
                   return 8.0 * kSqrt2 /
                          (kPi * root((1.0 + 4.0 * e) * ((1.0 - 4.0 * e) * (1.0 - 4.0 * e) - 64.0 * z * z),
                                      "twoparam_intra"));
                 },
                 dom,
                 1.0,
                 PriorKind::Normalized});
  }

  c.push_back({"tsallis_q1_printed",
               "1/(pi sqrt(8-s) sqrt(s-8b^4))",
               {"b", "s"},
               [](std::span<const double> p) { return tsallis_q1_prior(p[0], p[1]); },
               tsallis_domain(),
               std::nullopt,
               PriorKind::Unnormalized});
  c.push_back({"tsallis_q1",
               "1/(pi sqrt(8-s) sqrt(s^2-8b^2))",
               {"b", "s"},
               [](std::span<const double> p) { return tsallis_q1_prior_normalized(p[0], p[1]); },
               tsallis_domain(),
               1.0,
               PriorKind::Normalized});
  c.push_back({"tsallis_qhalf",
               "32/(pi (32+4b^2+(s-8)s)^{3/2})",
               {"b", "s"},
               [](std::span<const double> p) { return tsallis_qhalf_prior(p[0], p[1]); },
               tsallis_domain(),
               1.0,
               PriorKind::Normalized});

  {
    RegionSpec dom;
    dom.kind = RegionKind::NestedLimits;
    dom.contains = [](std::span<const double> p) {
      const double z = p[0], e = p[1], k = p[2];
      return 1 - 4 * z - 4 * e - 4 * k >= 0 && 1 + 4 * z - 4 * e + 4 * k >= 0 && 1 - 4 * z + 4 * e + 4 * k >= 0 &&
             1 + 4 * z + 4 * e - 4 * k >= 0;
    };
    dom.description = "tetrahedron of Bell-diagonal states";
    c.push_back({"threeparam_intra",
                 "8/sqrt((-1+4z-4e-4k)(1+4z+4e-4k)(1+4z-4e+4k)(-1+4z+4e+4k))",
                 {"zeta", "eta", "kappa"},
                 [](std::span<const double> p) {
                   const double z = p[0], e = p[1], k = p[2];
                   const double prod = (-1 + 4 * z - 4 * e - 4 * k) * (1 + 4 * z + 4 * e - 4 * k) *
                                       (1 + 4 * z - 4 * e + 4 * k) * (-1 + 4 * z + 4 * e + 4 * k);
                   return 8.0 / root(prod, "threeparam_intra");
                 },
                 dom,
                 kPi * kPi / 8.0,
                 PriorKind::Unnormalized});
  }

  c.push_back({"diag4",
               "1/(pi^2 sqrt(x y z (1-x-y-z)))",
               {"x", "y", "z"},
               [](std::span<const double> p) {
                 const double t = 1.0 - p[0] - p[1] - p[2];
                 return 1.0 / (kPi * kPi * root(p[0] * p[1] * p[2] * t, "diag4"));
               },
               RegionSpec::simplex(3, {"x", "y", "z"}),
               1.0,
               PriorKind::Normalized});

  {
    RegionSpec dom = RegionSpec::simplex(3, {"x", "y", "z"});
    dom.kind = RegionKind::Product;
    dom.pieces[0].levels.push_back({"w", Bound::constant(0.0), Bound::constant(2.0 * kPi), {}});
    dom.contains = [](std::span<const double> p) {
      return p[0] >= 0 && p[1] >= 0 && p[2] >= 0 && p[0] + p[1] + p[2] <= 1.0 && p[3] >= 0.0 && p[3] <= 2.0 * kPi;
    };
    dom.description = "3-simplex times [0, 2pi]";
    c.push_back({"diag4_unitary",
                 "|y-z|/(8 sqrt(x y z (y+z)(1-x-y-z)))",
                 {"x", "y", "z", "w"},
                 [](std::span<const double> p) {
                   const double x = p[0], y = p[1], z = p[2];
                   const double t = 1.0 - x - y - z;
                   return std::abs(y - z) / (8.0 * root(x * y * z * (y + z) * t, "diag4_unitary"));
                 },
                 dom,
                 kPi * kPi / 3.0,
                 PriorKind::Unnormalized});
  }

  c.push_back({"werner_qutrit",
               "sqrt(-16(2+7e)(496+14384e+...+14859999e^8) / (3(e-1)^5(1+8e)(31+161e)(31+603e+3993e^2+8981e^3)))",
               {"epsilon"},
               [](std::span<const double> p) {
                 const double e = p[0];
                 const double num = -16.0 * (2.0 + 7.0 * e) *
                                    poly({496.0, 14384.0, 179472.0, 1269568.0, 5676488.0, 16753596.0, 31419646.0,
                                          31863023.0, 14859999.0},
                                         e);
                 const double den = 3.0 * std::pow(e - 1.0, 5) * (1.0 + 8.0 * e) * (31.0 + 161.0 * e) *
                                    poly({31.0, 603.0, 3993.0, 8981.0}, e);
                 return root(num / den, "werner_qutrit");
               },
               open_interval(0.0, 1.0, false, true),
               std::nullopt,
               PriorKind::Improper});

  c.push_back({"werner_qubit_qutrit",
               "sqrt(10(1+2e)(26+286e+1236e^2+2506e^3+2021e^4) / ((e-1)^2(1+5e)(13+32e)(13+126e+429e^2+512e^3)))",
               {"epsilon"},
               [](std::span<const double> p) {
                 const double e = p[0];
                 const double num = 10.0 * (1.0 + 2.0 * e) * poly({26.0, 286.0, 1236.0, 2506.0, 2021.0}, e);
                 const double den = (e - 1.0) * (e - 1.0) * (1.0 + 5.0 * e) * (13.0 + 32.0 * e) *
                                    poly({13.0, 126.0, 429.0, 512.0}, e);
                 return root(num / den, "werner_qubit_qutrit");
               },
               open_interval(0.0, 1.0, false, true),
               std::nullopt,
               PriorKind::Improper});

  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return c;
}

}  // namespace

double ClosedFormPrior::eval(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != arity()) throw UsageError("prior '" + id + "': wrong argument count");
  if (!domain.member(theta)) throw DomainError("prior '" + id + "': point outside the domain");
  const double v = density(theta);
  if (std::isnan(v)) throw DomainError("prior '" + id + "': undefined value");
  return v;
}

const std::vector<ClosedFormPrior>& catalog() {
  static const std::vector<ClosedFormPrior> all = build();
  return all;
}

const ClosedFormPrior& find(const std::string& id) {
  for (const auto& p : catalog()) {
    if (p.id == id) return p;
  }
  throw UsageError("unknown prior id '" + id + "'");
}

double tsallis_q1_prior(double b, double s2) {
  return 1.0 / (kPi * root(8.0 - s2, "tsallis_q1") * root(s2 - 8.0 * std::pow(b, 4), "tsallis_q1"));
}

double tsallis_q1_prior_normalized(double b, double s2) {
  return 1.0 / (kPi * root(8.0 - s2, "tsallis_q1") * root(s2 * s2 - 8.0 * b * b, "tsallis_q1"));
}

double tsallis_qhalf_prior(double b, double s2) {
  const double base = 32.0 + 4.0 * b * b + (s2 - 8.0) * s2;
  if (!(base > 0.0)) throw DomainError("tsallis_qhalf: non-positive base");
  return 32.0 / (kPi * std::pow(base, 1.5));
}

namespace {

RegionSpec tsallis_region(std::string name, double b_hi, Bound upper, std::function<bool(double, double)> extra) {
  RegionSpec r;
  r.kind = RegionKind::NestedLimits;
  NestedRegion piece;
  piece.name = std::move(name);
  piece.levels.push_back({"b", Bound::constant(0.0), Bound::constant(b_hi), {}});
  piece.levels.push_back(
      {"s", {[](std::span<const double> o) { return 2.0 * kSqrt2 * o[0]; }, true}, std::move(upper), {}});
  r.pieces.push_back(std::move(piece));
  r.contains = [b_hi, extra](std::span<const double> p) {
    const double b = p[0], s = p[1];
    return p.size() == 2 && b >= 0.0 && b <= b_hi && s >= 2.0 * kSqrt2 * b && s <= 8.0 && extra(b, s);
  };
  return r;
}

double qhalf_sep_upper(double b) { return 8.0 + 2.0 * kSqrt2 * b - 2.0 * kSqrt2 * std::sqrt(b * (4.0 * kSqrt2 + b)); }

}  // namespace

RegionSpec tsallis_domain() {
  auto r = tsallis_region("feasible", 2.0 * kSqrt2, Bound::constant(8.0, true), [](double, double) { return true; });
  r.description = "0 <= b <= 2 sqrt 2, 2 sqrt 2 b <= s <= 8";
  return r;
}

RegionSpec tsallis_q1_separable() {
  auto r = tsallis_region("separable", kSqrt2,
                          {[](std::span<const double> o) { return 8.0 - 2.0 * kSqrt2 * o[0]; }, false},
                          [](double b, double s) { return s <= 8.0 - 2.0 * kSqrt2 * b; });
  r.description = "s <= 8 - 2 sqrt 2 b, b <= sqrt 2";
  return r;
}

RegionSpec tsallis_qhalf_separable() {
  auto r = tsallis_region("separable", 4.0 - 2.0 * kSqrt2,
                          {[](std::span<const double> o) { return qhalf_sep_upper(o[0]); }, false},
                          [](double b, double s) { return s <= qhalf_sep_upper(b); });
  r.description = "s <= 8 + 2 sqrt 2 b - 2 sqrt 2 sqrt(b(4 sqrt 2 + b)), b <= 4 - 2 sqrt 2";
  return r;
}

double complementary_factor(double v, double x, double y, double z) {
  return 1.0 / (4.0 * (x * x + y * y + z * z - (v - 2.0) * (v - 2.0)));
}

double rains_smolin_halfwidth() { return std::sqrt(807599.0) / 175.0; }

std::vector<MarginalForm> marginals() {
  return {
      {"p_v", [](double v) { return 3.0 * v / (4.0 * std::sqrt(1.0 - v)); }, 0.0, 1.0, false},
      {"q_v",
       [](double v) { return kPi * kPi / (64.0 * v) * (-1.0 - 2.0 / std::sqrt(1.0 - v) + 1.0 / (v - 1.0)); },
       0.0, 1.0, true},
      {"twoparam_eta", [](double eta) { return kSqrt2 / std::sqrt(1.0 + 4.0 * eta); }, -0.25, 0.25, false},
  };
}

}  // namespace bures::priors
