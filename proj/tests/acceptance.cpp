// One line per acceptance criterion. With an argument N only criterion N runs.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "bures/families.hpp"
#include "bures/linalg.hpp"
#include "bures/metric.hpp"
#include "bures/priors.hpp"
#include "bures/probability.hpp"
#include "bures/quadrature.hpp"

using namespace bures;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  std::string label;
  double computed;
  double expected;
  double tol;
  bool relative;

  [[nodiscard]] double diff() const {
    const double d = std::abs(computed - expected);
    return relative ? d / std::abs(expected) : d;
  }
  [[nodiscard]] bool ok() const { return std::isfinite(computed) && diff() <= tol; }
};

using Checks = std::vector<Check>;

double value_of(const probability::ScenarioResult& r, const std::string& name) {
  if (name == "p_sep") return r.p_sep.value_or(std::nan(""));
  if (name == "Z") return r.Z;
  for (const auto& [n, v] : r.values) {
    if (n == name) return v;
  }
  return std::nan("");
}

double engine_prior(const families::DensityFamily& fam, std::initializer_list<double> theta) {
  const std::vector<double> t(theta);
  return metric::volume_element(metric::metric_spectral(fam, t)).magnitude;
}

Checks p_sep_check(const std::string& id, double expected, double tol) {
  const auto r = probability::run_scenario(id);
  return {{id + " p_sep", value_of(r, "p_sep"), expected, tol, false}};
}

Checks ac1() {
  const auto r = probability::run_scenario("s1_equal_intra");
  return {{"p_sep", value_of(r, "p_sep"), 0.5, 1e-8, false}, {"Z", r.Z, kPi / 2.0, 1e-9, true}};
}

Checks ac2() { return p_sep_check("s2_two_pos_one_neg", 0.5, 1e-8); }
Checks ac3() { return p_sep_check("s3_equal_inter", 0.5 + std::asin(1.0 / 3.0) / kPi, 1e-8); }
Checks ac4() { return p_sep_check("s4_intra_vs_inter", 0.702675, 1e-5); }

Checks ac5() {
  Checks c;
  for (const char* id : {"s5_all_nine", "s6_all_fifteen", "s7_antisym_inter"}) {
    const auto more = p_sep_check(id, 1.0, 1e-9);
    c.insert(c.end(), more.begin(), more.end());
  }
  return c;
}

Checks ac6() {
  const auto r = probability::run_scenario("werner_qq");
  Checks c{{"p_sep", value_of(r, "p_sep"), 0.25, 1e-8, false}};
  const auto& fam = families::find("werner_qq");
  double worst = 0.0;
  for (double e : {0.0, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 0.9, 0.99}) {
    const double printed = 3.0 * std::sqrt(3.0) / (kPi * std::sqrt(4.0 + 8.0 * e - 12.0 * e * e));
    worst = std::max(worst, std::abs(engine_prior(fam, {e}) / r.Z - printed));
  }
  c.push_back({"normalized prior vs printed, max abs diff", worst, 0.0, 1e-7, false});
  return c;
}

Checks ac7() {
  const auto r = probability::run_scenario("twoparam_intra");
  return {{"p_sep", value_of(r, "p_sep"), std::sqrt(2.0) - 1.0, 1e-6, false},
          {"mass eta > 0", value_of(r, "mass_eta_pos"), 1.0 - 1.0 / std::sqrt(2.0), 1e-6, false},
          {"mass eta < 0", value_of(r, "mass_eta_neg"), 3.0 / std::sqrt(2.0) - 2.0, 1e-6, false}};
}

Checks ac8() {
  Checks c;
  for (const char* id : {"tsallis_q1", "tsallis_qhalf"}) {
    const auto r = probability::run_scenario(id);
    c.push_back({std::string(id) + " p_sep", value_of(r, "p_sep"), std::sqrt(2.0) - 1.0, 1e-6, false});
    c.push_back({std::string(id) + " Z", r.Z, 1.0, 1e-6, false});
  }
  return c;
}

Checks ac9() {
  const auto r = probability::run_scenario("threeparam_intra");
  return {{"Z", r.Z, kPi * kPi / 8.0, 1e-6, true},
          {"p_sep", value_of(r, "p_sep"), 2.0 / kPi - 0.5, 1e-5, false},
          {"zeta marginal vs 2, max abs diff", value_of(r, "zeta_marginal_max_dev"), 0.0, 1e-5, false}};
}

Checks ac10() {
  const auto& fam = families::find("diag4");
  const auto Z = quadrature::integrate_region(
      [&](std::span<const double> p) {
        return metric::volume_element(metric::metric_spectral(fam, p, metric::kIntegrationCut)).magnitude;
      },
      fam.feasible, quadrature::QuadratureConfig::multi_dim());
  double worst = 0.0;
  for (const auto& p : std::vector<std::array<double, 3>>{
           {0.1, 0.2, 0.3}, {0.25, 0.25, 0.25}, {0.05, 0.6, 0.2}, {0.7, 0.1, 0.1}, {0.01, 0.02, 0.03}}) {
    const double dirichlet = 1.0 / (kPi * kPi * std::sqrt(p[0] * p[1] * p[2] * (1.0 - p[0] - p[1] - p[2])));
    const double normalized = engine_prior(fam, {p[0], p[1], p[2]}) / Z.value;
    worst = std::max(worst, std::abs(normalized / dirichlet - 1.0));
  }
  return {{"normalized engine prior vs Dirichlet(1/2), max rel diff", worst, 0.0, 1e-6, false}};
}

Checks ac11() {
  const auto r = probability::run_scenario("diag4_unitary");
  const auto& fam = families::find("diag4_unitary");
  double w_var = 0.0;
  double printed_dev = 0.0;
  for (const auto& p : std::vector<std::array<double, 3>>{{0.1, 0.2, 0.3}, {0.3, 0.05, 0.25}, {0.15, 0.4, 0.1}}) {
    const double base = engine_prior(fam, {p[0], p[1], p[2], 0.0});
    for (double w : {0.4, 1.3, 2.9, 4.4, 6.0}) {
      const double g = engine_prior(fam, {p[0], p[1], p[2], w});
      w_var = std::max(w_var, std::abs(g - base) / base);
      const double printed = std::abs(p[1] - p[2]) /
                             (8.0 * std::sqrt(p[0] * p[1] * p[2] * (p[1] + p[2]) * (1.0 - p[0] - p[1] - p[2])));
      printed_dev = std::max(printed_dev, std::abs(g / printed - 1.0));
    }
  }
  return {{"p_sep (PPT arc)", value_of(r, "p_sep"), 0.112, 2e-3, false},
          {"p_sep (arcsin arc)", value_of(r, "p_sep_arcsin"), 0.112, 2e-3, false},
          {"prior variation over w, max rel", w_var, 0.0, 1e-8, false},
          {"engine vs printed prior, max rel diff", printed_dev, 0.0, 1e-6, false}};
}

Checks ac12() {
  const auto r = probability::run_scenario("werner_qutrit");
  const auto& fam = families::find("werner_qutrit");
  const auto& printed = priors::find("werner_qutrit");
  double worst = 0.0;
  for (double e : {0.05, 0.1, 0.25, 0.5, 0.8}) {
    worst = std::max(worst, std::abs(engine_prior(fam, {e}) / printed.eval({e}) - 1.0));
  }
  return {{"integral over [0, 1/4]", value_of(r, "mass_0_quarter"), 1.05879, 1e-3, true},
          {"integral over [0, .999999]", value_of(r, "mass_0_cutoff"), 9.62137e9, 1e-3, true},
          {"engine vs printed prior, max rel diff", worst, 0.0, 1e-6, false}};
}

Checks ac13() {
  const auto r = probability::run_scenario("sixlevel_s1");
  return {{"feasible lower endpoint", value_of(r, "feasible_lower"), -0.0546647, 1e-6, false},
          {"feasible upper endpoint", value_of(r, "feasible_upper"), 0.10277, 1e-6, false},
          {"p_sep", value_of(r, "p_sep"), 0.607921, 1e-4, false}};
}

Checks ac14() {
  const auto r = probability::run_scenario("werner_qubit_qutrit");
  const auto& fam = families::find("werner_qubit_qutrit");
  const auto& printed = priors::find("werner_qubit_qutrit");
  double worst = 0.0;
  for (double e : {0.05, 0.1, 0.25, 0.5, 0.8}) {
    worst = std::max(worst, std::abs(engine_prior(fam, {e}) / printed.eval({e}) - 1.0));
  }
  return {{"engine vs printed prior, max rel diff", worst, 0.0, 1e-6, false},
          {"PPT boundary", value_of(r, "ppt_boundary"), 0.25, 1e-8, false}};
}

Checks ac15() {
  const std::vector<std::array<double, 4>> points{
      {0.5, 0.1, 0.2, 0.1}, {0.8, -0.3, 0.2, 0.4}, {0.3, 0.05, -0.1, 0.2}, {0.95, 0.5, 0.5, -0.3}};
  const auto& eq3 = priors::find("conditioned_rhoQ");
  const auto& eq5 = priors::find("rhoP");
  double block = 0.0, full = 0.0, restricted = 0.0, complementary = 0.0, variants = 0.0, eigen = 0.0;
  for (const auto& p : points) {
    const auto [v, x, y, z] = p;
    const auto g = metric::conditioned_metric_rhoQ(v, x, y, z);
    const auto closed = metric::restricted_block_closed_form(v, x, y, z);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        block = std::max(block, std::abs(g(i, j) - closed(i, j)) / std::max(1.0, std::abs(closed(i, j))));
      }
    }
    full = std::max(full, std::abs(std::sqrt(std::abs(g.determinant())) / eq3.eval({v, x, y, z}) - 1.0));
    const metric::MetricTensor top = g.topLeftCorner(4, 4);
    const metric::MetricTensor bottom = g.bottomRightCorner(4, 4);
    restricted = std::max(restricted, std::abs(std::sqrt(top.determinant()) / eq5.eval({v, x, y, z}) - 1.0));
    complementary = std::max(complementary, std::abs(std::sqrt(std::abs(bottom.determinant())) /
                                                         std::abs(priors::complementary_factor(v, x, y, z)) -
                                                     1.0));
    const double d6 = closed.determinant();
    const double d7 = metric::restricted_block_sign_flipped(v, x, y, z).determinant();
    variants = std::max(variants, std::abs(d7 / d6 - 1.0));
    const double r = std::sqrt(x * x + y * y + z * z);
    const auto pairs = metric::eigen_pairs_check(v, r);
    for (int i = 0; i < 8; ++i) {
      eigen = std::max(eigen, std::abs(pairs.numeric[i] / pairs.printed[i] - 1.0));
    }
  }
  const auto q = priors::marginals()[1].density;
  const auto [vmin, neg_q] =
      boost::math::tools::brent_find_minima([&](double v) { return -q(v); }, 0.3, 0.9, 40);
  (void)neg_q;
  const auto p = priors::marginals()[0].density;
  const auto mass = quadrature::integrate_1d(p, 0.0, 1.0, quadrature::QuadratureConfig::one_dim(), false, true);
  return {{"conditioned tensor (v,x,y,z) block vs closed form, max diff", block, 0.0, 1e-9, false},
          {"sqrt|det| of the 8x8 tensor vs closed form, max rel diff", full, 0.0, 1e-8, false},
          {"sqrt det of the restricted block vs closed form, max rel diff", restricted, 0.0, 1e-8, false},
          {"sqrt|det| of the complementary block vs |f|, max rel diff", complementary, 0.0, 1e-8, false},
          {"determinants of the two block variants, max rel diff", variants, 0.0, 1e-9, false},
          {"tensor eigenvalues vs closed forms, max rel diff", eigen, 0.0, 1e-8, false},
          {"argmin of -q(v) (inside [.61803, .61804])", vmin, 0.618035, 5e-6, false},
          {"integral of p(v)", mass.value, 1.0, 1e-9, true}};
}

Checks ac16() {
  std::mt19937_64 rng(20240607);
  auto worst_rel = [](const metric::MetricTensor& a, const metric::MetricTensor& b) {
    const metric::MetricTensor d = a - b;
    double w = 0.0;
    for (int i = 0; i < d.rows(); ++i) {
      for (int j = 0; j < d.cols(); ++j) w = std::max(w, std::abs(d(i, j)) / std::abs(b(i, j)));
    }
    return w;
  };
  const auto& qubit = families::find("bloch2");
  const auto& qutrit = families::find("rhoQ");
  double w2 = 0.0;
  double w3 = 0.0;
  for (int n = 0; n < 20; ++n) {
    const auto t2 = qubit.feasible.sample(rng, 0.1);
    w2 = std::max(w2, worst_rel(metric::metric_spectral(qubit, t2), metric::metric_dittmann2(qubit, t2)));
    const auto t3 = qutrit.feasible.sample(rng, 0.1);
    w3 = std::max(w3, worst_rel(metric::metric_spectral(qutrit, t3), metric::metric_dittmann3(qutrit, t3)));
  }

  // d^2(rho(t), rho(t + h u)) - h^2 G(u, u) should shrink like h^3.
  // The expansion only holds for steps well below the smallest eigenvalue.
  std::vector<double> t = qutrit.feasible.sample(rng, 0.2);
  while (linalg::min_eigenvalue(qutrit.rho_matrix(t)) < 0.02) t = qutrit.feasible.sample(rng, 0.2);
  std::normal_distribution<double> normal;
  std::vector<double> u(t.size());
  for (double& e : u) e = normal(rng);
  const auto g = metric::metric_spectral(qutrit, t);
  double quad = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) quad += g(i, j) * u[i] * u[j];
  }
  auto residual = [&](double h) {
    std::vector<double> s(t);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += h * u[i];
    return std::abs(metric::bures_distance_sq(qutrit.rho_matrix(t), qutrit.rho_matrix(s)) - h * h * quad);
  };
  const double h = 1e-4;
  const double order = std::log2(residual(h) / residual(h / 2.0));
  return {{"spectral vs 2x2 closed form, 20 points, max entry rel diff", w2, 0.0, 1e-8, false},
          {"spectral vs 3x3 closed form, 20 points, max entry rel diff", w3, 0.0, 1e-8, false},
          {"fidelity residual decay order", order, 3.0, 0.25, false}};
}

Checks ac17() {
  const auto r = probability::run_scenario("s1_equal_intra");
  return {{"prior-weighted mean EoF", value_of(r, "eof_weighted"), 0.0441763, 1e-4, false}};
}

bool report(int n, const std::function<Checks()>& run) {
  Checks checks;
  std::string error;
  try {
    checks = run();
  } catch (const std::exception& e) {
    error = e.what();
  }
  bool ok = error.empty();
  for (const auto& c : checks) ok = ok && c.ok();
  std::printf("AC%-2d %s\n", n, ok ? "PASS" : "FAIL");
  if (!error.empty()) std::printf("       error: %s\n", error.c_str());
  for (const auto& c : checks) {
    std::printf("       [%s] %-62s computed %-20.13g expected %-14.10g %s %.2g (tol %.2g)\n", c.ok() ? "ok" : "XX",
                c.label.c_str(), c.computed, c.expected, c.relative ? "rel" : "abs", c.diff(), c.tol);
  }
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Checks()>> criteria{ac1, ac2,  ac3,  ac4,  ac5,  ac6,  ac7,  ac8, ac9,
                                                      ac10, ac11, ac12, ac13, ac14, ac15, ac16, ac17};
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  bool all = true;
  for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
    if (only != 0 && n != only) continue;
    all = report(n, criteria[static_cast<std::size_t>(n - 1)]) && all;
  }
  return all ? 0 : 1;
}
