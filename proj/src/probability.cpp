#include "bures/probability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "bures/errors.hpp"
#include "bures/linalg.hpp"
#include "bures/metric.hpp"
#include "bures/priors.hpp"
#include "bures/separability.hpp"

namespace bures::probability {

namespace {

using quadrature::IntegralResult;
using quadrature::IntegrandND;
using quadrature::QuadratureConfig;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
/// Upper cutoff for improper one-parameter priors diverging at 1.
constexpr double kImproperCutoff = 0.999999;

void add(IntegralResult& into, const IntegralResult& part) {
  into.value += part.value;
  into.err_estimate += part.err_estimate;
  into.evaluations += part.evaluations;
  into.skipped += part.skipped;
  into.converged = into.converged && part.converged;
}

struct IntervalInfo {
  double a, b;
  bool sa, sb;
};

IntervalInfo interval_info(const RegionSpec& r) {
  const auto [a, b] = r.endpoints();
  const auto& level = r.pieces.at(0).levels.at(0);
  return {a, b, level.lower.singular, level.upper.singular};
}

struct Masses {
  IntegralResult Z;
  IntegralResult S;
};

/// Integrates a one-parameter density piecewise, split at the separable
/// endpoints and at 0, so that Z and S share every piece they have in common.
Masses interval_masses(const std::function<double(double)>& f, const RegionSpec& feasible,
                       const std::optional<RegionSpec>& separable, const QuadratureConfig& cfg,
                       bool cutoff = false) {
  const IntervalInfo fi = interval_info(feasible);
  const double top = cutoff ? std::min(fi.b, kImproperCutoff) : fi.b;
  double s_lo = 0.0, s_hi = -1.0;
  if (separable) std::tie(s_lo, s_hi) = separable->endpoints();

  auto same = [](double p, double q) { return std::abs(p - q) <= 1e-12 * std::max(1.0, std::abs(p)); };
  std::vector<double> cuts{fi.a, top};
  for (double c : {s_lo, s_hi, 0.0}) {
    if (separable || c == 0.0) cuts.push_back(c);
  }
  if (cutoff) {
    for (double d = 0.1; 1.0 - d < top; d *= 0.1) cuts.push_back(1.0 - d);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> kept;
  for (double c : cuts) {
    if (c < fi.a || c > top) continue;
    if (!kept.empty() && same(kept.back(), c)) continue;
    kept.push_back(c);
  }
  if (!same(kept.back(), top)) kept.push_back(top);
  kept.back() = top;

  Masses m;
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    const bool sing_lo = i == 0 && fi.sa;
    const bool sing_hi = i + 2 == kept.size() && fi.sb && !cutoff;
    const IntegralResult part = quadrature::integrate_1d(f, kept[i], kept[i + 1], cfg, sing_lo, sing_hi);
    add(m.Z, part);
    const bool inside = separable && kept[i] >= s_lo - 1e-12 && kept[i + 1] <= s_hi + 1e-12;
    if (inside) add(m.S, part);
  }
  return m;
}

std::function<double(std::span<const double>)> prior_of(const families::DensityFamily& fam) {
  if (fam.prior_mode == families::PriorMode::ClosedForm) {
    const auto& cf = priors::find(fam.closed_form_prior);
    return [&cf](std::span<const double> p) { return cf.density(p); };
  }
  return [&fam](std::span<const double> p) {
    return metric::volume_element(metric::metric_spectral(fam, p, metric::kIntegrationCut)).magnitude;
  };
}

bool improper_prior(const families::DensityFamily& fam) {
  return fam.prior_mode == families::PriorMode::ClosedForm &&
         priors::find(fam.closed_form_prior).kind == priors::PriorKind::Improper;
}

/// The piece with its outermost variable fixed at t.
NestedRegion slice(const NestedRegion& piece, double t) {
  auto prepend = [t](std::span<const double> o) {
    std::vector<double> v;
    v.reserve(o.size() + 1);
    v.push_back(t);
    v.insert(v.end(), o.begin(), o.end());
    return v;
  };
  NestedRegion sub;
  sub.name = piece.name;
  sub.jacobian = piece.jacobian;
  for (std::size_t i = 1; i < piece.levels.size(); ++i) {
    const LimitLevel& l = piece.levels[i];
    LimitLevel s{l.variable, l.lower, l.upper, {}};
    s.lower.at = [prepend, g = l.lower.at](std::span<const double> o) { return g(prepend(o)); };
    s.upper.at = [prepend, g = l.upper.at](std::span<const double> o) { return g(prepend(o)); };
    if (l.breakpoints) {
      s.breakpoints = [prepend, g = l.breakpoints](std::span<const double> o) { return g(prepend(o)); };
    }
    sub.levels.push_back(std::move(s));
  }
  sub.to_params = [prepend, piece](std::span<const double> v) { return piece.params(prepend(v)); };
  return sub;
}

/// Integral over the region restricted to outermost variable = t.
double slice_mass(const IntegrandND& f, const RegionSpec& region, double t, const QuadratureConfig& cfg) {
  double total = 0.0;
  for (const auto& piece : region.pieces) {
    const LimitLevel& top = piece.levels.at(0);
    const double lo = top.lower.at({});
    const double hi = top.upper.at({});
    if (t < lo || t > hi) continue;
    if (piece.levels.size() == 1) {
      const double v[1] = {t};
      total += f(piece.params(v)) * piece.jacobian;
      continue;
    }
    total += quadrature::integrate_piece(f, slice(piece, t), cfg).value;
  }
  return total;
}

std::vector<std::pair<double, double>> marginal_table(const IntegrandND& f, const RegionSpec& region, double Z,
                                                      const std::vector<double>& grid, const QuadratureConfig& cfg) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double t : grid) out.emplace_back(t, slice_mass(f, region, t, cfg) / Z);
  return out;
}

double max_deviation(const std::vector<std::pair<double, double>>& table, const std::function<double(double)>& oracle) {
  double worst = 0.0;
  for (const auto& [t, v] : table) worst = std::max(worst, std::abs(v - oracle(t)));
  return worst;
}

std::vector<double> linspace_inner(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * (i + 0.5) / n);
  return g;
}

/// The 3-simplex in (x, y, z) with the kinks of |y - z| and of the capped
/// arcsin half-width as z-level breakpoints.
RegionSpec unitary_simplex() {
  RegionSpec r = RegionSpec::simplex(3, {"x", "y", "z"});
  r.pieces[0].levels[2].breakpoints = [](std::span<const double> o) {
    const double x = o[0], y = o[1];
    std::vector<double> b{y};
    if (1.0 - 2.0 * y > 0.0) {
      const double d = 2.0 * std::sqrt(x * (1.0 - 2.0 * y));
      b.push_back(y - 2.0 * x - d);
      b.push_back(y - 2.0 * x + d);
    }
    return b;
  };
  // Where those z-kinks enter or leave [0, 1 - x - y].
  r.pieces[0].levels[1].breakpoints = [](std::span<const double> o) {
    const double x = o[0];
    return std::vector<double>{2.0 * std::sqrt(x) - 2.0 * x, 0.5 * (1.0 - x), 0.5};
  };
  return r;
}

Scenario from_family(const std::string& id, std::vector<TargetSpec> targets) {
  const auto& fam = families::find(id);
  Scenario s;
  s.id = id;
  s.description = fam.description;
  s.k = fam.k();
  s.dims = fam.dims ? std::to_string(fam.dims->a) + "x" + std::to_string(fam.dims->b) : std::to_string(fam.dim);
  s.source = fam.prior_mode == families::PriorMode::ClosedForm ? PriorSource::ClosedForm : PriorSource::MetricEngine;
  s.targets = std::move(targets);
  return s;
}

Scenario closed_form(const std::string& id, std::string description, int k, std::vector<TargetSpec> targets) {
  return {id, std::move(description), k, "2x2", PriorSource::ClosedForm, std::move(targets)};
}

std::vector<Scenario> build_scenarios() {
  const double root2m1 = kSqrt2 - 1.0;
  std::vector<Scenario> v{
      from_family("s1_equal_intra",
                  {{"p_sep", 0.5, 1e-8}, {"Z", kPi / 2.0, 1e-9, true}, {"eof_weighted", 0.0441763, 1e-4}}),
      from_family("s2_two_pos_one_neg", {{"p_sep", 0.5, 1e-8}}),
      from_family("s3_equal_inter", {{"p_sep", 0.5 + std::asin(1.0 / 3.0) / kPi, 1e-8}}),
      from_family("s4_intra_vs_inter", {{"p_sep", 0.702675, 1e-5}}),
      from_family("s5_all_nine", {{"p_sep", 1.0, 1e-9}}),
      from_family("s6_all_fifteen", {{"p_sep", 1.0, 1e-9}}),
      from_family("s7_antisym_inter", {{"p_sep", 1.0, 1e-9}}),
      from_family("werner_qq", {{"p_sep", 0.25, 1e-8}}),
      from_family("twoparam_intra",
                  {{"p_sep", root2m1, 1e-6},
                   {"mass_eta_pos", 1.0 - 1.0 / kSqrt2, 1e-6},
                   {"mass_eta_neg", 3.0 / kSqrt2 - 2.0, 1e-6},
                   {"eta_marginal_max_dev", 0.0, 1e-6}}),
      from_family("threeparam_intra",
                  {{"Z", kPi * kPi / 8.0, 1e-6, true},
                   {"p_sep", 2.0 / kPi - 0.5, 1e-5},
                   {"zeta_marginal_max_dev", 0.0, 1e-5}}),
      from_family("diag4", {{"p_sep", 1.0, 1e-9}, {"dirichlet_max_rel_dev", 0.0, 1e-6}}),
      from_family("diag4_unitary",
                  {{"p_sep", 0.112, 2e-3},
                   {"p_sep_arcsin", 0.112, 2e-3},
                   {"method_gap", 0.0, 2e-3},
                   {"w_variation", 0.0, 1e-8},
                   {"printed_prior_max_rel_dev", 0.0, 1e-6}}),
      from_family("werner_qutrit", {{"mass_0_quarter", 1.05879, 1e-3, true}, {"mass_0_cutoff", 9.62137e9, 1e-3, true}}),
      from_family("sixlevel_s1",
                  {{"p_sep", 0.607921, 1e-4},
                   {"feasible_lower", families::kSixLevelFeasibleLowerPrinted, 1e-6},
                   {"feasible_upper", families::kSixLevelFeasibleUpperPrinted, 1e-6}}),
      from_family("werner_qubit_qutrit", {{"ppt_boundary", 0.25, 1e-8}}),
      closed_form("tsallis_q1", "Tsallis q = 1 two-parameter states (printed prior)", 2,
                  {{"p_sep", root2m1, 1e-6}, {"Z", 1.0, 1e-6}}),
      closed_form("tsallis_qhalf", "Tsallis q = 1/2 two-parameter states (printed prior)", 2,
                  {{"p_sep", root2m1, 1e-6}, {"Z", 1.0, 1e-6}}),
      closed_form("rains_smolin", "Rains-Smolin one-parameter entangled states (printed prior)", 1,
                  {{"Z", 1.0, 1e-8}}),
      from_family("rhoP", {{"Z", kPi * kPi / 12.0, 1e-6, true}, {"v_marginal_max_dev", 0.0, 1e-6}}),
      from_family("bloch2", {{"Z", kPi * kPi / 8.0, 1e-6, true}}),
  };
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return v;
}

ScenarioResult run_tsallis(const std::string& id, const RunOptions& opts) {
  const auto& cf = priors::find(id);
  IntegrandND f = [&cf](std::span<const double> p) { return cf.density(p); };
  const IntegralResult Z = quadrature::integrate_region(f, cf.domain, opts.multi_dim);
  const RegionSpec sep = id == "tsallis_q1" ? priors::tsallis_q1_separable() : priors::tsallis_qhalf_separable();
  const IntegralResult S = quadrature::integrate_region(f, sep, opts.multi_dim);
  ScenarioResult r;
  r.family = id;
  r.Z = Z.value;
  r.S = S.value;
  r.p_sep = S.value / Z.value;
  r.err = (S.err_estimate + *r.p_sep * Z.err_estimate) / Z.value;
  r.converged = Z.converged && S.converged;
  return r;
}

ScenarioResult run_rains_smolin(const RunOptions& opts) {
  const auto& cf = priors::find("rains_smolin");
  const double u = priors::rains_smolin_halfwidth();
  const IntegralResult Z = quadrature::integrate_1d(
      [&cf](double x) {
        const double p[1] = {x};
        return cf.density(p);
      },
      -u, u, opts.one_dim, true, true);
  ScenarioResult r;
  r.family = "rains_smolin";
  r.Z = Z.value;
  r.S = 0.0;
  r.p_sep = 0.0;
  r.err = Z.err_estimate;
  r.converged = Z.converged;
  return r;
}

ScenarioResult run_unitary(const RunOptions& opts, std::vector<std::pair<std::string, double>>& extra) {
  const UnitaryFamilyMasses m = unitary_family_masses(opts);
  ScenarioResult r;
  r.family = "diag4_unitary";
  r.Z = m.Z;
  r.S = m.S_ppt;
  r.p_sep = m.S_ppt / m.Z;
  r.err = m.err;
  r.converged = m.converged;
  const double p_arcsin = m.S_arcsin / m.Z;
  extra.emplace_back("p_sep_arcsin", p_arcsin);
  extra.emplace_back("method_gap", std::abs(*r.p_sep - p_arcsin));

  const auto& fam = families::find("diag4_unitary");
  const auto& cf = priors::find("diag4_unitary");
  double w_var = 0.0;
  double printed_dev = 0.0;
  for (const auto& xyz : std::vector<std::array<double, 3>>{
           {0.1, 0.2, 0.3}, {0.25, 0.15, 0.4}, {0.05, 0.5, 0.1}, {0.3, 0.3, 0.05}, {0.2, 0.1, 0.6}}) {
    const double base[4] = {xyz[0], xyz[1], xyz[2], 0.0};
    const double p0 = prior_value(fam, base);
    for (double w : {0.3, 1.1, 2.0, 3.7, 5.9}) {
      const double th[4] = {xyz[0], xyz[1], xyz[2], w};
      const double pw = prior_value(fam, th);
      w_var = std::max(w_var, std::abs(pw - p0) / p0);
      printed_dev = std::max(printed_dev, std::abs(pw / cf.density(th) - 1.0));
    }
  }
  extra.emplace_back("w_variation", w_var);
  extra.emplace_back("printed_prior_max_rel_dev", printed_dev);
  return r;
}

const Scenario* lookup(const std::string& id) {
  for (const auto& s : scenarios()) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

}  // namespace

bool ScenarioResult::passed() const {
  return std::all_of(targets.begin(), targets.end(), [](const Target& t) { return t.pass; });
}

void RunOptions::set(const std::string& key, const std::string& value) {
  auto number = [&]() {
    try {
      std::size_t used = 0;
      const double d = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
      return d;
    } catch (const std::exception&) {
      throw UsageError("option '" + key + "': not a number: '" + value + "'");
    }
  };
  if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
    const double t = number();
    if (!(t >= 0.0)) throw UsageError("option '" + key + "': tolerance must be non-negative");
    tolerances[key.substr(4)] = t;
  } else if (key.rfind("ref.", 0) == 0 && key.size() > 4) {
    references[key.substr(4)] = number();
  } else if (key == "quad.rel_tol_1d") {
    one_dim.rel_tol = number();
  } else if (key == "quad.rel_tol_nd") {
    multi_dim.rel_tol = number();
  } else if (key == "quad.rel_tol_unitary") {
    unitary.rel_tol = number();
  } else if (key == "quad.max_levels_1d" || key == "quad.max_levels_nd") {
    const double n = number();
    if (n != std::floor(n)) throw UsageError("option '" + key + "': integer expected");
    if (key == "quad.max_levels_1d") {
      one_dim.max_levels = static_cast<int>(n);
    } else {
      multi_dim.max_levels = unitary.max_levels = static_cast<int>(n);
    }
  } else if (key == "quad.method") {
    quadrature::Method m;
    if (value == "de") {
      m = quadrature::Method::DoubleExponential;
    } else if (value == "gk") {
      m = quadrature::Method::AdaptiveSubdivision;
    } else {
      throw UsageError("option quad.method: expected 'de' or 'gk', got '" + value + "'");
    }
    one_dim.method = multi_dim.method = unitary.method = m;
  } else {
    throw UsageError("unknown option '" + key + "'");
  }
  one_dim.validate();
  multi_dim.validate();
  unitary.validate();
}

double RunOptions::tolerance_for(const std::string& scenario, const TargetSpec& spec) const {
  if (auto it = tolerances.find(scenario + "." + spec.name); it != tolerances.end()) return it->second;
  if (auto it = tolerances.find(spec.name); it != tolerances.end()) return it->second;
  return spec.relative ? spec.tol * std::abs(spec.paper) : spec.tol;
}

double RunOptions::reference_for(const std::string& scenario, const TargetSpec& spec) const {
  if (auto it = references.find(scenario + "." + spec.name); it != references.end()) return it->second;
  if (auto it = references.find(spec.name); it != references.end()) return it->second;
  return spec.paper;
}

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> all = build_scenarios();
  return all;
}

const Scenario& find_scenario(const std::string& id) {
  if (const Scenario* s = lookup(id)) return *s;
  throw UsageError("unknown scenario '" + id + "'");
}

double prior_value(const families::DensityFamily& fam, std::span<const double> theta) {
  return prior_of(fam)(theta);
}

ScenarioResult run_scenario(const families::DensityFamily& fam, const RunOptions& opts) {
  ScenarioResult r;
  r.family = fam.id;
  const auto f = prior_of(fam);
  const bool improper = improper_prior(fam);
  Masses m;
  if (fam.feasible.is_interval()) {
    auto f1 = [&f](double t) {
      const double p[1] = {t};
      return f(p);
    };
    m = interval_masses(f1, fam.feasible, fam.separable, opts.one_dim, improper);
  } else {
    m.Z = quadrature::integrate_region(f, fam.feasible, opts.multi_dim);
    if (fam.separable) {
      for (const auto& piece : fam.separable->pieces) {
        const IntegralResult part = quadrature::integrate_piece(f, piece, opts.multi_dim);
        add(m.S, part);
        if (fam.separable->pieces.size() > 1) r.values.emplace_back("S[" + piece.name + "]", part.value);
      }
    }
  }
  r.Z = m.Z.value;
  r.S = m.S.value;
  r.converged = m.Z.converged && m.S.converged;
  r.improper = improper;
  if (improper || !fam.separable) {
    r.err = m.Z.err_estimate;
  } else {
    r.p_sep = m.S.value / m.Z.value;
    r.err = (m.S.err_estimate + *r.p_sep * m.Z.err_estimate) / m.Z.value;
  }
  if (improper) {
    r.values.emplace_back("mass_0_quarter", m.S.value);
    r.values.emplace_back("mass_0_cutoff", m.Z.value);
  }
  return r;
}

ScenarioResult run_scenario(const std::string& id, const RunOptions& opts) {
  const Scenario& sc = find_scenario(id);
  std::vector<std::pair<std::string, double>> extra;
  ScenarioResult r;
  if (id == "tsallis_q1" || id == "tsallis_qhalf") {
    r = run_tsallis(id, opts);
  } else if (id == "rains_smolin") {
    r = run_rains_smolin(opts);
  } else if (id == "diag4_unitary") {
    r = run_unitary(opts, extra);
  } else {
    const auto& fam = families::find(id);
    r = run_scenario(fam, opts);
    const IntegrandND f = prior_of(fam);
    if (id == "s1_equal_intra") {
      extra.emplace_back("eof_weighted", eof_weighted(fam, opts));
    } else if (id == "twoparam_intra") {
      for (const auto& [name, value] : r.values) {
        if (name == "S[eta>0]") extra.emplace_back("mass_eta_pos", value / r.Z);
        if (name == "S[eta<0]") extra.emplace_back("mass_eta_neg", value / r.Z);
      }
      const auto table = marginal_table(f, fam.feasible, r.Z, linspace_inner(-0.25, 0.25, 10), opts.multi_dim);
      extra.emplace_back("eta_marginal_max_dev",
                         max_deviation(table, [](double eta) { return kSqrt2 / std::sqrt(1.0 + 4.0 * eta); }));
    } else if (id == "threeparam_intra") {
      const auto table = marginal_table(f, fam.feasible, r.Z, linspace_inner(-0.25, 0.25, 10), opts.multi_dim);
      extra.emplace_back("zeta_marginal_max_dev", max_deviation(table, [](double) { return 2.0; }));
    } else if (id == "diag4") {
      const auto& cf = priors::find("diag4");
      double worst = 0.0;
      for (const auto& p : std::vector<std::array<double, 3>>{
               {0.1, 0.2, 0.3}, {0.25, 0.25, 0.25}, {0.05, 0.6, 0.2}, {0.7, 0.1, 0.1}, {0.01, 0.02, 0.03}}) {
        worst = std::max(worst, std::abs(f(p) / r.Z / cf.density(p) - 1.0));
      }
      extra.emplace_back("dirichlet_max_rel_dev", worst);
    } else if (id == "sixlevel_s1") {
      const auto [lo, hi] = fam.feasible.endpoints();
      extra.emplace_back("feasible_lower", lo);
      extra.emplace_back("feasible_upper", hi);
    } else if (id == "werner_qubit_qutrit") {
      const auto [a, b] = fam.feasible.endpoints();
      auto g = [&fam](double t) { return separability::min_pt_eigenvalue(fam, t); };
      extra.emplace_back("ppt_boundary", quadrature::find_root_bisect(g, a, b - 1e-9, 1e-13));
    } else if (id == "rhoP") {
      const auto table = marginal_table(f, fam.feasible, r.Z, linspace_inner(0.0, 1.0, 10), opts.multi_dim);
      extra.emplace_back("v_marginal_max_dev",
                         max_deviation(table, [](double v) { return 3.0 * v / (4.0 * std::sqrt(1.0 - v)); }));
    }
  }
  for (const auto& [name, value] : extra) {
    if (std::none_of(r.values.begin(), r.values.end(), [&](const auto& e) { return e.first == name; })) {
      r.values.emplace_back(name, value);
    }
  }

  for (const TargetSpec& spec : sc.targets) {
    Target t;
    t.name = spec.name;
    t.paper = opts.reference_for(id, spec);
    t.tol = opts.tolerance_for(id, spec);
    if (spec.name == "p_sep") {
      t.computed = r.p_sep.value_or(std::numeric_limits<double>::quiet_NaN());
    } else if (spec.name == "Z") {
      t.computed = r.Z;
    } else {
      auto it = std::find_if(r.values.begin(), r.values.end(), [&](const auto& e) { return e.first == spec.name; });
      if (it == r.values.end()) throw NumericalFailure("scenario '" + id + "': target '" + spec.name + "' not computed");
      t.computed = it->second;
    }
    t.pass = std::isfinite(t.computed) && t.abs_diff() <= t.tol;
    r.targets.push_back(t);
  }
  return r;
}

std::vector<std::pair<double, double>> marginal(const families::DensityFamily& fam, int var_index,
                                                const std::vector<double>& grid, const RunOptions& opts) {
  if (var_index < 0 || var_index >= fam.k()) throw UsageError("marginal: parameter index out of range");
  if (fam.k() < 2 || fam.k() > 4) throw UsageError("marginal: family must have 2 to 4 parameters");
  for (const auto& piece : fam.feasible.pieces) {
    if (piece.levels.at(0).variable != fam.param_names[static_cast<std::size_t>(var_index)]) {
      throw UsageError("marginal: '" + fam.param_names[static_cast<std::size_t>(var_index)] +
                       "' is not the outermost integration variable of family '" + fam.id + "'");
    }
  }
  const IntegrandND f = prior_of(fam);
  const double Z = quadrature::integrate_region(f, fam.feasible, opts.multi_dim).value;
  return marginal_table(f, fam.feasible, Z, grid, opts.multi_dim);
}

double eof_weighted(const families::DensityFamily& fam, const RunOptions& opts) {
  if (!fam.dims || !(*fam.dims == linalg::Dims{2, 2})) {
    throw UsageError("eof_weighted: family '" + fam.id + "' is not a two-qubit family");
  }
  if (improper_prior(fam)) throw UsageError("eof_weighted: prior of family '" + fam.id + "' is improper");
  const auto f = prior_of(fam);
  IntegrandND weighted = [&](std::span<const double> p) {
    const double e = separability::eof(fam.rho(p));
    return e == 0.0 ? 0.0 : e * f(p);
  };
  if (fam.feasible.is_interval()) {
    auto w1 = [&](double t) {
      const double p[1] = {t};
      return weighted(p);
    };
    auto f1 = [&](double t) {
      const double p[1] = {t};
      return f(p);
    };
    const Masses num = interval_masses(w1, fam.feasible, fam.separable, opts.one_dim);
    const Masses den = interval_masses(f1, fam.feasible, fam.separable, opts.one_dim);
    return num.Z.value / den.Z.value;
  }
  const double num = quadrature::integrate_region(weighted, fam.feasible, opts.multi_dim).value;
  const double den = quadrature::integrate_region(f, fam.feasible, opts.multi_dim).value;
  return num / den;
}

double unitary_ppt_halfwidth(double x, double y, double z, double tol) {
  const auto& fam = families::find("diag4_unitary");
  auto g = [&](double w) {
    const double th[4] = {x, y, z, w};
    return linalg::min_eigenvalue(linalg::partial_transpose(fam.rho_matrix(th), *fam.dims));
  };
  const double cap = kPi / 4.0;
  if (g(cap) >= -separability::kPptTolerance) return cap;
  if (g(0.0) <= 0.0) return 0.0;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, 0.0, cap, [tol](double lo, double hi) { return hi - lo <= tol; }, max_iter);
  return 0.5 * (a + b);
}

UnitaryFamilyMasses unitary_family_masses(const RunOptions& opts) {
  const auto& fam = families::find("diag4_unitary");
  const RegionSpec simplex = unitary_simplex();
  std::map<std::array<double, 3>, double> seen;
  auto at_w0 = [&fam, &seen](std::span<const double> p) {
    const std::array<double, 3> key{p[0], p[1], p[2]};
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    const double th[4] = {p[0], p[1], p[2], 0.0};
    return seen[key] = prior_value(fam, th);
  };
  const IntegralResult Z3 = quadrature::integrate_region(at_w0, simplex, opts.unitary);
  const IntegralResult Sa = quadrature::integrate_region(
      [&](std::span<const double> p) { return at_w0(p) * 2.0 * unitary_ppt_halfwidth(p[0], p[1], p[2]); }, simplex,
      opts.unitary);
  const IntegralResult Sb = quadrature::integrate_region(
      [&](std::span<const double> p) {
        return at_w0(p) * 2.0 * families::unitary_separable_halfwidth(p[0], p[1], p[2]);
      },
      simplex, opts.unitary);
  UnitaryFamilyMasses m;
  m.Z = 2.0 * kPi * Z3.value;
  m.S_ppt = Sa.value;
  m.S_arcsin = Sb.value;
  const double p = m.S_ppt / m.Z;
  m.err = (Sa.err_estimate + p * 2.0 * kPi * Z3.err_estimate) / m.Z;
  m.converged = Z3.converged && Sa.converged && Sb.converged;
  return m;
}

std::vector<std::pair<double, double>> plot_data(const std::string& id, int points, const RunOptions& opts) {
  (void)find_scenario(id);
  if (points < 2) throw UsageError("plot-data: need at least 2 points");
  std::vector<std::pair<double, double>> rows;

  auto one_dim = [&](const std::function<double(double)>& f, IntervalInfo in, double Z) {
    for (int i = 0; i < points; ++i) {
      const double t = i + 1 == points ? in.b : in.a + (in.b - in.a) * i / (points - 1);
      const bool singular = (i == 0 && in.sa) || (i + 1 == points && in.sb);
      rows.emplace_back(t, singular ? std::numeric_limits<double>::infinity() : f(t) / Z);
    }
  };

  if (id == "rains_smolin") {
    const auto& cf = priors::find(id);
    const double u = priors::rains_smolin_halfwidth();
    one_dim([&cf](double x) { const double p[1] = {x}; return cf.density(p); }, {-u, u, true, true}, 1.0);
    return rows;
  }
  if (id == "tsallis_q1" || id == "tsallis_qhalf") {
    const auto& cf = priors::find(id);
    IntegrandND f = [&cf](std::span<const double> p) { return cf.density(p); };
    const auto [lo, hi] = std::pair{0.0, 2.0 * kSqrt2};
    return marginal_table(f, cf.domain, 1.0, linspace_inner(lo, hi, points), opts.multi_dim);
  }
  if (id == "diag4_unitary") {
    const auto& fam = families::find(id);
    IntegrandND f = [&fam](std::span<const double> p) {
      const double th[4] = {p[0], p[1], p[2], 0.0};
      return prior_value(fam, th);
    };
    const RegionSpec simplex = unitary_simplex();
    const double Z3 = quadrature::integrate_region(f, simplex, opts.multi_dim).value;
    return marginal_table(f, simplex, Z3, linspace_inner(0.0, 1.0, points), opts.multi_dim);
  }
  const auto& fam = families::find(id);
  if (fam.feasible.is_interval()) {
    const IntervalInfo in = interval_info(fam.feasible);
    const auto f = prior_of(fam);
    auto f1 = [&f](double t) {
      const double p[1] = {t};
      return f(p);
    };
    const double Z = improper_prior(fam) ? 1.0 : interval_masses(f1, fam.feasible, std::nullopt, opts.one_dim).Z.value;
    one_dim(f1, in, Z);
    return rows;
  }
  const auto& top = fam.feasible.pieces.at(0).levels.at(0);
  const double lo = top.lower.at({});
  const double hi = top.upper.at({});
  const IntegrandND f = prior_of(fam);
  const double Z = quadrature::integrate_region(f, fam.feasible, opts.multi_dim).value;
  return marginal_table(f, fam.feasible, Z, linspace_inner(lo, hi, points), opts.multi_dim);
}

}  // namespace bures::probability
