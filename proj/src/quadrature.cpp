#include "bures/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "bures/errors.hpp"

namespace bures::quadrature {

namespace {

constexpr double kPi = std::numbers::pi;

/// Integrand value with the error already carried by it (nonzero when the
/// value is itself an inner integral).
struct Sample {
  double value = 0.0;
  double err = 0.0;
  Sample operator*(double w) const { return {value * w, err * w}; }
  Sample& operator+=(const Sample& o) {
    value += o.value;
    err += std::abs(o.err);
    return *this;
  }
  Sample operator+(const Sample& o) const { return Sample(*this) += o; }
};

/// Integrand on a rule interval [lo, hi], receiving the node together with its
/// exact distances to both ends. It reports through `orig_gap` how far the
/// mapped point lies from the nearest end of the original interval.
using NodeFn = std::function<Sample(double x, double from_lo, double from_hi, double& orig_gap)>;

/// Absolute gap, in units of the original interval's scale, under which a
/// failing evaluation is attributed to rounding onto the boundary.
constexpr double kAbsoluteEdge = 1e-12;

/// Nodes closer than this (times the scale) to a regular or substituted end
/// reuse the value at that distance. The transformed integrand is smooth
/// there, so the error is O(gap / len) while rounding in the parameters would
/// otherwise cost O(eps / sqrt(gap * len)).
constexpr double kClampGap = 1e-11;

struct Tally {
  long evaluations = 0;
  long skipped = 0;
};

/// Evaluates at a node; non-finite or undefined values are dropped only
/// within `near` of an endpoint.
Sample guarded(const NodeFn& g, double x, double dl, double dh, double near, double scale, Tally& tally) {
  ++tally.evaluations;
  double orig_gap = std::numeric_limits<double>::infinity();
  Sample v;
  auto at_edge = [&] { return std::min(dl, dh) <= near || orig_gap <= kAbsoluteEdge * scale; };
  try {
    v = g(x, dl, dh, orig_gap);
  } catch (const DomainError&) {
    if (!at_edge()) throw;
    ++tally.skipped;
    return {};
  } catch (const NumericalFailure&) {
    // An inner integral collapsing onto a rank-deficient face.
    if (!at_edge()) throw;
    ++tally.skipped;
    return {};
  }
  if (!std::isfinite(v.value) || !std::isfinite(v.err)) {
    if (!at_edge()) {
      throw NumericalFailure("quadrature: integrand value " + std::to_string(v.value) + " at interior node " +
                             std::to_string(x) + " (distances " + std::to_string(dl) + ", " + std::to_string(dh) + ")");
    }
    ++tally.skipped;
    return {};
  }
  return v;
}

IntegralResult tanh_sinh(const NodeFn& g, double lo, double hi, const QuadratureConfig& cfg, double t_max,
                         double scale) {
  const double len = hi - lo;
  const double half = 0.5 * len;
  const double near = 1e-7 * len;
  Tally tally;

  auto contribution = [&](double t) {
    const double u = 0.5 * kPi * std::sinh(std::abs(t));
    const double e = std::exp(-2.0 * u);
    const double c = e / (1.0 + e);  // fraction of len from the nearest end
    const double weight = half * 0.5 * kPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    const double d_near = len * c;
    const double d_far = len - d_near;
    Sample v;
    if (t > 0) {
      v = guarded(g, hi - d_near, d_far, d_near, near, scale, tally);
    } else if (t < 0) {
      v = guarded(g, lo + d_near, d_near, d_far, near, scale, tally);
    } else {
      v = guarded(g, lo + half, half, half, near, scale, tally);
    }
    return v * weight;
  };

  // Level 0 uses unit spacing; each further level adds the odd multiples.
  Sample sum = contribution(0.0);
  const int k0 = static_cast<int>(std::floor(t_max));
  for (int k = 1; k <= k0; ++k) {
    sum += contribution(k) + contribution(-k);
  }
  double estimate = sum.value;
  double inner_err = std::abs(sum.err);
  double previous = estimate;
  double err = std::numeric_limits<double>::infinity();
  double last_err = err;
  double best_value = estimate;
  double best_err = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int level = 1; level <= cfg.max_levels; ++level) {
    const double h = std::ldexp(1.0, -level);
    const int kmax = static_cast<int>(std::floor(t_max / h));
    for (int k = 1; k <= kmax; k += 2) {
      sum += contribution(k * h) + contribution(-k * h);
    }
    previous = estimate;
    estimate = h * sum.value;
    inner_err = h * std::abs(sum.err);
    err = std::abs(estimate - previous);
    // The reported pair is the level with the smallest error estimate.
    if (err + inner_err < best_err) {
      best_err = err + inner_err;
      best_value = estimate;
    }
    if (level >= 3 && err <= std::max(cfg.rel_tol * std::abs(estimate), cfg.abs_tol)) {
      converged = true;
      break;
    }
    // Past level 4 a difference that stops shrinking is rounding noise.
    if (level >= 5 && err >= last_err) break;
    last_err = err;
  }
  return {best_value, best_err, tally.evaluations, tally.skipped, converged};
}

// 7-point Gauss / 15-point Kronrod abscissae and weights.
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, err;
  bool operator<(const Segment& other) const { return err < other.err; }
};

Segment kronrod15(const NodeFn& g, double lo, double hi, double rule_lo, double rule_hi, double near, double scale,
                  Tally& tally) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto eval = [&](double x) { return guarded(g, x, x - rule_lo, rule_hi - x, near, scale, tally); };
  const Sample fc = eval(center);
  double kron = kWgk[7] * fc.value;
  double gauss = kWg[3] * fc.value;
  double inner = kWgk[7] * std::abs(fc.err);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const Sample a = eval(center - dx);
    const Sample b = eval(center + dx);
    const double pair = a.value + b.value;
    kron += kWgk[static_cast<std::size_t>(j)] * pair;
    inner += kWgk[static_cast<std::size_t>(j)] * (std::abs(a.err) + std::abs(b.err));
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * pair;
  }
  kron *= half;
  gauss *= half;
  return {lo, hi, kron, std::abs(kron - gauss) + half * inner};
}

IntegralResult gauss_kronrod(const NodeFn& g, double lo, double hi, const QuadratureConfig& cfg, double scale) {
  Tally tally;
  const double near = 1e-7 * (hi - lo);
  const std::size_t budget = std::size_t{1} << std::min(cfg.max_levels + 3, 24);
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(g, lo, hi, lo, hi, near, scale, tally);
  double total = first.value;
  double total_err = first.err;
  heap.push(first);
  bool converged = false;
  while (true) {
    if (total_err <= std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol)) {
      converged = true;
      break;
    }
    if (heap.size() >= budget) break;
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = kronrod15(g, worst.lo, mid, lo, hi, near, scale, tally);
    const Segment right = kronrod15(g, mid, worst.hi, lo, hi, near, scale, tally);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum in a fixed order to avoid drift from the running updates.
  std::vector<Segment> segments;
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  total = 0.0;
  total_err = 0.0;
  for (const auto& s : segments) {
    total += s.value;
    total_err += s.err;
  }
  return {total, total_err, tally.evaluations, tally.skipped, converged};
}

IntegralResult run_rule(const NodeFn& g, double lo, double hi, const QuadratureConfig& cfg, bool bounded,
                        double scale) {
  if (cfg.method == Method::AdaptiveSubdivision) return gauss_kronrod(g, lo, hi, cfg, scale);
  return tanh_sinh(g, lo, hi, cfg, bounded ? 3.2 : 6.0, scale);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw UsageError("QuadratureConfig: rel_tol must be positive");
  if (max_levels < 3) throw UsageError("QuadratureConfig: max_levels must be at least 3");
  if (endpoint_inset < 0.0 || endpoint_inset >= 0.5) throw UsageError("QuadratureConfig: endpoint_inset out of range");
}

namespace {

using SampleFn = std::function<Sample(double)>;

IntegralResult integrate_samples(const SampleFn& f, double a, double b, const QuadratureConfig& cfg, bool singular_a,
                                 bool singular_b) {
  if (!(a < b)) {
    if (a == b) return {};
    throw UsageError("integrate_1d: need a < b");
  }
  if (cfg.endpoint_inset > 0.0) {
    const double trim = cfg.endpoint_inset * (b - a);
    a += trim;
    b -= trim;
  }
  const double len = b - a;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  const bool sub_a = singular_a && cfg.substitute_singular_endpoints;
  const bool sub_b = singular_b && cfg.substitute_singular_endpoints;
  const bool bounded = (sub_a || !singular_a) && (sub_b || !singular_b);
  const double clamp = std::min(kClampGap * scale, 0.25 * len);
  const bool singular_far = sub_a ? singular_b : singular_a;
  // Nodes pinned to the clamp distance share one evaluation per end.
  std::optional<Sample> at_lo;
  std::optional<Sample> at_hi;
  auto edge = [&](double theta, bool low) {
    auto& slot = low ? at_lo : at_hi;
    if (!slot) slot = f(theta);
    return *slot;
  };

  if (sub_a && sub_b) {
    // theta = a + len * sin^2(phi / 2), phi in [0, pi].
    const double phi_min = 2.0 * std::asin(std::sqrt(clamp / len));
    NodeFn g = [&](double, double dl, double dh, double& gap) {
      double theta;
      double jac;
      const bool pinned = std::min(dl, dh) <= phi_min;
      dl = std::max(dl, phi_min);
      dh = std::max(dh, phi_min);
      if (dl <= dh) {
        const double s = std::sin(0.5 * dl);
        gap = len * s * s;
        theta = a + gap;
        jac = 0.5 * len * std::sin(dl);
      } else {
        const double s = std::sin(0.5 * dh);
        gap = len * s * s;
        theta = b - gap;
        jac = 0.5 * len * std::sin(dh);
      }
      if (jac == 0.0) return Sample{};
      return (pinned ? edge(theta, dl <= dh) : f(theta)) * jac;
    };
    return run_rule(g, 0.0, kPi, cfg, true, scale);
  }
  if (sub_a || sub_b) {
    // theta = a + len * s^2 (singular at a) or b - len * s^2 (singular at b).
    const double s_min = std::sqrt(clamp / len);
    const double far_min = 1.0 - std::sqrt(1.0 - clamp / len);
    NodeFn g = [&](double s, double dl, double dh, double& gap) {
      double near_dist;
      double far_dist;
      bool pinned = false;
      if (s < s_min) {
        s = dl = s_min;
        pinned = true;
      } else if (!singular_far && dh < far_min) {
        dh = far_min;
        s = 1.0 - dh;
        pinned = true;
      }
      if (s <= 0.5) {
        near_dist = len * dl * dl;
        far_dist = len - near_dist;
      } else {
        far_dist = len * dh * (2.0 - dh);
        near_dist = len - far_dist;
      }
      const double theta = sub_a ? (s <= 0.5 ? a + near_dist : b - far_dist)
                                 : (s <= 0.5 ? b - near_dist : a + far_dist);
      gap = std::min(near_dist, far_dist);
      const double jac = 2.0 * len * s;
      if (jac == 0.0) return Sample{};
      return (pinned ? edge(theta, theta < a + 0.5 * len) : f(theta)) * jac;
    };
    return run_rule(g, 0.0, 1.0, cfg, bounded, scale);
  }
  NodeFn g = [&](double, double dl, double dh, double& gap) {
    const bool pin_lo = !singular_a && dl <= clamp;
    const bool pin_hi = !singular_b && dh <= clamp;
    if (pin_lo) dl = clamp;
    if (pin_hi) dh = clamp;
    gap = std::min(dl, dh);
    if (dl <= dh) return pin_lo ? edge(a + dl, true) : f(a + dl);
    return pin_hi ? edge(b - dh, false) : f(b - dh);
  };
  return run_rule(g, a, b, cfg, bounded, scale);
}

}  // namespace

IntegralResult integrate_1d(const Integrand1D& f, double a, double b, const QuadratureConfig& cfg, bool singular_a,
                            bool singular_b) {
  cfg.validate();
  return integrate_samples([&](double x) { return Sample{f(x), 0.0}; }, a, b, cfg, singular_a, singular_b);
}

namespace {

IntegralResult nested_level(const IntegrandND& f, const NestedRegion& region, const QuadratureConfig& cfg,
                            std::size_t depth, std::vector<double>& vars) {
  const LimitLevel& level = region.levels[depth];
  const double lo = level.lower.at(vars);
  const double hi = level.upper.at(vars);
  if (!(hi > lo)) return {};

  std::vector<double> cuts{lo};
  if (level.breakpoints) {
    for (double p : level.breakpoints(vars)) {
      if (p > lo && p < hi) cuts.push_back(p);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  cuts.push_back(hi);

  IntegralResult total;
  const bool innermost = depth + 1 == region.levels.size();
  SampleFn g = [&](double t) {
    vars.push_back(t);
    struct Pop {
      std::vector<double>& v;
      ~Pop() { v.pop_back(); }
    } pop{vars};
    if (innermost) {
      ++total.evaluations;
      return Sample{f(vars), 0.0};
    }
    // Inner non-convergence only matters through the weighted error it adds.
    const IntegralResult inner = nested_level(f, region, cfg, depth + 1, vars);
    total.evaluations += inner.evaluations;
    total.skipped += inner.skipped;
    return Sample{inner.value, inner.err_estimate};
  };

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool sing_lo = i == 0 && level.lower.singular;
    const bool sing_hi = i + 2 == cuts.size() && level.upper.singular;
    const IntegralResult part = integrate_samples(g, cuts[i], cuts[i + 1], cfg, sing_lo, sing_hi);
    total.value += part.value;
    total.err_estimate += part.err_estimate;
    total.skipped += part.skipped;
    total.converged = total.converged && part.converged;
  }
  if (!innermost) {
    total.converged = total.converged &&
                      total.err_estimate <= 2.0 * std::max(cfg.rel_tol * std::abs(total.value), cfg.abs_tol);
  }
  return total;
}

}  // namespace

IntegralResult integrate_nested(const IntegrandND& f, const NestedRegion& region, const QuadratureConfig& cfg) {
  cfg.validate();
  if (region.levels.empty()) throw UsageError("integrate_nested: region has no levels");
  std::vector<double> vars;
  vars.reserve(region.levels.size());
  return nested_level(f, region, cfg, 0, vars);
}

IntegralResult integrate_piece(const IntegrandND& f_of_params, const NestedRegion& piece,
                               const QuadratureConfig& cfg) {
  IntegrandND wrapped = [&](std::span<const double> vars) {
    const auto params = piece.params(vars);
    return f_of_params(params) * piece.jacobian;
  };
  return integrate_nested(wrapped, piece, cfg);
}

IntegralResult integrate_region(const IntegrandND& f_of_params, const RegionSpec& region,
                                const QuadratureConfig& cfg) {
  IntegralResult total;
  for (const auto& piece : region.pieces) {
    const IntegralResult part = integrate_piece(f_of_params, piece, cfg);
    total.value += part.value;
    total.err_estimate += part.err_estimate;
    total.evaluations += part.evaluations;
    total.skipped += part.skipped;
    total.converged = total.converged && part.converged;
  }
  return total;
}

double find_root_bisect(const std::function<double(double)>& g, double a, double b, double tol) {
  if (!(a < b) || !(tol > 0.0)) throw UsageError("find_root_bisect: need a < b and tol > 0");
  double ga = g(a);
  const double gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0.0) == (gb > 0.0)) {
    throw UsageError("find_root_bisect: no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (ga > 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace bures::quadrature
