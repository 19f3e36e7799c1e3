#include "bures/region.hpp"

#include "bures/errors.hpp"

namespace bures {

RegionSpec RegionSpec::interval(double a, double b, bool singular_a, bool singular_b, std::string var) {
  RegionSpec r;
  r.kind = RegionKind::Interval;
  NestedRegion piece;
  piece.name = "interval";
  piece.levels.push_back({std::move(var), Bound::constant(a, singular_a), Bound::constant(b, singular_b), {}});
  r.pieces.push_back(std::move(piece));
  r.contains = [a, b](std::span<const double> p) { return p.size() == 1 && p[0] >= a && p[0] <= b; };
  return r;
}

RegionSpec RegionSpec::simplex(int n, std::vector<std::string> vars) {
  if (static_cast<int>(vars.size()) != n) throw UsageError("simplex: need one variable name per dimension");
  RegionSpec r;
  r.kind = RegionKind::Simplex;
  NestedRegion piece;
  piece.name = "simplex";
  for (int i = 0; i < n; ++i) {
    Bound upper{[](std::span<const double> outer) {
                  double rest = 1.0;
                  for (double v : outer) rest -= v;
                  return rest;
                },
                true};
    piece.levels.push_back({vars[static_cast<std::size_t>(i)], Bound::constant(0.0, true), upper, {}});
  }
  r.pieces.push_back(std::move(piece));
  r.contains = [n](std::span<const double> p) {
    if (static_cast<int>(p.size()) < n) return false;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (p[static_cast<std::size_t>(i)] < 0.0) return false;
      sum += p[static_cast<std::size_t>(i)];
    }
    return sum <= 1.0;
  };
  return r;
}

std::pair<double, double> RegionSpec::endpoints() const {
  if (!is_interval() || pieces.size() != 1 || pieces[0].levels.size() != 1) {
    throw UsageError("RegionSpec: not a single interval");
  }
  const auto& level = pieces[0].levels[0];
  return {level.lower.at({}), level.upper.at({})};
}

bool RegionSpec::member(std::span<const double> params) const { return contains ? contains(params) : true; }

std::vector<double> RegionSpec::sample(std::mt19937_64& rng, double inset) const {
  if (pieces.empty()) throw UsageError("RegionSpec: no pieces to sample");
  const auto& piece = pieces.front();
  std::uniform_real_distribution<double> unit(inset, 1.0 - inset);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> vars;
    for (const auto& level : piece.levels) {
      const double lo = level.lower.at(vars);
      const double hi = level.upper.at(vars);
      vars.push_back(lo + (hi - lo) * unit(rng));
    }
    auto params = piece.params(vars);
    if (member(params)) return params;
  }
  throw NumericalFailure("RegionSpec::sample: rejection sampling exhausted");
}

}  // namespace bures
