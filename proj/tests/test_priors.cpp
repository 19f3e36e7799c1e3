#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "bures/errors.hpp"
#include "bures/families.hpp"
#include "bures/metric.hpp"
#include "bures/priors.hpp"
#include "bures/probability.hpp"
#include "bures/quadrature.hpp"
#include "oracles.hpp"

using namespace bures;

namespace {

constexpr double kPi = std::numbers::pi;

double engine(const families::DensityFamily& f, const std::vector<double>& t) {
  return metric::volume_element(metric::metric_spectral(f, t)).magnitude;
}

/// Largest relative spread of engine/printed over sampled interior points.
double ratio_spread(const families::DensityFamily& f, const priors::ClosedFormPrior& p, std::mt19937_64& rng,
                    double* ratio_out = nullptr) {
  double first = 0.0, worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    const auto t = f.feasible.sample(rng, 0.05);
    const double r = engine(f, t) / p.eval(t);
    if (n == 0) first = r;
    worst = std::max(worst, std::abs(r / first - 1.0));
  }
  if (ratio_out) *ratio_out = first;
  return worst;
}

}  // namespace

TEST_CASE("catalog is ordered and lookups fail loudly") {
  const auto& c = priors::catalog();
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].id < c[i].id);
  CHECK_THROWS_AS((void)priors::find("nope"), UsageError);
  CHECK_THROWS_AS((void)priors::find("werner_qq").eval({0.1, 0.2}), UsageError);
  CHECK_THROWS_AS((void)priors::find("werner_qq").eval({1.5}), DomainError);
}

TEST_CASE("catalog values at reference points") {
  CHECK(priors::find("s1_equal_intra").eval({0.0}) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-15));
  const double dirichlet = 1.0 / (kPi * kPi * std::sqrt(0.25 * 0.25 * 0.25 * 0.25));
  CHECK(priors::find("diag4").eval({0.25, 0.25, 0.25}) == doctest::Approx(dirichlet).epsilon(1e-15));
  CHECK(dirichlet == doctest::Approx(16.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(priors::find("werner_qq").eval({0.0}) == doctest::Approx(3.0 * std::sqrt(3.0) / (2.0 * kPi)).epsilon(1e-15));
  CHECK(priors::find("rains_smolin").eval({0.0}) == doctest::Approx(175.0 / (kPi * std::sqrt(807599.0))).epsilon(1e-15));
}

TEST_CASE("two-qutrit Werner ratio agrees with an independent transcription") {
  const auto& p = priors::find("werner_qutrit");
  // At epsilon = 0 the numerator is -16 * 2 * 496 and the denominator 3 (-1) 31 * 31.
  CHECK(p.eval({0.0}) == doctest::Approx(std::sqrt((16.0 * 2.0 * 496.0) / (3.0 * 31.0 * 31.0))).epsilon(1e-15));
  for (double e : {0.1, 0.37, 0.8}) {
    const double num = -16.0 * (2 + 7 * e) *
                       (496 + 14384 * e + 179472 * std::pow(e, 2) + 1269568 * std::pow(e, 3) +
                        5676488 * std::pow(e, 4) + 16753596 * std::pow(e, 5) + 31419646 * std::pow(e, 6) +
                        31863023 * std::pow(e, 7) + 14859999 * std::pow(e, 8));
    const double den = 3 * std::pow(e - 1, 5) * (1 + 8 * e) * (31 + 161 * e) *
                       (31 + 603 * e + 3993 * e * e + 8981 * std::pow(e, 3));
    CHECK(p.eval({e}) == doctest::Approx(std::sqrt(num / den)).epsilon(1e-13));
  }
}

TEST_CASE("qubit-qutrit Werner ratio agrees with an independent transcription") {
  const auto& p = priors::find("werner_qubit_qutrit");
  CHECK(p.eval({0.0}) == doctest::Approx(std::sqrt(10.0 * 26.0 / (13.0 * 13.0))).epsilon(1e-15));
  for (double e : {0.1, 0.37, 0.8}) {
    const double num = 10 * (1 + 2 * e) * (26 + 286 * e + 1236 * e * e + 2506 * std::pow(e, 3) + 2021 * std::pow(e, 4));
    const double den =
        std::pow(e - 1, 2) * (1 + 5 * e) * (13 + 32 * e) * (13 + 126 * e + 429 * e * e + 512 * std::pow(e, 3));
    CHECK(p.eval({e}) == doctest::Approx(std::sqrt(num / den)).epsilon(1e-13));
  }
}

TEST_CASE("Tsallis q = 1 printed density") {
  CHECK_THROWS_AS((void)priors::tsallis_q1_prior(1.0, 4.0), DomainError);
  CHECK(priors::tsallis_q1_prior(0.5, 4.0) == doctest::Approx(1.0 / (2.0 * kPi * std::sqrt(3.5))).epsilon(1e-15));
}

TEST_CASE("Tsallis q = 1/2 density") {
  CHECK(priors::tsallis_qhalf_prior(0.0, 8.0) == doctest::Approx(32.0 / (kPi * std::pow(32.0, 1.5))).epsilon(1e-15));
}

TEST_CASE("normalized catalog entries integrate to one") {
  quadrature::QuadratureConfig cfg = quadrature::QuadratureConfig::multi_dim();
  cfg.rel_tol = 1e-8;
  cfg.max_levels = 9;
  for (const char* id : {"s2_two_pos_one_neg", "s3_equal_inter", "s5_all_nine", "rains_smolin", "werner_qq",
                         "tsallis_q1", "tsallis_qhalf", "twoparam_intra"}) {
    const std::string name = id;
    CAPTURE(name);
    const auto& p = priors::find(id);
    REQUIRE(p.kind == priors::PriorKind::Normalized);
    const auto& region = p.domain.pieces.empty() ? families::find(id).feasible : p.domain;
    const auto r = quadrature::integrate_region([&](std::span<const double> t) { return p.density(t); }, region, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("Rains-Smolin prior integrates to one on its feasible range") {
  const double u = priors::rains_smolin_halfwidth();
  CHECK(u == doctest::Approx(std::sqrt(807599.0) / 175.0).epsilon(1e-15));
  const auto& p = priors::find("rains_smolin");
  const double mass = oracle::integrate_sqrt_ends([&](double x) { return p.density(std::vector<double>{x}); }, -u, u);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("unnormalized catalog entries carry their printed masses") {
  const auto& s1 = priors::find("s1_equal_intra");
  const double z = oracle::integrate_sqrt_ends([&](double t) { return s1.density(std::vector<double>{t}); }, -0.25, 1.0 / 12);
  CHECK(z == doctest::Approx(*s1.normalization).epsilon(1e-10));
  CHECK(z == doctest::Approx(kPi / 2).epsilon(1e-10));
}

TEST_CASE("printed marginals") {
  const auto m = priors::marginals();
  REQUIRE(m.size() == 3);
  const auto& p = m[0];
  const auto& q = m[1];
  const auto& eta = m[2];
  // The p(v) mass is (3/4) B(2, 1/2) = 1.
  CHECK(oracle::integrate_sqrt_ends(p.density, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // sqrt 2 / sqrt(1 + 4 eta) has antiderivative sqrt(2 (1 + 4 eta)) / 2.
  CHECK(oracle::integrate_sqrt_ends(eta.density, -0.25, 0.25) == doctest::Approx(std::sqrt(2.0 * 2.0) / 2.0).epsilon(1e-12));
  CHECK(q.divergent);
  double previous = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const double upper = 1.0 - std::pow(10.0, -k);
    const double mass = oracle::integrate([&](double v) { return std::abs(q.density(v)); }, 0.05, upper);
    CHECK(mass > previous + 0.1);
    previous = mass;
  }
}

TEST_CASE("priors are nonnegative on their domains") {
  std::mt19937_64 rng(211);
  for (const auto& p : priors::catalog()) {
    if (p.domain.pieces.empty()) continue;
    CAPTURE(p.id);
    for (int n = 0; n < 50; ++n) {
      const auto t = p.domain.sample(rng, 0.02);
      double v = 0.0;
      try {
        v = p.eval(t);
      } catch (const DomainError&) {
        continue;
      }
      CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("engine volume elements are proportional to the printed priors") {
  std::mt19937_64 rng(223);
  for (const char* id : {"s1_equal_intra", "s2_two_pos_one_neg", "s3_equal_inter", "s4_intra_vs_inter", "s5_all_nine",
                         "werner_qq", "twoparam_intra", "threeparam_intra", "diag4", "diag4_unitary",
                         "rhoP"}) {
    const std::string name = id;
    CAPTURE(name);
    const auto& f = families::find(id);
    const auto& p = priors::find(f.closed_form_prior);
    double ratio = 0.0;
    CHECK(ratio_spread(f, p, rng, &ratio) <= 1e-7);
    if (p.kind == priors::PriorKind::Normalized && f.k() <= 3) {
      CHECK(ratio == doctest::Approx(probability::run_scenario(f).Z).epsilon(1e-7));
    }
  }
}

TEST_CASE("restricting before the metric gives the equal intra-directional prior") {
  const auto& f = families::find("s1_equal_intra");
  const auto& p = priors::find("s1_equal_intra");
  for (double z : {-0.2, -0.1, 0.0, 0.03, 0.07}) {
    CHECK(engine(f, {z}) == doctest::Approx(p.eval({z})).epsilon(1e-10));
  }
}

TEST_CASE("the full fifteen-parameter tensor restricted afterwards gives the conditioned prior") {
  const auto& g = families::find("two_qubit_general");
  const auto& p = priors::find("s1_conditioned_after");
  for (double z : {-0.2, -0.1, 0.0, 0.03, 0.07}) {
    std::vector<double> t(15, 0.0);
    t[6] = t[10] = t[14] = z;
    CHECK(engine(g, t) == doctest::Approx(p.eval({z})).epsilon(1e-8));
  }
}

TEST_CASE("complementary factor") {
  CHECK(priors::complementary_factor(0.8, 0.1, 0.2, 0.3) ==
        doctest::Approx(1.0 / (4.0 * (0.14 - 1.44))).epsilon(1e-15));
}

TEST_SUITE("disputed") {
  TEST_CASE("engine volume elements are proportional to the remaining printed priors") {
    std::mt19937_64 rng(227);
    for (const char* id : {"s6_all_fifteen", "werner_qutrit", "werner_qubit_qutrit"}) {
      const std::string name = id;
      CAPTURE(name);
      const auto& f = families::find(id);
      CHECK(ratio_spread(f, priors::find(f.closed_form_prior), rng) <= 1e-7);
    }
  }
}
