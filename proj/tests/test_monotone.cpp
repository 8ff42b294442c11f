#include <doctest.h>

#include <cmath>
#include <random>

#include "cca/atom.hpp"
#include "cca/error.hpp"
#include "cca/moreau.hpp"
#include "cca/monotone.hpp"
#include "oracles.hpp"

using namespace cca;

namespace {

OperatorGraph identity_graph(double lo, double hi, int n) {
  std::vector<GraphPair> pairs;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    pairs.push_back({{x, 0}, {x, 0}});
  }
  return OperatorGraph(1, pairs);
}

OperatorGraph abs_subgradient_graph() {
  std::vector<GraphPair> pairs;
  for (int i = -100; i <= 100; ++i) {
    if (i == 0) continue;
    const double x = 0.01 * i;
    pairs.push_back({{x, 0}, {x > 0 ? 1.0 : -1.0, 0}});
  }
  for (int i = -10; i <= 10; ++i) pairs.push_back({{0, 0}, {0.1 * i, 0}});
  return OperatorGraph(1, pairs);
}

GridFn atom(const std::string& name, std::vector<double> params, const std::string& grid) {
  return sample(FnAtom::make(name, std::move(params)), Grid::parse(grid));
}

}  // namespace

TEST_SUITE("monotone") {
  TEST_CASE("monotonicity checks") {
    CHECK(is_monotone(identity_graph(-1, 1, 101)).monotone);
    std::vector<GraphPair> neg;
    for (int i = 0; i < 101; ++i) neg.push_back({{-1 + 0.02 * i, 0}, {1 - 0.02 * i, 0}});
    const MonotonicityReport r = is_monotone(OperatorGraph(1, neg));
    CHECK_FALSE(r.monotone);
    CHECK(r.violation.value() == std::make_pair(std::size_t{0}, std::size_t{1}));
    CHECK(is_monotone(abs_subgradient_graph()).monotone);
    CHECK_THROWS_AS(OperatorGraph(1, {}), ParameterError);
  }

  TEST_CASE("graphs of convex gradients are monotone, decreasing maps are not") {
    for (const FnAtom& a : {FnAtom::make("power", {1.5}), FnAtom::make("exp"), FnAtom::make("sqrt_one_plus_sq"),
                            FnAtom::make("abs"), FnAtom::make("power", {4})})
      CHECK(is_monotone(difference_graph(sample(a, Grid::parse("-2:2:201")))).monotone);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 50; ++t) {
      const double a = u(rng);
      const double b = a + 0.1 + std::abs(u(rng));
      CHECK_FALSE(is_monotone(OperatorGraph(1, {{{a, 0}, {-std::exp(a), 0}}, {{b, 0}, {-std::exp(b), 0}}})).monotone);
    }
    // 2-D gradient of a convex quadratic form.
    std::vector<GraphPair> quad;
    for (int i = -5; i <= 5; ++i)
      for (int j = -5; j <= 5; ++j) {
        const double x = 0.3 * i;
        const double y = 0.3 * j;
        quad.push_back({{x, y}, {2 * x + y, x + 3 * y}});
      }
    CHECK(is_monotone(OperatorGraph(2, quad)).monotone);
    std::vector<GraphPair> rot;
    for (int i = 0; i < 20; ++i) rot.push_back({{std::cos(0.3 * i), std::sin(0.3 * i)}, {-std::sin(0.3 * i) - 0.5 * std::cos(0.3 * i), std::cos(0.3 * i)}});
    CHECK_FALSE(is_monotone(OperatorGraph(2, rot)).monotone);
  }

  TEST_CASE("monotonically related candidates") {
    const OperatorGraph g = identity_graph(-1, 1, 101);
    CHECK(monotonically_related(g, {{0, 0}, {0, 0}}));
    CHECK(monotonically_related(g, {{2, 0}, {5, 0}}));
    CHECK_FALSE(monotonically_related(g, {{0, 0}, {1, 0}}));
  }

  TEST_CASE("Fitzpatrick function") {
    const OperatorGraph g = identity_graph(-2, 2, 401);
    CHECK(std::abs(fitzpatrick(g, {{1, 0}, {1, 0}}).value - 1.0) <= 1e-8);
    CHECK(std::abs(fitzpatrick(g, {{1, 0}, {-1, 0}}).value) <= 1e-12);
    CHECK(fitzpatrick(OperatorGraph(1, {{{0, 0}, {0, 0}}}), {{3, 0}, {-4, 0}}).value == 0.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 100; ++t) {
      const double x = u(rng);
      const double xs = u(rng);
      const FitzpatrickEval e = fitzpatrick(g, {{x, 0}, {xs, 0}});
      CHECK(e.value >= x * xs - 0.01 * 0.01);
      CHECK(std::abs(e.value - (x + xs) * (x + xs) / 4) <= 0.01 * 0.01);
      // The attaining row is a maximizer: a plain loop cannot beat it.
      const GraphPair a = g.pair(e.index);
      CHECK(e.value == doctest::Approx(x * a.xs[0] + a.x[0] * xs - a.x[0] * a.xs[0]).epsilon(1e-15));
    }
    const OperatorGraph s = abs_subgradient_graph();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const GraphPair p = s.pair(i);
      CHECK(std::abs(fitzpatrick(s, p).value - p.x[0] * p.xs[0]) <= 1e-8);
    }
  }

  TEST_CASE("resolvent and Yosida examples") {
    const ResolventResult a = resolvent(atom("power", {2}, "-4:4:801"), 1.0, {2, 0});
    CHECK(a.x[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.y[0] == doctest::Approx(1.0).epsilon(1e-9));
    const ResolventResult b = resolvent(atom("indicator", {-1, 1}, "-4:4:801"), 1.0, {3, 0});
    CHECK(b.x[0] == doctest::Approx(1.0));
    CHECK(b.y[0] == doctest::Approx(2.0));
    const ResolventResult c = resolvent(atom("abs", {}, "-4:4:801"), 1.0, {0, 0});
    CHECK(c.x[0] == 0.0);
    CHECK(c.y[0] == 0.0);
    CHECK(yosida(atom("abs", {}, "-4:4:801"), 1.0, {0.5, 0})[0] == doctest::Approx(0.5));
    CHECK(yosida(atom("abs", {}, "-4:4:801"), 1.0, {3, 0})[0] == doctest::Approx(1.0));
  }

  TEST_CASE("resolvent is firmly nonexpansive and round-trips") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.5, 3.5);
    const GridFn f = atom("sqrt_one_plus_sq", {}, "-4:4:801");
    for (int t = 0; t < 100; ++t) {
      const double z1 = u(rng);
      const double z2 = u(rng);
      const double lambda = 0.2 + 0.1 * (t % 10);
      const ResolventResult r1 = resolvent(f, lambda, {z1, 0});
      const ResolventResult r2 = resolvent(f, lambda, {z2, 0});
      const double dx = r1.x[0] - r2.x[0];
      CHECK(dx * dx <= dx * (z1 - z2) + 1e-12);
      CHECK(std::abs(r1.x[0] + lambda * r1.y[0] - z1) <= 4 * std::numeric_limits<double>::epsilon() * 4.0);
    }
  }

  TEST_CASE("surjectivity probe") {
    const GridFn a = atom("abs", {}, "-4:4:801");
    const Point targets[] = {{-3, 0}, {-0.5, 0}, {0, 0}, {0.5, 0}, {3, 0}};
    const SurjectivityReport r = surjectivity_probe(a, targets);
    CHECK(r.solved == 5);
    CHECK(r.max_residual <= 1e-12);
    CHECK(r.max_certificate_eps <= 1e-9);
    const GridFn z = atom("indicator", {0, 0}, "-4:4:801");
    const Point far[] = {{3.7, 0}};
    const SurjectivityReport rz = surjectivity_probe(z, far);
    CHECK(rz.entries[0].x[0] == 0.0);
    CHECK(rz.entries[0].y[0] == doctest::Approx(3.7));
    // A solution on the boundary asks for a wider grid.
    const Point edge[] = {{4.0, 0}};
    CHECK(surjectivity_probe(atom("constant", {0}, "-4:4:801"), edge).entries[0].widen_grid);
  }
}
