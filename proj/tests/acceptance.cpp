// Acceptance run: one PASS/FAIL line per check, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cca/atom.hpp"
#include "cca/convexity.hpp"
#include "cca/fenchel.hpp"
#include "cca/monotone.hpp"
#include "cca/moreau.hpp"
#include "cca/renorm.hpp"
#include "cca/special.hpp"
#include "oracles.hpp"

using namespace cca;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GridFn atom(const std::string& name, std::vector<double> params, const Grid& g) {
  return sample(FnAtom::make(name, std::move(params)), g);
}

GridFn tabulate(const Grid& g, const std::function<double(const Point&)>& fn) {
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = fn(g.node(k));
  return GridFn(g, std::move(v));
}

// Dual axis covering every finite-difference slope of a 1-D function, padded by 1.
Grid slope_cover(const GridFn& f, std::size_t count) {
  double lo = 0.0;
  double hi = 0.0;
  const double h = f.grid().spacing(0);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (!std::isfinite(f[i]) || !std::isfinite(f[i + 1])) continue;
    const double s = (f[i + 1] - f[i]) / h;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return Grid(Axis{lo - 1.0, hi + 1.0, count});
}

// a (x - c)^2 + b |x - d| + e with randomized coefficients.
struct ConvexSample {
  double a, b, c, d, e;
  double operator()(double x) const { return a * (x - c) * (x - c) + b * std::abs(x - d) + e; }
  static ConvexSample draw(std::mt19937_64& rng, double amin, double amax, double bmax) {
    std::uniform_real_distribution<double> ua(amin, amax), ub(0.0, bmax), uc(-1.0, 1.0);
    return {ua(rng), ub(rng), uc(rng), uc(rng), uc(rng)};
  }
};

Outcome c01_conjugate_golden() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid primal = Grid::parse("-5:5:2001");
  const Grid dual = Grid::parse("-3:3:601");
  double worst = 0.0;
  for (const double p : {1.5, 2.0, 3.0}) {
    const double q = p / (p - 1.0);
    const GridFn fs = conjugate(atom("power", {p}, primal), dual).dual;
    // Sup attained at |x| = |y|^(q - 1); compare where that lies inside the primal box.
    for (std::size_t k = 0; k < dual.size(); ++k) {
      const double y = dual.node(k)[0];
      if (std::pow(std::abs(y), q - 1.0) >= 5.0) continue;
      worst = std::max(worst, std::abs(fs[k] - std::pow(std::abs(y), q) / q));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-3 && t < 1.0, fmt("max err %.3g, %.3f s", worst, t)};
}

Outcome c02_exp_conjugate() {
  const Grid dual(Axis{0.1, 5.0, 491});
  const GridFn es = conjugate(atom("exp", {}, Grid::parse("-10:3:2001")), dual).dual;
  double worst_exp = 0.0;
  for (std::size_t k = 0; k < dual.size(); ++k) {
    const double y = dual.node(k)[0];
    worst_exp = std::max(worst_exp, std::abs(es[k] - (y * std::log(y) - y)));
  }
  const GridFn ee = atom("expexp", {}, Grid::parse("-5:2:7001"));
  double worst_ee = 0.0;
  double worst_w = 0.0;
  for (const double y : {0.5, 1.0, 2.0}) {
    const double w_hp = oracle::lambert_w_hp(y);
    worst_w = std::max(worst_w, std::abs(lambert_w(y) - w_hp));
    const double closed = y * (std::log(y) - w_hp - 1.0 / w_hp);
    worst_ee = std::max(worst_ee, std::abs(conjugate_at(ee, {y, 0.0}) - closed));
  }
  return {worst_exp <= 1e-3 && worst_ee <= 1e-3 && worst_w <= 1e-12,
          fmt("exp %.3g, exp(exp) %.3g, W %.3g", worst_exp, worst_ee, worst_w)};
}

Outcome c03_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> count(2, 64), count2(2, 8), kind(0, 9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> small(-4, 4);
  std::size_t mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const bool two_d = t % 4 == 3;
    const Grid primal = two_d ? Grid(Axis{u(rng) - 4, u(rng) + 4, static_cast<std::size_t>(count2(rng))},
                                     Axis{-2, 2, static_cast<std::size_t>(count2(rng))})
                              : Grid(Axis{-2, 2, static_cast<std::size_t>(count(rng))});
    const Grid dual = two_d ? Grid(Axis{-3, 3, static_cast<std::size_t>(count2(rng))},
                                   Axis{-1, 1, static_cast<std::size_t>(count2(rng))})
                            : Grid(Axis{u(rng) - 4, u(rng) + 4, static_cast<std::size_t>(count(rng))});
    std::vector<double> v(primal.size());
    for (double& x : v) {
      // Mix of +inf holes, integer values (ties) and generic reals.
      const int c = kind(rng);
      x = c == 0 ? oracle::kInf : c < 4 ? static_cast<double>(small(rng)) : u(rng);
    }
    v[v.size() / 2] = 0.0;
    const GridFn f(primal, v);
    const ConjugateResult fast = conjugate(f, dual);
    const ConjugateResult slow = conjugate_oracle(f, dual);
    for (std::size_t k = 0; k < dual.size(); ++k) {
      const bool same_value = fast.dual[k] == slow.dual[k];
      const bool same_arg = fast.argmax[k] == slow.argmax[k];
      // 1-D values also against the independent plain loop.
      const bool same_plain = two_d || fast.dual[k] == oracle::conjugate_at(f, dual.node(k));
      if (!same_value || !same_arg || !same_plain) ++mismatches;
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && t < 5.0, fmt("%zu mismatching nodes, %.3f s", mismatches, t)};
}

Outcome c04_biconjugate() {
  struct Case {
    const char* name;
    std::vector<double> params;
    const char* grid;
  };
  const std::vector<Case> convex = {
      {"abs", {}, "-2:2:401"},
      {"power", {1.5}, "-2:2:401"},
      {"power", {2}, "-2:2:401"},
      {"power", {3}, "-2:2:401"},
      {"exp", {}, "-2:2:401"},
      {"negentropy", {}, "0:4:401"},
      {"indicator", {-1, 1}, "-2:2:401"},
      {"distance", {-1, 1}, "-2:2:401"},
      {"sqrt_one_plus_sq", {}, "-2:2:401"},
      {"negsqrt_circle", {}, "-1:1:401"},
  };
  double worst = 0.0;
  for (const Case& c : convex) {
    const GridFn f = atom(c.name, c.params, Grid::parse(c.grid));
    const GridFn fb = biconjugate(f, slope_cover(f, 200001));
    for (std::size_t k = 0; k < f.size(); ++k)
      if (std::isfinite(f[k])) worst = std::max(worst, std::abs(fb[k] - f[k]));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t strict = 0;
  double above = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Grid g = Grid::parse("-1:1:41");
    std::vector<double> v(g.size());
    for (double& x : v) x = u(rng);
    const GridFn f(g, v);
    const GridFn fb = biconjugate(f, slope_cover(f, 4001));
    double gap = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      gap = std::max(gap, f[k] - fb[k]);
      above = std::max(above, fb[k] - f[k]);
    }
    if (gap > 1e-9) ++strict;
  }
  return {worst <= 1e-6 && strict == 10 && above <= 1e-12,
          fmt("convex max |f** - f| %.3g; nonconvex strict %zu/10", worst, strict)};
}

Outcome c05_circle_norm_infconv() {
  const Grid g = Grid::parse("-2:2:4001");
  const GridFn c = atom("negsqrt_circle", {}, g);
  const GridFn a = atom("abs", {}, g);
  const GridFn r = inf_convolution(c, a).value;
  const double knee = std::numbers::sqrt2 / 2.0;
  double worst = 0.0;
  double oracle_gap = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.node(k)[0];
    const double expect = std::abs(x) <= knee ? -std::sqrt(1.0 - x * x) : std::abs(x) - std::numbers::sqrt2;
    worst = std::max(worst, std::abs(r[k] - expect));
    oracle_gap = std::max(oracle_gap, std::abs(r[k] - oracle::infconv_1d(c, a, k)));
  }
  return {worst <= 2e-3 && oracle_gap <= 1e-12, fmt("formula %.3g, oracle %.3g", worst, oracle_gap)};
}

Outcome c06_dual_identity() {
  std::mt19937_64 rng(11);
  const Grid g = Grid::parse("-8:8:1601");
  const Grid dual = Grid::parse("-1.5:1.5:301");
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const ConvexSample sf = ConvexSample::draw(rng, 0.5, 2.0, 1.0);
    const ConvexSample sg = ConvexSample::draw(rng, 0.5, 2.0, 1.0);
    const GridFn f = tabulate(g, [&](const Point& x) { return sf(x[0]); });
    const GridFn h = tabulate(g, [&](const Point& x) { return sg(x[0]); });
    worst = std::max(worst, infconv_dual_check(f, h, dual));
  }
  return {worst <= 1e-3, fmt("max discrepancy %.3g", worst)};
}

Outcome c07_moreau_decomposition() {
  const Grid primal = Grid::parse("-4:4:801");
  const Grid dual = Grid::parse("-6:6:1201");
  const double tol = 2.0 * std::max(primal.max_spacing(), dual.max_spacing());
  const std::vector<GridFn> fs = {atom("indicator", {-1, 1}, primal), atom("abs", {}, primal),
                                  atom("power", {2}, primal)};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (const GridFn& f : fs)
    for (int t = 0; t < 50; ++t) worst = std::max(worst, moreau_decomposition_residual(f, {u(rng), 0.0}, dual));
  return {worst <= tol, fmt("max residual %.3g (bound %.3g)", worst, tol)};
}

Outcome c08_huber() {
  const GridFn a = atom("abs", {}, Grid::parse("-3:3:601"));
  const GridFn e = moreau_envelope(a, 1.0);
  double worst = 0.0;
  double oracle_gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a.grid().node(k)[0];
    const double huber = std::abs(x) <= 1.0 ? 0.5 * x * x : std::abs(x) - 0.5;
    worst = std::max(worst, std::abs(e[k] - huber));
    oracle_gap = std::max(oracle_gap, std::abs(e[k] - oracle::envelope_1d(a, 1.0, k)));
  }
  return {worst <= 1e-6 && oracle_gap <= 1e-12, fmt("Huber %.3g, oracle %.3g", worst, oracle_gap)};
}

std::vector<GridFn> convex_atoms_1d(const Grid& g) {
  return {atom("abs", {}, g),          atom("power", {1.5}, g),          atom("power", {2}, g),
          atom("power", {3}, g),       atom("exp", {}, g),               atom("negentropy", {}, g),
          atom("indicator", {-1, 1}, g), atom("distance", {-1, 1}, g),   atom("support", {-1, 2}, g),
          atom("sqrt_one_plus_sq", {}, g), atom("negsqrt_circle", {}, g), atom("constant", {0.5}, g)};
}

Outcome c09_firm_nonexpansive() {
  const Grid g = Grid::parse("-4:4:801");
  std::vector<ProxOperator> ops;
  for (GridFn& f : convex_atoms_1d(g)) ops.emplace_back(std::move(f), 1.0);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  std::uniform_real_distribution<double> u(-3.0, 3.0), near(-0.05, 0.05);
  double worst = -oracle::kInf;
  for (int t = 0; t < 1000; ++t) {
    const ProxOperator& op = ops[pick(rng)];
    const double x = u(rng);
    // Half of the pairs are close together, where rounding in the refinement matters most.
    const double y = t % 2 == 0 ? u(rng) : std::clamp(x + near(rng), -3.0, 3.0);
    const double dp = op({x, 0.0}).point[0] - op({y, 0.0}).point[0];
    worst = std::max(worst, dp * dp - dp * (x - y));
  }
  return {worst <= 1e-8, fmt("max |dP|^2 - <dP, dx> = %.3g", worst)};
}

Outcome c10_yosida_gradient() {
  // h = 0.05: the envelope of |.| has a curvature jump at |x| = 1, where the
  // central difference is off by up to h / 4; that stays below 10 h^2 for h >= 1/40.
  const Grid g = Grid::parse("-3:3:121");
  const double h = g.spacing(0);
  double worst = 0.0;
  for (const GridFn& f : {atom("abs", {}, g), atom("power", {2}, g)}) {
    const GridFn e = moreau_envelope(f, 1.0);
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
      const double cd = (e[k + 1] - e[k - 1]) / (2.0 * h);
      worst = std::max(worst, std::abs(yosida(f, 1.0, g.node(k))[0] - cd));
    }
  }
  const double bound = 10.0 * h * h + 1e-8;
  return {worst <= bound, fmt("max deviation %.3g (bound %.3g)", worst, bound)};
}

Outcome c11_minty() {
  const Grid g = Grid::parse("-4:4:32001");
  std::vector<GridFn> fs = convex_atoms_1d(g);
  fs.push_back(atom("expexp", {}, g));
  fs.push_back(atom("expexp_conj", {}, g));
  fs.push_back(atom("negsqrt", {}, g));
  fs.push_back(atom("negsqrt_conj", {}, g));
  fs.push_back(atom("support_clipped", {-1, 2}, g));
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst_eps = 0.0;
  double worst_res = 0.0;
  std::size_t unsolved = 0;
  for (const GridFn& f : fs) {
    std::vector<Point> targets(100);
    for (Point& z : targets) z = {u(rng), 0.0};
    const SurjectivityReport rep = surjectivity_probe(f, targets, 1.0);
    unsolved += targets.size() - rep.solved;
    worst_eps = std::max(worst_eps, rep.max_certificate_eps);
    worst_res = std::max(worst_res, rep.max_residual);
  }
  return {worst_eps <= 1e-6 && unsolved == 0,
          fmt("%zu atoms, max certificate %.3g, max residual %.3g, unsolved %zu", fs.size(), worst_eps, worst_res,
              unsolved)};
}

Outcome c12_fitzpatrick() {
  std::vector<GraphPair> id_pairs;
  std::vector<GraphPair> abs_pairs;
  const Axis ax{-2.0, 2.0, 401};
  for (std::size_t i = 0; i < ax.count; ++i) {
    const double a = ax.node(i);
    id_pairs.push_back({{a, 0}, {a, 0}});
    if (a != 0.0) abs_pairs.push_back({{a, 0}, {a > 0 ? 1.0 : -1.0, 0}});
  }
  for (std::size_t i = 0; i < 201; ++i) abs_pairs.push_back({{0, 0}, {-1.0 + 0.01 * static_cast<double>(i), 0}});
  const OperatorGraph id(1, id_pairs);
  const OperatorGraph sub(1, abs_pairs);

  std::mt19937_64 rng(17);
  double on_graph = 0.0;
  for (const OperatorGraph* gr : {&id, &sub}) {
    std::uniform_int_distribution<std::size_t> pick(0, gr->size() - 1);
    for (int t = 0; t < 100; ++t) {
      const GraphPair p = gr->pair(pick(rng));
      on_graph = std::max(on_graph, std::abs(fitzpatrick(*gr, p).value - p.x[0] * p.xs[0]));
    }
  }
  const double h = ax.spacing();
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double min_excess = oracle::kInf;
  double closed = 0.0;
  for (int t = 0; t < 200;) {
    const double x = u(rng);
    const double xs = u(rng);
    if (std::abs(x - xs) < 0.1) continue;
    ++t;
    const double fv = fitzpatrick(id, {{x, 0}, {xs, 0}}).value;
    min_excess = std::min(min_excess, fv - x * xs);
    closed = std::max(closed, std::abs(fv - (x + xs) * (x + xs) / 4.0));
  }
  return {on_graph <= 1e-8 && min_excess >= 0.0 && closed <= h * h,
          fmt("on-graph %.3g, off-graph min excess %.3g, closed form %.3g (h^2 %.3g)", on_graph, min_excess, closed,
              h * h)};
}

Outcome c13_asplund() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = Grid::parse("-4:4:321x-4:4:321");
  NormPair pr = init_pair(FnAtom::make("norm", {1}), FnAtom::make("norm", {2}), g);
  const double slack = 10.0 * g.max_spacing();
  bool ok = true;
  double r = ratio_bounds(pr).max;
  ok = ok && r <= pr.C + slack;
  std::string trace = fmt("r0 %.3g", r);
  for (int n = 1; n <= 6; ++n) {
    pr = asplund_step(pr);
    r = ratio_bounds(pr).max;
    ok = ok && r <= std::ldexp(pr.C, -2 * n) + slack;
    trace += fmt(" r%d %.3g", n, r);
  }
  ok = ok && r <= 3e-4 + slack;
  const double t = seconds_since(t0);
  return {ok && t < 30.0, fmt("C %.4g; %s; %.2f s", pr.C, trace.c_str(), t)};
}

Outcome c14_gamma_limit() {
  const double sqrt_pi = oracle::sqrt_pi();
  const double ref_digits = std::abs(sqrt_pi - 1.77245385090552);
  const double err = std::abs(gamma_limit(0.5, 1'000'000) - sqrt_pi);
  double ratio = 0.0;
  for (const double x : {0.5, 1.5, 2.5})
    ratio = std::max(ratio, std::abs(gamma_limit(x + 1.0, 1'000'000) / gamma_limit(x, 1'000'000) - x));
  return {err <= 1e-5 && ratio <= 1e-4 && ref_digits <= 1e-14,
          fmt("|G(0.5) - sqrt(pi)| %.3g, ratio %.3g", err, ratio)};
}

Outcome c15_ball_volumes() {
  const double pi = static_cast<double>(oracle::pi_hp());
  const double v22 = std::abs(ball_volume(2, 2.0) - pi);
  const double v31 = std::abs(ball_volume(3, 1.0) - 4.0 / 3.0);
  const bool v5inf = ball_volume(5, oracle::kInf) == 32.0;
  double beta = 0.0;
  const std::pair<double, double> pts[] = {{0.5, 0.5}, {1.0, 2.0}, {2.5, 1.5}, {3.0, 4.0}, {0.7, 3.2}};
  for (const auto& [x, y] : pts)
    beta = std::max(beta, std::abs(beta_integral(x, y) * oracle::gamma_hp(x + y) -
                                   oracle::gamma_hp(x) * oracle::gamma_hp(y)));
  return {v22 <= 1e-12 && v31 <= 1e-12 && v5inf && beta <= 1e-8,
          fmt("V2(2) %.3g, V3(1) %.3g, V5(inf) %s, beta %.3g", v22, v31, v5inf ? "exact" : "off", beta)};
}

Outcome c16_coupon() {
  std::mt19937_64 rng(19);
  std::size_t exact_mismatch = 0;
  double integral = 0.0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (int t = 0; t < 50; ++t) {
      std::vector<oracle::Rational> xr(n);
      std::vector<double> xd(n);
      for (std::size_t i = 0; i < n; ++i) {
        xr[i] = oracle::random_rational(rng);
        xd[i] = static_cast<double>(xr[i]);
      }
      const oracle::Rational perm = coupon_pn_perm<oracle::Rational>(xr);
      const oracle::Rational ie = coupon_pn_ie<oracle::Rational>(xr);
      if (perm != ie) ++exact_mismatch;
      integral = std::max(integral, std::abs(coupon_pn_integral(xd) - static_cast<double>(ie)));
    }
  double min_eig = oracle::kInf;
  double max_inv = -oracle::kInf;
  for (std::size_t n = 2; n <= 5; ++n) {
    const CouponProbeReport rep = coupon_convexity_probe(n, 1000, 42);
    min_eig = std::min(min_eig, rep.min_eigenvalue);
    max_inv = std::max(max_inv, rep.max_inverse_eigenvalue);
  }
  return {exact_mismatch == 0 && integral <= 1e-8 && min_eig >= -1e-5 && max_inv <= 1e-5,
          fmt("exact mismatches %zu, integral %.3g, min eig %.3g, 1/p max eig %.3g", exact_mismatch, integral,
              min_eig, max_inv)};
}

Outcome c17_duality() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ut(-2.0, 2.0), ucq(0.5, 1.5), ub(-2.0, 2.0);
  std::uniform_int_distribution<int> shape(0, 3);
  double min_gap = oracle::kInf;
  // Weak duality over a mix of smooth, kinked, indicator and 2-D instances.
  for (int t = 0; t < 100; ++t) {
    DualityGap r;
    if (t % 5 == 4) {
      const Grid g2 = Grid::parse("-2:2:41x-2:2:41");
      const Grid dual = Grid::parse("-3:3:21x-3:3:21");
      const ConvexSample s0 = ConvexSample::draw(rng, 0.1, 1.0, 1.0);
      const ConvexSample s1 = ConvexSample::draw(rng, 0.1, 1.0, 1.0);
      const GridFn f = tabulate(g2, [&](const Point& x) { return s0(x[0]) + s1(x[1]); });
      const GridFn g = atom(shape(rng) % 2 ? "norm" : "norm_half_sq", {shape(rng) == 0 ? oracle::kInf : 2.0}, g2);
      LinearMap T{2, 2, {ut(rng) / 2, ut(rng) / 2, ut(rng) / 2, ut(rng) / 2}};
      r = fenchel_duality_gap(f, g, T, dual);
    } else {
      const Grid gf = Grid::parse("-3:3:301");
      const Grid gg = Grid::parse("-6:6:601");
      const Grid dual = Grid::parse("-5:5:201");
      const ConvexSample sf = ConvexSample::draw(rng, 0.0, 1.0, 1.0);
      GridFn f = tabulate(gf, [&](const Point& x) { return sf(x[0]); });
      if (shape(rng) == 0) {
        const double a = ub(rng);
        f = atom("indicator", {std::min(a, a + 0.5), a + 0.5}, gf);
      }
      const ConvexSample sg = ConvexSample::draw(rng, 0.0, 1.0, 1.0);
      const GridFn g = shape(rng) == 0 ? atom("indicator", {-1, 0.5}, gg)
                                       : tabulate(gg, [&](const Point& x) { return sg(x[0]); });
      LinearMap T{1, 1, {ut(rng), 0, 0, 0}};
      r = fenchel_duality_gap(f, g, T, dual);
    }
    if (!r.gap.is_plus_inf()) min_gap = std::min(min_gap, r.gap.value());
  }
  // Finite-valued convex f and g: the continuity constraint qualification holds.
  // The kinks of f sit on nodes and g is smooth, so the sampled primal minimum
  // carries only O(h^2) error.
  double max_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    ConvexSample sf = ConvexSample::draw(rng, 0.5, 1.0, 0.5);
    sf.c = std::round(sf.c * 100.0) / 100.0;
    sf.d = std::round(sf.d * 100.0) / 100.0;
    ConvexSample sg = ConvexSample::draw(rng, 0.5, 1.0, 0.0);
    const GridFn f = tabulate(Grid::parse("-4:4:801"), [&](const Point& x) { return sf(x[0]); });
    const GridFn g = tabulate(Grid::parse("-8:8:1601"), [&](const Point& x) { return sg(x[0]); });
    const LinearMap T{1, 1, {ucq(rng), 0, 0, 0}};
    const DualityGap r = fenchel_duality_gap(f, g, T, Grid::parse("-10:10:2001"));
    max_gap = std::max(max_gap, r.gap.value());
  }
  return {min_gap >= -1e-9 && max_gap <= 1e-3, fmt("min gap %.3g, max CQ gap %.3g", min_gap, max_gap)};
}

}  // namespace

int main() {
  struct Check {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Check checks[] = {
      {1, "conjugate golden values", c01_conjugate_golden},
      {2, "exp and exp(exp) conjugates", c02_exp_conjugate},
      {3, "fast conjugate equals brute force", c03_oracle_equivalence},
      {4, "biconjugate fixpoint", c04_biconjugate},
      {5, "circle and norm inf-convolution", c05_circle_norm_infconv},
      {6, "conjugate of inf-convolution", c06_dual_identity},
      {7, "Moreau decomposition", c07_moreau_decomposition},
      {8, "Huber envelope", c08_huber},
      {9, "firm nonexpansivity of prox", c09_firm_nonexpansive},
      {10, "Yosida map is the envelope gradient", c10_yosida_gradient},
      {11, "Minty surjectivity probe", c11_minty},
      {12, "Fitzpatrick function", c12_fitzpatrick},
      {13, "Asplund sandwich", c13_asplund},
      {14, "gamma limit", c14_gamma_limit},
      {15, "ball volumes and beta", c15_ball_volumes},
      {16, "coupon collector forms", c16_coupon},
      {17, "Fenchel weak duality", c17_duality},
  };
  int failed = 0;
  for (const Check& c : checks) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %-38s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(std::size(checks)) - failed, std::size(checks));
  return failed == 0 ? 0 : 1;
}
