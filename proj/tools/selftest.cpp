#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "cca/atom.hpp"
#include "cca/error.hpp"
#include "cca/fenchel.hpp"
#include "cca/monotone.hpp"
#include "cca/moreau.hpp"
#include "cca/renorm.hpp"
#include "cca/special.hpp"
#include "cli.hpp"

namespace cca::cli {

namespace {

struct Case {
  std::string name;
  std::function<bool()> check;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

GridFn atom(const std::string& name, std::vector<double> params, const std::string& grid) {
  return sample(FnAtom::make(name, std::move(params)), Grid::parse(grid));
}

double value_at(const GridFn& f, double x) { return f[f.grid().nearest({x, 0.0})]; }

std::vector<Case> conjugate_cases() {
  return {
      {"power 2 at y = 1",
       [] {
         const GridFn f = atom("power", {2}, "-5:5:1001");
         return near(conjugate(f, Grid::parse("1:2:2")).dual[0], 0.5, 1e-4);
       }},
      {"exp at y = 1",
       [] {
         const GridFn f = atom("exp", {}, "-10:3:2001");
         return near(conjugate(f, Grid::parse("1:2:2")).dual[0], -1.0, 1e-3);
       }},
      {"indicator of [-1, 1] gives |y|",
       [] {
         const GridFn f = atom("indicator", {-1, 1}, "-2:2:401");
         const Grid dual = Grid::parse("-3:3:61");
         const GridFn c = conjugate(f, dual).dual;
         for (std::size_t k = 0; k < dual.size(); ++k)
           if (!near(c[k], std::abs(dual.node(k)[0]), 1e-12)) return false;
         return true;
       }},
  };
}

std::vector<Case> biconjugate_cases() {
  return {
      {"abs is a fixpoint",
       [] {
         const GridFn f = atom("abs", {}, "-2:2:401");
         const GridFn b = biconjugate(f, Grid::parse("-1:1:201"));
         for (std::size_t k = 0; k < f.size(); ++k)
           if (!near(b[k], f[k], 1e-9)) return false;
         return true;
       }},
      {"double well hull at 0",
       [] {
         const GridFn f = atom("double_well", {1}, "-3:3:601");
         const GridFn b = biconjugate(f, Grid::parse("-1:1:201"));
         return near(value_at(b, 0.0), 0.0, 1e-9) && near(value_at(f, 0.0), 1.0, 1e-12);
       }},
      {"cube on [0, 1] is a fixpoint",
       [] {
         const GridFn f = atom("cube", {}, "0:1:101");
         const GridFn b = biconjugate(f, Grid::parse("-1:4:20001"));
         for (std::size_t k = 0; k < f.size(); ++k)
           if (!near(b[k], f[k], 1e-6)) return false;
         return true;
       }},
  };
}

std::vector<Case> infconv_cases() {
  const auto fig = [] {
    return inf_convolution(atom("negsqrt_circle", {}, "-2:2:4001"), atom("abs", {}, "-2:2:4001")).value;
  };
  return {
      {"circle [] abs at x = 1", [fig] { return near(value_at(fig(), 1.0), 1.0 - std::numbers::sqrt2, 2e-3); }},
      {"circle [] abs at x = 0.5", [fig] { return near(value_at(fig(), 0.5), -std::sqrt(0.75), 2e-3); }},
      {"indicator of {0} is the identity",
       [] {
         const GridFn f = atom("exp", {}, "-2:2:41");
         const GridFn z = atom("indicator", {0, 0}, "-2:2:41");
         const GridFn r = inf_convolution(f, z).value;
         for (std::size_t k = 0; k < f.size(); ++k)
           if (r[k] != f[k]) return false;
         return true;
       }},
  };
}

std::vector<Case> envelope_cases() {
  return {
      {"Huber at 0.5 and 2",
       [] {
         const GridFn e = moreau_envelope(atom("abs", {}, "-3:3:601"), 1.0);
         return near(value_at(e, 0.5), 0.125, 1e-6) && near(value_at(e, 2.0), 1.5, 1e-6);
       }},
      {"indicator of {0} gives x^2 / 2",
       [] {
         const GridFn e = moreau_envelope(atom("indicator", {0, 0}, "-2:2:41"), 1.0);
         return near(value_at(e, 1.0), 0.5, 1e-12);
       }},
      {"power 2 gives x^2 / 4",
       [] {
         const GridFn e = moreau_envelope(atom("power", {2}, "-4:4:801"), 1.0);
         return near(value_at(e, 2.0), 1.0, 1e-6);
       }},
  };
}

std::vector<Case> prox_cases() {
  return {
      {"indicator clamps", [] { return near(prox(atom("indicator", {-1, 1}, "-4:4:801"), 1, {3, 0}).point[0], 1, 1e-9); }},
      {"abs dead zone", [] { return near(prox(atom("abs", {}, "-4:4:801"), 1, {0.4, 0}).point[0], 0, 1e-9); }},
      {"abs shrink", [] { return near(prox(atom("abs", {}, "-4:4:801"), 1, {3, 0}).point[0], 2, 1e-9); }},
  };
}

std::vector<Case> project_cases() {
  return {
      {"interval", [] { return project({1, {-1, 0}, {1, 0}}, {3, 0})[0] == 1.0; }},
      {"square",
       [] {
         const Point p = project({2, {-1, -1}, {1, 1}}, {3, 0.5});
         return p[0] == 1.0 && p[1] == 0.5;
       }},
      {"singleton", [] { return project({1, {0, 0}, {0, 0}}, {7, 0})[0] == 0.0; }},
  };
}

OperatorGraph identity_graph() {
  std::vector<GraphPair> pairs;
  for (int i = 0; i <= 400; ++i) {
    const double x = -2.0 + 0.01 * i;
    pairs.push_back({{x, 0}, {x, 0}});
  }
  return OperatorGraph(1, pairs);
}

std::vector<Case> fitzpatrick_cases() {
  return {
      {"graph point", [] { return near(fitzpatrick(identity_graph(), {{1, 0}, {1, 0}}).value, 1.0, 1e-8); }},
      {"off-graph point", [] { return near(fitzpatrick(identity_graph(), {{1, 0}, {-1, 0}}).value, 0.0, 1e-12); }},
      {"singleton graph",
       [] { return fitzpatrick(OperatorGraph(1, {{{0, 0}, {0, 0}}}), {{3, 0}, {-5, 0}}).value == 0.0; }},
  };
}

std::vector<Case> resolvent_cases() {
  return {
      {"power 2",
       [] {
         const ResolventResult r = resolvent(atom("power", {2}, "-4:4:801"), 1, {2, 0});
         return near(r.x[0], 1, 1e-6) && near(r.y[0], 1, 1e-6);
       }},
      {"indicator normal cone",
       [] {
         const ResolventResult r = resolvent(atom("indicator", {-1, 1}, "-4:4:801"), 1, {3, 0});
         return near(r.x[0], 1, 1e-9) && near(r.y[0], 2, 1e-9);
       }},
      {"origin",
       [] {
         const ResolventResult r = resolvent(atom("abs", {}, "-4:4:801"), 1, {0, 0});
         return r.x[0] == 0.0 && r.y[0] == 0.0;
       }},
  };
}

std::vector<Case> renorm_cases() {
  const Grid g = Grid::parse("-2:2:41x-2:2:41");
  return {
      {"l1 / l2 constant", [g] { return near(init_pair(FnAtom::make("norm", {1}), FnAtom::make("norm", {2}), g).C, 1, 1e-12); }},
      {"l2 / l2 constant", [g] { return init_pair(FnAtom::make("norm", {2}), FnAtom::make("norm", {2}), g).C == 0.0; }},
      {"linf / l2 swapped",
       [g] {
         const NormPair p = init_pair(FnAtom::make("norm", {kInf}), FnAtom::make("norm", {2}), g);
         return p.swapped && near(p.C, 1, 1e-12);
       }},
      {"one step contracts",
       [] {
         const NormPair p0 =
             init_pair(FnAtom::make("norm", {1}), FnAtom::make("norm", {2}), Grid::parse("-4:4:81x-4:4:81"));
         const NormPair p1 = asplund_step(p0);
         return ratio_bounds(p1).max <= p0.C / 4 + 10 * p0.p.grid().max_spacing();
       }},
  };
}

std::vector<Case> coupon_cases() {
  return {
      {"N = 1", [] { return near(coupon_pn_perm<double>(std::vector<double>{2}), 0.5, 1e-15); }},
      {"N = 2 forms",
       [] {
         const std::vector<double> x{1, 1};
         return near(coupon_pn_perm<double>(x), 1.5, 1e-14) && near(coupon_pn_ie<double>(x), 1.5, 1e-14) &&
                near(coupon_pn_integral(x), 1.5, 1e-8);
       }},
      {"N = 3 forms agree",
       [] {
         const std::vector<double> x{1, 2, 3};
         const double ie = coupon_pn_ie<double>(x);
         return near(coupon_pn_perm<double>(x), ie, 1e-13) && near(coupon_pn_integral(x), ie, 1e-8);
       }},
  };
}

std::vector<Case> volume_cases() {
  return {
      {"V_2(2) = pi", [] { return near(ball_volume(2, 2.0), std::numbers::pi, 1e-12); }},
      {"V_3(1) = 4/3", [] { return near(ball_volume(3, 1.0), 4.0 / 3.0, 1e-12); }},
      {"V_5(inf) = 32", [] { return ball_volume(5, kInf) == 32.0; }},
      {"log-concavity", [] { return log_concavity_check(2, 1.5, 3, 0.5).holds; }},
  };
}

std::vector<Case> gamma_cases() {
  return {
      {"x = 1", [] { return near(gamma_limit(1.0, 1000), 1000.0 / 1001.0, 1e-13); }},
      {"x = 1/2", [] { return near(gamma_limit(0.5, 1000000), std::sqrt(std::numbers::pi), 1e-5); }},
      {"x = 3", [] { return near(gamma_limit(3.0, 1000000), 2.0, 1e-4); }},
  };
}

std::vector<Case> duality_cases() {
  const Grid dual = Grid::parse("-3:3:601");
  return {
      {"power 2 + power 2",
       [dual] {
         const GridFn f = atom("power", {2}, "-4:4:801");
         return fenchel_duality_gap(f, f, LinearMap::identity(1), dual).gap.value() <= 1e-6;
       }},
      {"indicator [1, 2] + abs",
       [dual] {
         const DualityGap r = fenchel_duality_gap(atom("indicator", {1, 2}, "-4:4:801"), atom("abs", {}, "-4:4:801"),
                                                  LinearMap::identity(1), dual);
         return near(r.primal.value(), 1, 1e-9) && near(r.dual.value(), 1, 1e-6);
       }},
      {"singletons",
       [dual] {
         const GridFn z = atom("indicator", {0, 0}, "-4:4:801");
         const DualityGap r = fenchel_duality_gap(z, z, LinearMap::identity(1), dual);
         return r.primal.value() == 0.0 && near(r.dual.value(), 0, 1e-12);
       }},
  };
}

}  // namespace

int selftest(const std::string& command, std::ostream& out) {
  std::vector<Case> cases;
  if (command == "conjugate") cases = conjugate_cases();
  else if (command == "biconjugate") cases = biconjugate_cases();
  else if (command == "infconv") cases = infconv_cases();
  else if (command == "envelope") cases = envelope_cases();
  else if (command == "prox") cases = prox_cases();
  else if (command == "project") cases = project_cases();
  else if (command == "fitzpatrick") cases = fitzpatrick_cases();
  else if (command == "resolvent") cases = resolvent_cases();
  else if (command == "renorm") cases = renorm_cases();
  else if (command == "coupon") cases = coupon_cases();
  else if (command == "volume") cases = volume_cases();
  else if (command == "gamma") cases = gamma_cases();
  else if (command == "duality") cases = duality_cases();
  std::size_t passed = 0;
  for (const Case& c : cases) {
    bool ok = false;
    try {
      ok = c.check();
    } catch (const std::exception& e) {
      out << "  error in '" << c.name << "': " << e.what() << '\n';
    }
    out << (ok ? "  pass  " : "  FAIL  ") << c.name << '\n';
    if (ok) ++passed;
  }
  out << command << " selftest: " << passed << " passed, " << cases.size() - passed << " failed\n";
  return passed == cases.size() ? 0 : 1;
}

}  // namespace cca::cli
