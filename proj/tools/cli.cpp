#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cca/atom.hpp"
#include "cca/error.hpp"
#include "cca/fenchel.hpp"
#include "cca/io.hpp"
#include "cca/monotone.hpp"
#include "cca/moreau.hpp"
#include "cca/renorm.hpp"
#include "cca/special.hpp"

namespace cca::cli {

namespace {

using io::Json;

const std::vector<std::string> kCommands = {"conjugate", "biconjugate", "infconv",   "envelope", "prox",
                                            "project",   "fitzpatrick", "resolvent", "renorm",   "coupon",
                                            "volume",    "gamma",       "duality"};

struct HelpRequested {
  std::string text;
};

double parse_real(const std::string& s, const char* what) {
  if (s == "inf" || s == "+inf") return kInf;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || std::isnan(v))
    throw UsageError(std::string("invalid number for ") + what + ": '" + s + "'");
  return v;
}

std::string catalog_list() {
  std::string s;
  for (const std::string& n : catalog_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

void check_atom(const FunctionSource& src) {
  if (!src.atom) return;
  try {
    (void)FnAtom::make(*src.atom, src.params);
  } catch (const CatalogError&) {
    throw UsageError("unknown atom '" + *src.atom + "'; available: " + catalog_list());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void check_grid(const std::optional<std::string>& g, const char* flag) {
  if (!g) return;
  try {
    (void)Grid::parse(*g);
  } catch (const Error& e) {
    throw UsageError(std::string("bad ") + flag + ": " + e.what());
  }
}

void add_function(CLI::App* sub, FunctionSource& src, const std::string& suffix) {
  sub->add_option("--atom" + suffix, src.atom, "catalog function name");
  sub->add_option("--params" + suffix, src.params, "atom parameters, comma separated")->delimiter(',');
  sub->add_option("--in" + suffix, src.file, "grid-function JSON file")->check(CLI::ExistingFile);
}

void require_function(const JobSpec& job, const FunctionSource& src, const std::string& suffix) {
  if (src.atom && src.file) throw UsageError("--atom" + suffix + " and --in" + suffix + " are mutually exclusive");
  if (!src.given()) throw UsageError(job.command + ": --atom" + suffix + " or --in" + suffix + " is required");
  if (src.atom && !job.grid) throw UsageError(job.command + ": --grid is required with --atom" + suffix);
  check_atom(src);
}

void require_point(const std::vector<double>& v, const char* flag, const std::string& cmd) {
  if (v.empty() || v.size() > 2) throw UsageError(cmd + ": " + flag + " needs one or two comma-separated numbers");
}

void validate(JobSpec& job) {
  const std::string& c = job.command;
  if (job.selftest) return;
  check_grid(job.grid, "--grid");
  check_grid(job.dual, "--dual");
  if (c == "conjugate" || c == "biconjugate" || c == "envelope" || c == "prox" || c == "resolvent")
    require_function(job, job.f, "");
  if (c == "infconv" || c == "duality") {
    require_function(job, job.f, "");
    require_function(job, job.g, "2");
  }
  if ((c == "conjugate" || c == "biconjugate" || c == "duality") && !job.dual)
    throw UsageError(c + ": --dual is required");
  if (c == "prox") require_point(job.x, "--x", c);
  if (c == "resolvent") require_point(job.x, "--z", c);
  if ((c == "envelope" || c == "prox" || c == "resolvent") && !(job.lambda > 0.0))
    throw UsageError(c + ": --lambda must be positive");
  if (c == "project") {
    require_point(job.x, "--x", c);
    if (job.lo.size() != job.x.size() || job.hi.size() != job.x.size())
      throw UsageError("project: --lo, --hi and --x need the same length");
  }
  if (c == "fitzpatrick") {
    if (!job.graph && !job.f.given()) throw UsageError("fitzpatrick: --graph or --atom/--in is required");
    if (!job.graph) require_function(job, job.f, "");
    require_point(job.x, "--x", c);
    if (job.xstar.size() != job.x.size()) throw UsageError("fitzpatrick: --xstar must match --x in length");
  }
  if (c == "renorm") {
    if (!job.grid) throw UsageError("renorm: --grid is required");
    if (job.steps < 0) throw UsageError("renorm: --steps must be >= 0");
    for (const std::string& nm : {job.norm1, job.norm2}) parse_real(nm, "--norm");
  }
  if (c == "coupon") {
    if (job.probe) {
      if (job.n < 2 || job.n > 10) throw UsageError("coupon --probe: --n must lie in [2, 10]");
    } else {
      if (job.x.empty()) throw UsageError("coupon: --x is required");
      if (job.n != 0 && static_cast<std::size_t>(job.n) != job.x.size())
        throw UsageError("coupon: --n does not match the length of --x");
      if (job.forms != "all" && job.forms != "perm" && job.forms != "ie" && job.forms != "integral")
        throw UsageError("coupon: --forms must be all, perm, ie or integral");
    }
  }
  if (c == "volume" && job.n < 1) throw UsageError("volume: --n must be >= 1");
  if (c == "gamma" && job.x.size() != 1) throw UsageError("gamma: --x needs exactly one number");
  if (c == "duality" && !job.matrix.empty() && job.matrix.size() != 1 && job.matrix.size() != 4)
    throw UsageError("duality: --matrix needs 1 or 4 entries (row-major)");
  if (!job.tol) {
    if (const char* env = std::getenv("CCA_TOL")) job.tol = parse_real(env, "CCA_TOL");
  }
}

// ---------------------------------------------------------------------------

GridFn load(const FunctionSource& src, const std::optional<std::string>& grid) {
  if (src.file) return io::grid_fn_from_json(Json::parse(io::read_file(*src.file)));
  return sample(FnAtom::make(*src.atom, src.params), Grid::parse(*grid));
}

Point to_point(const std::vector<double>& v) { return {v.empty() ? 0.0 : v[0], v.size() > 1 ? v[1] : 0.0}; }

Json point_json(const Point& p, std::size_t dim) {
  Json a = Json::array();
  for (std::size_t d = 0; d < dim; ++d) a.push_back(p[d]);
  return a;
}

Json report(const char* kind) { return Json{{"schema", 1}, {"kind", kind}}; }

void emit(const JobSpec& job, const Json& j, std::ostream& out) {
  const std::string text = io::dump(j);
  if (job.out) {
    io::write_atomic(*job.out, text);
  } else {
    out << text;
  }
}

// GridFn results go to CSV when --out ends in .csv, JSON otherwise.
void emit_fn(const JobSpec& job, const GridFn& f, Json extra, std::ostream& out) {
  if (job.out && std::filesystem::path(*job.out).extension() == ".csv") {
    io::write_atomic(*job.out, io::to_csv(f));
    return;
  }
  Json j{{"schema", 1}};
  const Json fn = io::to_json(f);
  for (auto& [k, v] : fn.items()) j[k] = v;
  for (auto& [k, v] : extra.items()) j[k] = v;
  emit(job, j, out);
}

FnAtom norm_atom(const std::string& p) { return FnAtom::make("norm", {parse_real(p, "--norm")}); }

int run_renorm(const JobSpec& job, std::ostream& out) {
  NormPair pair = init_pair(norm_atom(job.norm1), norm_atom(job.norm2), Grid::parse(*job.grid));
  Json iters = Json::array();
  const auto record = [&](const NormPair& pr) {
    iters.push_back(Json{{"n", pr.n}, {"r_n", ratio_bounds(pr).max}, {"bound", std::ldexp(pr.C, -2 * pr.n)},
                         {"region", pr.region()}});
    if (job.dump_dir) {
      const std::filesystem::path dir(*job.dump_dir);
      std::filesystem::create_directories(dir);
      const std::string n = std::to_string(pr.n);
      io::write_atomic(dir / ("p_" + n + ".json"), io::dump(io::to_json(pr.p)));
      io::write_atomic(dir / ("q_" + n + ".json"), io::dump(io::to_json(pr.q)));
    }
  };
  record(pair);
  for (int s = 0; s < job.steps; ++s) {
    pair = asplund_step(pair, job.tol.value_or(-1.0));
    record(pair);
  }
  Json j = report("renorm");
  j["C"] = pair.C;
  j["swapped"] = pair.swapped;
  j["iterations"] = std::move(iters);
  emit(job, j, out);
  return 0;
}

int run_coupon(const JobSpec& job, std::ostream& out) {
  if (job.probe) {
    const CouponProbeReport r = coupon_convexity_probe(static_cast<std::size_t>(job.n), job.trials, job.seed);
    Json j = report("coupon_probe");
    j["n"] = r.n;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["min_eigenvalue"] = r.min_eigenvalue;
    j["min_point"] = r.min_point;
    j["max_inverse_eigenvalue"] = r.max_inverse_eigenvalue;
    j["max_inverse_point"] = r.max_inverse_point;
    j["min_log_eigenvalue"] = r.min_log_eigenvalue;
    emit(job, j, out);
    return 0;
  }
  const std::span<const double> x(job.x);
  Json j = report("coupon");
  j["n"] = job.x.size();
  j["x"] = job.x;
  Json values = Json::object();
  const bool all = job.forms == "all";
  if (all || job.forms == "perm") values["perm"] = coupon_pn_perm<double>(x);
  if (all || job.forms == "ie") values["ie"] = coupon_pn_ie<double>(x);
  if (all || job.forms == "integral") values["integral"] = coupon_pn_integral(x);
  double spread = 0.0;
  for (auto& [k1, v1] : values.items())
    for (auto& [k2, v2] : values.items()) spread = std::max(spread, std::abs(v1.get<double>() - v2.get<double>()));
  j["values"] = std::move(values);
  j["max_discrepancy"] = spread;
  emit(job, j, out);
  return 0;
}

int dispatch(const JobSpec& job, std::ostream& out) {
  const std::string& c = job.command;
  if (c == "conjugate") {
    const ConjugateResult r = conjugate(load(job.f, job.grid), Grid::parse(*job.dual));
    emit_fn(job, r.dual, Json{{"argmax", r.argmax}}, out);
  } else if (c == "biconjugate") {
    emit_fn(job, biconjugate(load(job.f, job.grid), Grid::parse(*job.dual)), Json::object(), out);
  } else if (c == "infconv") {
    const InfConvResult r = inf_convolution(load(job.f, job.grid), load(job.g, job.grid));
    emit_fn(job, r.value, Json{{"argmin", r.argmin}}, out);
  } else if (c == "envelope") {
    emit_fn(job, moreau_envelope(load(job.f, job.grid), job.lambda), Json::object(), out);
  } else if (c == "prox") {
    const GridFn f = load(job.f, job.grid);
    const ProxResult r = ProxOperator(f, job.lambda, job.tol.value_or(kConvexityTol))(to_point(job.x));
    Json j = report("prox");
    j["x"] = point_json(r.query, f.dim());
    j["prox"] = point_json(r.point, f.dim());
    j["envelope"] = r.envelope;
    j["lambda"] = r.lambda;
    j["certificate_eps"] = r.certificate_eps;
    j["on_grid_boundary"] = r.on_grid_boundary;
    emit(job, j, out);
  } else if (c == "resolvent") {
    const GridFn f = load(job.f, job.grid);
    const ResolventResult r = resolvent(f, job.lambda, to_point(job.x));
    Json j = report("resolvent");
    j["z"] = point_json(to_point(job.x), f.dim());
    j["x"] = point_json(r.x, f.dim());
    j["y"] = point_json(r.y, f.dim());
    j["lambda"] = r.lambda;
    j["certificate_eps"] = r.certificate_eps;
    j["widen_grid"] = r.on_grid_boundary;
    emit(job, j, out);
  } else if (c == "project") {
    const Box box{job.x.size(), to_point(job.lo), to_point(job.hi)};
    Json j = report("project");
    j["x"] = job.x;
    j["projection"] = point_json(project(box, to_point(job.x)), box.dim);
    emit(job, j, out);
  } else if (c == "fitzpatrick") {
    const OperatorGraph g = job.graph ? io::graph_from_json(Json::parse(io::read_file(*job.graph)))
                                      : difference_graph(load(job.f, job.grid));
    if (g.dim() != job.x.size()) throw DimensionError("fitzpatrick: query dimension differs from the graph");
    const GraphPair qp{to_point(job.x), to_point(job.xstar)};
    const FitzpatrickEval e = fitzpatrick(g, qp);
    const MonotonicityReport m = is_monotone(g, job.tol);
    Json j = report("fitzpatrick");
    j["x"] = job.x;
    j["xstar"] = job.xstar;
    j["value"] = e.value;
    j["index"] = e.index;
    j["pairing"] = qp.x[0] * qp.xs[0] + qp.x[1] * qp.xs[1];
    j["graph_size"] = g.size();
    j["monotone"] = m.monotone;
    emit(job, j, out);
  } else if (c == "renorm") {
    return run_renorm(job, out);
  } else if (c == "coupon") {
    return run_coupon(job, out);
  } else if (c == "volume") {
    Json j = report("volume");
    j["n"] = job.n;
    j["p"] = job.p;
    j["volume"] = ball_volume(job.n, job.p);
    if (job.q) {
      const LogConcavityResult r = log_concavity_check(job.n, job.p, *job.q, job.lambda);
      j["log_concavity"] = Json{{"q", *job.q}, {"lambda", job.lambda}, {"lhs", r.lhs}, {"rhs", r.rhs},
                                {"holds", r.holds}, {"degenerate", r.degenerate}};
    }
    emit(job, j, out);
  } else if (c == "gamma") {
    Json j = report("gamma");
    j["x"] = job.x[0];
    j["n"] = job.terms;
    j["value"] = gamma_limit(job.x[0], job.terms);
    j["gamma"] = gamma(job.x[0]);
    emit(job, j, out);
  } else if (c == "duality") {
    const GridFn f = load(job.f, job.grid);
    const GridFn g = load(job.g, job.grid);
    LinearMap T = LinearMap::identity(f.dim());
    if (job.matrix.size() == 1) {
      T.m = {job.matrix[0], 0.0, 0.0, 0.0};
    } else if (job.matrix.size() == 4) {
      T = LinearMap{2, 2, {job.matrix[0], job.matrix[1], job.matrix[2], job.matrix[3]}};
    }
    const DualityGap r = fenchel_duality_gap(f, g, T, Grid::parse(*job.dual));
    Json j = report("duality");
    j["primal"] = r.primal.value();
    j["dual"] = r.dual.value();
    j["gap"] = r.gap.value();
    j["truncation_warning"] = r.truncation_warning;
    emit(job, j, out);
  }
  return 0;
}

}  // namespace

JobSpec parse_args(const std::vector<std::string>& args) {
  JobSpec job;
  CLI::App app("Computational convex analysis toolkit", "cca");
  app.require_subcommand(1);
  app.set_help_flag("-h,--help", "show help");
  std::string p_text = "2";

  for (const std::string& name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_flag("--selftest", job.selftest, "run this subcommand's golden examples");
    sub->add_option("--out", job.out, "output file (.csv or .json); stdout otherwise");
    sub->add_option("--tol", job.tol, "tolerance override (default: CCA_TOL)");
    if (name == "renorm" || name == "coupon" || name == "volume" || name == "gamma" || name == "project") {
      if (name == "renorm") {
        sub->add_option("--grid", job.grid, "symmetric 2-D grid lo:hi:nxlo:hi:n");
        sub->add_option("--norm1", job.norm1, "p of the first norm (1, 2, inf, ...)");
        sub->add_option("--norm2", job.norm2, "p of the second norm");
        sub->add_option("--steps", job.steps, "number of averaging steps");
        sub->add_option("--dump-dir", job.dump_dir, "directory for p_n/q_n grid-function dumps");
      } else if (name == "coupon") {
        sub->add_option("--n", job.n, "N");
        sub->add_option("--x", job.x, "positive coordinates, comma separated")->delimiter(',');
        sub->add_option("--forms", job.forms, "all, perm, ie or integral");
        sub->add_flag("--probe", job.probe, "run the Hessian convexity probe instead");
        sub->add_option("--trials", job.trials, "probe trials");
        sub->add_option("--seed", job.seed, "probe seed");
      } else if (name == "volume") {
        sub->add_option("--n", job.n, "dimension");
        sub->add_option("--p", p_text, "exponent p >= 1 or inf");
        sub->add_option("--q", job.q, "second exponent for the log-concavity check");
        sub->add_option("--lambda", job.lambda, "interpolation weight for the log-concavity check");
      } else if (name == "gamma") {
        sub->add_option("--x", job.x, "x > 0")->delimiter(',');
        sub->add_option("--n", job.terms, "number of factors");
      } else {
        sub->add_option("--x", job.x, "point")->delimiter(',');
        sub->add_option("--lo", job.lo, "box lower corner")->delimiter(',');
        sub->add_option("--hi", job.hi, "box upper corner")->delimiter(',');
      }
      continue;
    }
    add_function(sub, job.f, "");
    sub->add_option("--grid", job.grid, "grid lo:hi:n[xlo:hi:n] for atoms");
    if (name == "infconv" || name == "duality") add_function(sub, job.g, "2");
    if (name == "conjugate" || name == "biconjugate" || name == "duality")
      sub->add_option("--dual", job.dual, "dual grid");
    if (name == "duality") sub->add_option("--matrix", job.matrix, "T, row-major")->delimiter(',');
    if (name == "envelope" || name == "prox" || name == "resolvent") sub->add_option("--lambda", job.lambda, "lambda > 0");
    if (name == "prox") sub->add_option("--x", job.x, "query point")->delimiter(',');
    if (name == "resolvent") sub->add_option("--z", job.x, "target point")->delimiter(',');
    if (name == "fitzpatrick") {
      sub->add_option("--graph", job.graph, "operator-graph JSON file")->check(CLI::ExistingFile);
      sub->add_option("--x", job.x, "query x")->delimiter(',');
      sub->add_option("--xstar", job.xstar, "query x*")->delimiter(',');
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  job.command = app.get_subcommands().front()->get_name();
  if (job.command == "volume") job.p = parse_real(p_text, "--p");
  validate(job);
  return job;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  if (job.selftest) return selftest(job.command, out);
  try {
    return dispatch(job, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  JobSpec job;
  try {
    job = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  return run(job, out, err);
}

}  // namespace cca::cli
