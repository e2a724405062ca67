#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "steklov/steklov.hpp"

namespace steklov::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("invalid number '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, char sep, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(parse_double(std::string_view(text).substr(start, pos - start), what));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& text, std::string_view what) {
  const std::vector<double> v = parse_list(text, ':', what);
  if (v.size() != 2 || !(v[0] < v[1])) throw UsageError(std::string(what) + " must be lo:hi with lo < hi");
  return {v[0], v[1]};
}

struct ObjectiveArgs {
  std::string poly;
  std::string builtin;

  void attach(CLI::App* cmd) {
    cmd->add_option("--poly", poly, "Polynomial coefficients, highest degree first (e.g. 1,-8,-18,56,0)");
    cmd->add_option("--builtin", builtin, "Named objective")
        ->check(CLI::IsMember(builtin_names()));
  }

  ObjectiveFunction resolve() const {
    if (poly.empty() == builtin.empty()) throw UsageError("give exactly one of --poly or --builtin");
    if (!builtin.empty()) return steklov::builtin(builtin);
    const std::vector<double> desc = parse_list(poly, ',', "--poly");
    return ObjectiveFunction::from_polynomial(Polynomial::from_descending(desc), "polynomial");
  }
};

struct RunArgs {
  ObjectiveArgs objective;
  std::string method = "steklov";
  std::optional<double> t0;
  std::string t0_mode = "convexify";
  std::string bracket;
  double rtol = 1e-8;
  double atol = 1e-12;
  long max_steps = 1000000;
  bool verify = false;
  std::string xrange;

  void attach(CLI::App* cmd) {
    objective.attach(cmd);
    cmd->add_option("--method", method, "Trajectory algorithm")
        ->check(CLI::IsMember({"steklov", "steklov-quartic", "quadratic"}));
    cmd->add_option("--t0", t0, "Starting regularization parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--t0-mode", t0_mode, "How t0 is chosen when --t0 is absent")
        ->check(CLI::IsMember({"convexify", "quasi-convexify"}));
    cmd->add_option("--bracket", bracket, "Search interval lo:hi for convexifying non-polynomials");
    cmd->add_option("--rtol", rtol, "Relative tolerance of the ODE solver")->check(CLI::PositiveNumber);
    cmd->add_option("--atol", atol, "Absolute tolerance of the ODE solver")->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", max_steps, "Step budget of the ODE solver")->check(CLI::PositiveNumber);
    cmd->add_flag("--verify", verify, "Check the result against the brute-force oracle");
    cmd->add_option("--xrange", xrange, "Oracle search interval lo:hi for non-polynomials (default -20:20)");
  }
};

Method method_of(const std::string& name) {
  if (name == "steklov-quartic") return Method::SteklovQuartic;
  if (name == "quadratic") return Method::Quadratic;
  return Method::Steklov;
}

void validate_for_method(const ObjectiveFunction& obj, Method method) {
  if (method == Method::SteklovQuartic) {
    if (!obj.poly || obj.poly->degree() != 4 || !obj.poly->is_monic()) {
      throw UsageError("steklov-quartic needs a monic quartic (leading coefficient 1, degree 4)");
    }
    return;
  }
  if (obj.poly) {
    const Polynomial& p = *obj.poly;
    if (p.degree() < 2 || p.degree() % 2 != 0 || !p.is_monic()) {
      throw UsageError("trajectory methods need an even-degree polynomial with leading coefficient 1");
    }
  }
}

RunResult execute(const RunArgs& a, const ObjectiveFunction& obj) {
  const Method method = method_of(a.method);
  validate_for_method(obj, method);
  RunConfig cfg;
  cfg.t0 = a.t0;
  cfg.t0_mode = a.t0 ? T0Mode::Explicit : (a.t0_mode == "quasi-convexify" ? T0Mode::QuasiConvexify : T0Mode::Convexify);
  cfg.rtol = a.rtol;
  cfg.atol = a.atol;
  cfg.max_steps = a.max_steps;
  if (!a.bracket.empty()) cfg.bracket = parse_range(a.bracket, "--bracket");
  switch (method) {
    case Method::SteklovQuartic: return run_steklov_quartic(*obj.poly, cfg);
    case Method::Quadratic: return run_quadratic(obj, cfg);
    case Method::Steklov: break;
  }
  return run_steklov(obj, cfg);
}

OracleResult oracle_for(const RunArgs& a, const ObjectiveFunction& obj) {
  if (obj.poly) return poly_global_min(*obj.poly);
  const auto [lo, hi] = a.xrange.empty() ? std::pair{-20.0, 20.0} : parse_range(a.xrange, "--xrange");
  return grid_global_min(obj, lo, hi, 100000);
}

int exit_for(const RunResult& r) { return r.status == TrajectoryStatus::ReachedZero ? kSuccess : kFailure; }

int cmd_minimize(const RunArgs& a, const std::string& format, std::ostream& out, std::ostream& err) {
  const ObjectiveFunction obj = a.objective.resolve();
  const RunResult r = execute(a, obj);
  std::optional<Classification> verdict;
  if (a.verify && r.status == TrajectoryStatus::ReachedZero) verdict = classify(r, oracle_for(a, obj));

  std::vector<std::string> warnings = r.warnings;
  if (verdict && verdict->verdict == Verdict::LocalOnly) warnings.emplace_back("local minimum (oracle check)");

  if (format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["method"] = std::string(to_string(r.method));
    j["objective"] = obj.label;
    j["status"] = std::string(to_string(r.status));
    j["x_final"] = r.x_final;
    j["f_final"] = r.f_final;
    j["minimizers"] = r.minimizers;
    j["t0"] = r.start.t0;
    j["x0"] = r.start.x0;
    j["start_mode"] = std::string(to_string(r.start.mode));
    j["start_residual"] = r.start.residual;
    j["steps"] = r.trajectory.steps_taken;
    j["rtol"] = a.rtol;
    if (verdict) {
      j["verdict"] = std::string(to_string(verdict->verdict));
      j["gap"] = verdict->gap;
    }
    j["warnings"] = warnings;
    out << j.dump(2) << '\n';
  } else {
    out << "method: " << to_string(r.method) << '\n';
    out << "status: " << to_string(r.status) << '\n';
    out << "x_final: " << num(r.x_final) << '\n';
    out << "f_final: " << num(r.f_final) << '\n';
    if (r.minimizers.size() > 1) {
      out << "minimizers:";
      for (double m : r.minimizers) out << ' ' << num(m);
      out << '\n';
    }
    out << "t0: " << num(r.start.t0) << '\n';
    out << "x0: " << num(r.start.x0) << '\n';
    out << "steps: " << r.trajectory.steps_taken << '\n';
    if (verdict) out << "verdict: " << to_string(verdict->verdict) << '\n';
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }
  return exit_for(r);
}

int cmd_trajectory(const RunArgs& a, const std::string& path, std::ostream& out) {
  const ObjectiveFunction obj = a.objective.resolve();
  const RunResult r = execute(a, obj);
  std::optional<Classification> verdict;
  if (a.verify && r.status == TrajectoryStatus::ReachedZero) verdict = classify(r, oracle_for(a, obj));

  std::ostringstream csv;
  const bool quadratic = r.method == Method::Quadratic;
  csv << (quadratic ? "t,x,phi_x,phi_xx\n" : "t,x,mu_x,mu_xx\n");
  const double small_t = 1e-4 * r.start.t0;
  for (const Sample& s : r.trajectory.samples) {
    const double x = r.depressed ? r.depressed->to_original(s.x) : s.x;
    double d1 = 0.0;
    double d2 = 0.0;
    if (quadratic) {
      const QuadPartials q = quad_partials(obj, x, s.t);
      d1 = q.phi_x;
      d2 = q.phi_xx;
    } else {
      const SteklovPartials m = steklov_partials_continued(obj, x, s.t, small_t);
      d1 = m.mu_x;
      d2 = m.mu_xx;
    }
    csv << num(s.t) << ',' << num(x) << ',' << num(d1) << ',' << num(d2) << '\n';
  }
  csv << "# status=" << to_string(r.status);
  if (verdict) csv << " verdict=" << to_string(verdict->verdict);
  csv << '\n';

  if (path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << csv.str();
  }
  return exit_for(r);
}

struct SurfaceArgs {
  ObjectiveArgs objective;
  double t0 = 0.0;
  std::string xrange;
  std::string grid = "200,50";
  std::string regularizer = "steklov";
  std::string out;
};

int cmd_surface(const SurfaceArgs& a, std::ostream& out) {
  const ObjectiveFunction obj = a.objective.resolve();
  const auto [lo, hi] = parse_range(a.xrange, "--xrange");
  const std::vector<double> g = parse_list(a.grid, ',', "--grid");
  if (g.empty() || g.size() > 2) throw UsageError("--grid must be nx or nx,nt");
  const double nxd = g[0];
  const double ntd = g.size() > 1 ? g[1] : 50.0;
  if (nxd < 2 || ntd < 2 || nxd != std::floor(nxd) || ntd != std::floor(ntd) || nxd * ntd > 1e8) {
    throw UsageError("--grid counts must be integers of at least 2");
  }
  const long nx = static_cast<long>(nxd);
  const long nt = static_cast<long>(ntd);
  const bool steklov = a.regularizer == "steklov";

  std::ostringstream csv;
  csv << "x,t,value\n";
  for (long j = 0; j < nt; ++j) {
    const double t = a.t0 * static_cast<double>(j) / static_cast<double>(nt - 1);
    for (long i = 0; i < nx; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nx - 1);
      double v = 0.0;
      if (steklov) {
        v = t > 0.0 ? steklov_value(obj, x, t) : obj.f(x);
      } else {
        v = obj.f(x) + 0.5 * t * x * x;
      }
      csv << num(x) << ',' << num(t) << ',' << num(v) << '\n';
    }
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.out);
    f << csv.str();
  }
  return kSuccess;
}

struct BenchArgs {
  std::vector<int> degrees{4, 6, 8, 10, 12, 14, 20};
  int samples = 1000;
  std::uint64_t seed = 0;
  std::string method = "both";
  std::vector<std::string> outs;
  unsigned threads = 0;
  double rtol = 1e-8;
  long max_steps = 1000000;
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  for (const auto& path : a.outs) {
    if (!ends_with(path, ".csv") && !ends_with(path, ".json")) throw UsageError("--out files must end in .csv or .json");
  }
  for (int d : a.degrees) {
    if (d < 4 || d % 2 != 0) throw UsageError("--degrees must be even and at least 4");
  }
  const BenchMethod method = a.method == "steklov" ? BenchMethod::Steklov
                             : a.method == "quadratic" ? BenchMethod::Quadratic
                                                       : BenchMethod::Both;
  BenchOptions opts;
  opts.threads = a.threads;
  opts.rtol = a.rtol;
  opts.max_steps = a.max_steps;
  const BenchReport report = run_failure_table(a.degrees, a.samples, method, T0Map::defaults(), a.seed, opts);
  out << report.to_table();
  for (const auto& path : a.outs) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << (ends_with(path, ".csv") ? report.to_csv() : report.to_json());
  }
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Global minimization of univariate functions by Steklov-regularization trajectories", "steklov"};
  app.require_subcommand(1);

  RunArgs minimize_args;
  std::string format = "text";
  CLI::App* minimize = app.add_subcommand("minimize", "Run one trajectory algorithm and report the minimizer");
  minimize_args.attach(minimize);
  minimize->add_option("--out", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  RunArgs traj_args;
  std::string traj_path;
  CLI::App* trajectory = app.add_subcommand("trajectory", "Write the accepted trajectory steps as CSV");
  traj_args.attach(trajectory);
  trajectory->add_option("--out", traj_path, "CSV file (default: standard output)");

  SurfaceArgs surf;
  CLI::App* surface = app.add_subcommand("surface", "Write the regularized function on an (x, t) grid as CSV");
  surf.objective.attach(surface);
  surface->add_option("--t0", surf.t0, "Largest t of the grid")->required()->check(CLI::PositiveNumber);
  surface->add_option("--xrange", surf.xrange, "x interval lo:hi")->required();
  surface->add_option("--grid", surf.grid, "Grid size nx[,nt] (default 200,50)");
  surface->add_option("--regularizer", surf.regularizer, "Regularization")
      ->check(CLI::IsMember({"steklov", "quadratic"}));
  surface->add_option("--out", surf.out, "CSV file (default: standard output)");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Reproduce the failure-rate table on random polynomials");
  bench->add_option("--degrees", bench_args.degrees, "Even degrees")->delimiter(',');
  bench->add_option("--samples", bench_args.samples, "Polynomials per degree")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "Random seed");
  bench->add_option("--method", bench_args.method, "Methods to run")
      ->check(CLI::IsMember({"steklov", "quadratic", "both"}));
  bench->add_option("--out", bench_args.outs, "Report files (.csv and/or .json)");
  bench->add_option("--threads", bench_args.threads, "Worker threads (default: all cores)");
  bench->add_option("--rtol", bench_args.rtol, "Relative tolerance of the ODE solver")->check(CLI::PositiveNumber);
  bench->add_option("--max-steps", bench_args.max_steps, "Step budget per run")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*minimize) return cmd_minimize(minimize_args, format, out, err);
    if (*trajectory) return cmd_trajectory(traj_args, traj_path, out);
    if (*surface) return cmd_surface(surf, out);
    if (*bench) return cmd_bench(bench_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::NotCoercive ||
                       e.code() == ErrorCode::MissingBracket;
    return usage ? kUsage : kFailure;
  }
  return kUsage;
}

}  // namespace steklov::cli
