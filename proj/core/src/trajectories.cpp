#include "steklov/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "steklov/error.hpp"

namespace steklov {

namespace {

// Below this fraction of t0 the Steklov right-hand side switches to its
// small-t form.
constexpr double kSmallTFraction = 1e-4;

IvpProblem make_problem(const RunConfig& cfg, double t0, double x0, Rhs rhs, bool geometric) {
  IvpProblem prob;
  prob.rhs = std::move(rhs);
  prob.t_start = t0;
  prob.t_end = 0.0;
  prob.x_start = x0;
  prob.rtol = cfg.rtol;
  prob.atol = cfg.atol;
  prob.max_steps = cfg.max_steps;
  prob.land_geometric = geometric;
  prob.keep_samples = cfg.record_trajectory;
  return prob;
}

void finish(RunResult& r, const ObjectiveFunction& obj) {
  r.status = r.trajectory.status;
  if (!r.trajectory.samples.empty()) {
    r.x_final = r.trajectory.samples.back().x;
    r.f_final = obj.f(r.x_final);
  }
  if (r.status == TrajectoryStatus::ReachedZero) r.minimizers = {r.x_final};
}

RunResult start_failure(Method method, const std::exception& e) {
  RunResult r;
  r.method = method;
  r.status = TrajectoryStatus::StartFailed;
  r.trajectory.status = TrajectoryStatus::StartFailed;
  r.x_final = std::numeric_limits<double>::quiet_NaN();
  r.f_final = std::numeric_limits<double>::quiet_NaN();
  r.warnings.emplace_back(e.what());
  return r;
}

// One Newton step back onto {g(t, x) = level}, where level_fn returns
// (g, dg/dx). Skipped when the correction is larger than integration drift.
template <class LevelFn>
std::function<double(double, double)> level_projection(LevelFn level_fn, double level) {
  return [level_fn, level](double t, double x) {
    const auto [g, gx] = level_fn(t, x);
    if (!(gx != 0.0) || !std::isfinite(g)) return x;
    const double dx = (g - level) / gx;
    return std::abs(dx) <= 1e-6 * (1.0 + std::abs(x)) ? x - dx : x;
  };
}

std::optional<DepressedQuartic> as_depressed_quartic(const ObjectiveFunction& obj) {
  if (!obj.poly || obj.poly->degree() != 4 || !obj.poly->is_monic()) return std::nullopt;
  return depress_quartic(*obj.poly);
}

double steklov_t0(const ObjectiveFunction& obj, const RunConfig& cfg) {
  if (cfg.t0) {
    if (!(*cfg.t0 > 0.0)) throw Error(ErrorCode::NonpositiveT, "t0 must be positive");
    return *cfg.t0;
  }
  switch (cfg.t0_mode) {
    case T0Mode::Explicit:
      throw Error(ErrorCode::InvalidArgument, "explicit t0 mode without a t0");
    case T0Mode::QuasiConvexify: {
      const auto q = as_depressed_quartic(obj);
      if (!q) throw Error(ErrorCode::InvalidArgument, "quasi-convexifying t0 is defined for monic quartics only");
      const double th = quartic_quasiconvexity(*q).t_threshold;
      return th + 1e-6 * (1.0 + th);
    }
    case T0Mode::Convexify: {
      ConvexifyOptions opts;
      opts.bracket = cfg.bracket;
      return convexification_t0(obj, opts);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown t0 mode");
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Steklov: return "steklov";
    case Method::SteklovQuartic: return "steklov-quartic";
    case Method::Quadratic: return "quadratic";
  }
  return "unknown";
}

std::string_view to_string(T0Mode mode) {
  switch (mode) {
    case T0Mode::Convexify: return "convexify";
    case T0Mode::QuasiConvexify: return "quasi-convexify";
    case T0Mode::Explicit: return "explicit";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::GlobalSuccess: return "GlobalSuccess";
    case Verdict::LocalOnly: return "LocalOnly";
    case Verdict::DidNotConverge: return "DidNotConverge";
  }
  return "Unknown";
}

RunResult run_steklov(const ObjectiveFunction& obj, const RunConfig& cfg) {
  RunResult r;
  r.method = Method::Steklov;
  try {
    const double t0 = steklov_t0(obj, cfg);
    r.start = solve_x0(obj, t0, RegularizerKind::Steklov);
    if (cfg.t0) r.start.mode = StartMode::UserSupplied;
  } catch (const Error& e) {
    return start_failure(Method::Steklov, e);
  }
  if (r.start.not_monotone) r.warnings.emplace_back("NotMonotone: several Step-1 roots, leftmost kept");

  const double small_t = kSmallTFraction * r.start.t0;
  // Differentiating mu_x(x(t), t) = const along the curve gives
  // x' = -mu_tx / mu_xx; on the valley this is
  // -(f'(x+t) + f'(x-t)) / (f'(x+t) - f'(x-t)).
  Rhs rhs = [&obj, small_t](double t, double x) {
    const SteklovPartials d = steklov_partials_continued(obj, x, t, small_t);
    return RhsValue{-d.mu_tx / d.mu_xx, d.mu_xx};
  };
  IvpProblem prob = make_problem(cfg, r.start.t0, r.start.x0, rhs, true);
  auto level_fn = [&obj, small_t](double t, double x) {
    const SteklovPartials d = steklov_partials_continued(obj, x, t, small_t);
    return std::pair{d.mu_x, d.mu_xx};
  };
  prob.project = level_projection(level_fn, level_fn(r.start.t0, r.start.x0).first);
  r.trajectory = integrate(prob);
  finish(r, obj);
  return r;
}

RunResult run_steklov_quartic(const Polynomial& p, const RunConfig& cfg) {
  if (p.degree() != 4 || !p.is_monic()) throw Error(ErrorCode::InvalidArgument, "run_steklov_quartic needs a monic quartic");
  const DepressedQuartic q = depress_quartic(p);
  RunResult r;
  r.method = Method::SteklovQuartic;
  r.depressed = q;

  const double a1_scale = std::abs(q.a1) + std::abs(q.a2) + std::abs(q.a0) + 1.0;
  const bool symmetric = std::abs(q.a1) <= 1e-14 * a1_scale;
  const QuasiConvexity qc = quartic_quasiconvexity(q);

  if (symmetric && q.a2 < 0.0) {
    const double m = std::sqrt(-q.a2 / 2.0);
    r.minimizers = {q.to_original(-m), q.to_original(m)};
    r.x_final = r.minimizers.front();
    r.f_final = p(r.x_final);
    r.start = StartPoint{m, 0.0, 0.0, StartMode::ClosedFormQuartic, false};
    r.status = r.trajectory.status = TrajectoryStatus::ReachedZero;
    r.warnings.emplace_back("SymmetricTwoMinimizers: a1 = 0, both minimizers reported");
    return r;
  }
  if (q.a2 >= 0.0 || qc.is_quasiconvex || symmetric) {
    // f itself is unimodal: its minimizer is the lowest real critical point.
    const Polynomial dq = differentiate(q.polynomial());
    double best = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (double z : real_roots(dq).roots) {
      const double v = q.polynomial()(z);
      if (v < best_val) {
        best_val = v;
        best = z;
      }
    }
    r.x_final = q.to_original(best);
    r.f_final = p(r.x_final);
    r.minimizers = {r.x_final};
    r.start = StartPoint{0.0, best, std::abs(dq(best)), StartMode::ClosedFormQuartic, false};
    r.status = r.trajectory.status = TrajectoryStatus::ReachedZero;
    r.trajectory.samples = {{0.0, best}};
    r.warnings.emplace_back("ConvexOrQuasiConvexShortcut: f is unimodal, solved directly");
    return r;
  }

  const ObjectiveFunction depressed_obj = ObjectiveFunction::from_polynomial(q.polynomial(), "depressed quartic");
  try {
    if (cfg.t0 || cfg.t0_mode == T0Mode::QuasiConvexify) {
      const double t0 = cfg.t0 ? *cfg.t0 : qc.t_threshold + 1e-6 * (1.0 + qc.t_threshold);
      r.start = solve_x0(depressed_obj, t0, RegularizerKind::Steklov);
      r.start.mode = cfg.t0 ? StartMode::UserSupplied : StartMode::ConvexSearch;
    } else {
      r.start = quartic_start(q);
    }
  } catch (const Error& e) {
    return start_failure(Method::SteklovQuartic, e);
  }
  if (r.start.not_monotone) r.warnings.emplace_back("NotMonotone: several Step-1 roots, leftmost kept");

  const double a2 = q.a2;
  Rhs rhs = [a2](double t, double z) {
    const double denom = 6.0 * z * z + 2.0 * t * t + a2;
    return RhsValue{-4.0 * t * z / denom, denom};
  };
  IvpProblem prob = make_problem(cfg, r.start.t0, r.start.x0, rhs, true);
  const double a1 = q.a1;
  auto level_fn = [a2, a1](double t, double z) {
    const double c = a2 + 2.0 * t * t;
    return std::pair{(4.0 * z * z + 2.0 * c) * z + a1, 12.0 * z * z + 2.0 * c};
  };
  prob.project = level_projection(level_fn, level_fn(r.start.t0, r.start.x0).first);
  r.trajectory = integrate(prob);
  r.status = r.trajectory.status;
  const double z_final = r.trajectory.samples.back().x;
  r.x_final = q.to_original(z_final);
  r.f_final = p(r.x_final);
  if (r.status == TrajectoryStatus::ReachedZero) r.minimizers = {r.x_final};
  return r;
}

RunResult run_quadratic(const ObjectiveFunction& obj, const RunConfig& cfg) {
  RunResult r;
  r.method = Method::Quadratic;
  try {
    if (!obj.has_d2f()) throw Error(ErrorCode::MissingSecondDerivative, "quadratic regularization needs f''");
    double t0 = 0.0;
    if (cfg.t0) {
      t0 = *cfg.t0;
    } else if (cfg.t0_mode == T0Mode::Convexify) {
      t0 = quad_t0(obj);
    } else if (cfg.t0_mode == T0Mode::QuasiConvexify) {
      throw Error(ErrorCode::InvalidArgument, "quasi-convexifying t0 is not defined for the quadratic method");
    } else {
      throw Error(ErrorCode::InvalidArgument, "explicit t0 mode without a t0");
    }
    r.start = solve_x0(obj, t0, RegularizerKind::Quadratic);
    if (cfg.t0) r.start.mode = StartMode::UserSupplied;
  } catch (const Error& e) {
    return start_failure(Method::Quadratic, e);
  }
  if (r.start.not_monotone) r.warnings.emplace_back("NotMonotone: several Step-1 roots, leftmost kept");

  Rhs rhs = [&obj](double t, double x) {
    const double denom = obj.d2f(x) + t;
    return RhsValue{-x / denom, denom};
  };
  IvpProblem prob = make_problem(cfg, r.start.t0, r.start.x0, rhs, false);
  auto level_fn = [&obj](double t, double x) { return std::pair{obj.df(x) + t * x, obj.d2f(x) + t}; };
  prob.project = level_projection(level_fn, level_fn(r.start.t0, r.start.x0).first);
  r.trajectory = integrate(prob);
  finish(r, obj);
  return r;
}

Classification classify(const RunResult& result, const OracleResult& truth) {
  if (truth.minimizers.empty()) throw Error(ErrorCode::InvalidArgument, "oracle reports no global minimizer");
  Classification c;
  c.gap = result.f_final - truth.min_value;
  c.distance = std::numeric_limits<double>::infinity();
  double nearest = truth.minimizers.front();
  for (double m : truth.minimizers) {
    const double d = std::abs(result.x_final - m);
    if (d < c.distance) {
      c.distance = d;
      nearest = m;
    }
  }
  if (result.status != TrajectoryStatus::ReachedZero) {
    c.verdict = Verdict::DidNotConverge;
  } else if (c.gap <= 1e-6 * (1.0 + std::abs(truth.min_value)) || c.distance <= 1e-3 * (1.0 + std::abs(nearest))) {
    c.verdict = Verdict::GlobalSuccess;
  } else {
    c.verdict = Verdict::LocalOnly;
  }
  return c;
}

}  // namespace steklov
