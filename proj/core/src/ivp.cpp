#include "steklov/ivp.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "steklov/error.hpp"

namespace steklov {

namespace {

// SDIRK of order 4, L-stable and stiffly accurate (the last row of A is b),
// with an embedded third-order solution.
constexpr int kStages = 5;
constexpr double kGamma = 0.25;
constexpr std::array<double, kStages> kC = {0.25, 0.75, 11.0 / 20.0, 0.5, 1.0};
constexpr std::array<std::array<double, kStages>, kStages> kA = {{
    {0.25, 0, 0, 0, 0},
    {0.5, 0.25, 0, 0, 0},
    {17.0 / 50.0, -1.0 / 25.0, 0.25, 0, 0},
    {371.0 / 1360.0, -137.0 / 2720.0, 15.0 / 544.0, 0.25, 0},
    {25.0 / 24.0, -49.0 / 48.0, 125.0 / 16.0, -85.0 / 12.0, 0.25},
}};
constexpr std::array<double, kStages> kB = {25.0 / 24.0, -49.0 / 48.0, 125.0 / 16.0, -85.0 / 12.0, 0.25};
constexpr std::array<double, kStages> kBhat = {59.0 / 48.0, -17.0 / 96.0, 225.0 / 32.0, -85.0 / 12.0, 0.0};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

enum class StepOutcome { Ok, NewtonFailed, BadDenominator };

struct StepResult {
  StepOutcome outcome = StepOutcome::Ok;
  double x_new = 0.0;
  double x_hat = 0.0;
  double denom_new = 0.0;
  double filter = 1.0;  // |1 - h gamma J|, damps the estimate on stiff segments
};

RhsValue eval_rhs(const Rhs& rhs, double t, double x) {
  try {
    return rhs(t, x);
  } catch (const Error&) {
    return RhsValue{std::nan(""), std::nan("")};
  }
}

double slope_fd(const Rhs& rhs, double t, double x, double fx) {
  const double dx = 1e-7 * (1.0 + std::abs(x));
  const double f1 = eval_rhs(rhs, t, x + dx).dxdt;
  return (f1 - fx) / dx;
}

StepResult sdirk_step(const IvpProblem& p, double t, double x, double h, int denom_sign, const RhsValue& f0) {
  StepResult out;
  const double scale = p.atol + p.rtol * std::abs(x);
  double jac = slope_fd(p.rhs, t, x, f0.dxdt);
  if (!std::isfinite(jac)) jac = 0.0;

  std::array<double, kStages> k{};
  double guess = f0.dxdt;
  for (int i = 0; i < kStages; ++i) {
    double base = x;
    for (int j = 0; j < i; ++j) base += h * kA[i][j] * k[j];
    const double ti = t + kC[i] * h;
    double ki = guess;
    bool converged = false;
    RhsValue fv{};
    for (int attempt = 0; attempt < 2 && !converged; ++attempt) {
      for (int it = 0; it < 12; ++it) {
        const double y = base + h * kGamma * ki;
        fv = eval_rhs(p.rhs, ti, y);
        if (!std::isfinite(fv.dxdt) || !std::isfinite(fv.denom)) return {StepOutcome::BadDenominator};
        const double resid = ki - fv.dxdt;
        const double lin = 1.0 - h * kGamma * jac;
        const double delta = lin != 0.0 ? resid / lin : resid;
        ki -= delta;
        if (!std::isfinite(ki)) break;
        if (std::abs(h * kGamma * delta) <= 1e-3 * scale || std::abs(delta) <= 4e-16 * std::abs(ki)) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        // Refresh the Jacobian at the current stage value and try once more.
        const double y = base + h * kGamma * ki;
        const RhsValue fy = eval_rhs(p.rhs, ti, y);
        jac = slope_fd(p.rhs, ti, y, fy.dxdt);
        if (!std::isfinite(jac) || !std::isfinite(ki)) return {StepOutcome::NewtonFailed};
      }
    }
    if (!converged) return {StepOutcome::NewtonFailed};
    const RhsValue fin = eval_rhs(p.rhs, ti, base + h * kGamma * ki);
    if (!std::isfinite(fin.denom) || sign_of(fin.denom) != denom_sign) return {StepOutcome::BadDenominator};
    k[i] = ki;
    guess = ki;
    if (i == kStages - 1) out.denom_new = fin.denom;
  }

  out.x_new = x;
  out.x_hat = x;
  for (int i = 0; i < kStages; ++i) {
    out.x_new += h * kB[i] * k[i];
    out.x_hat += h * kBhat[i] * k[i];
  }
  if (!std::isfinite(out.x_new)) return {StepOutcome::NewtonFailed};
  out.filter = std::max(1.0, std::abs(1.0 - h * kGamma * jac));
  return out;
}

}  // namespace

void IvpProblem::validate() const {
  if (!rhs) throw Error(ErrorCode::InvalidProblem, "missing right-hand side");
  if (!(t_end < t_start)) throw Error(ErrorCode::InvalidProblem, "t_end must be below t_start");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(x_start)) {
    throw Error(ErrorCode::InvalidProblem, "non-finite initial data");
  }
  if (!(rtol > 0.0) || !(atol > 0.0)) throw Error(ErrorCode::InvalidProblem, "tolerances must be positive");
  if (max_steps < 1) throw Error(ErrorCode::InvalidProblem, "max_steps must be at least 1");
  if (min_step && !(*min_step > 0.0)) throw Error(ErrorCode::InvalidProblem, "min_step must be positive");
  if (denom_floor && !(*denom_floor >= 0.0)) throw Error(ErrorCode::InvalidProblem, "denom_floor must be nonnegative");
}

std::string_view to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::ReachedZero: return "ReachedZero";
    case TrajectoryStatus::SingularDenominator: return "SingularDenominator";
    case TrajectoryStatus::StepBudgetExhausted: return "StepBudgetExhausted";
    case TrajectoryStatus::StepUnderflow: return "StepUnderflow";
    case TrajectoryStatus::StartFailed: return "StartFailed";
  }
  return "Unknown";
}

Trajectory integrate(const IvpProblem& p) {
  p.validate();
  Trajectory traj;
  const double span = p.t_start - p.t_end;
  const double min_step = p.min_step.value_or(1e-14 * std::abs(p.t_start == 0.0 ? span : p.t_start));
  const double jump_zone = 1e-6 * span;

  auto record = [&](double t, double x) {
    traj.samples.push_back({t, x});
    if (!p.keep_samples && traj.samples.size() > 3) traj.samples.erase(traj.samples.begin() + 1);
  };

  double t = p.t_start;
  double x = p.x_start;
  RhsValue f0 = eval_rhs(p.rhs, t, x);
  record(t, x);
  traj.final_denominator = f0.denom;
  const double floor = p.denom_floor.value_or(1e-10 * std::abs(f0.denom));
  if (!std::isfinite(f0.dxdt) || !std::isfinite(f0.denom) || f0.denom == 0.0 || std::abs(f0.denom) < floor) {
    traj.status = TrajectoryStatus::SingularDenominator;
    return traj;
  }

  double h;
  if (p.initial_step) {
    h = std::abs(*p.initial_step);
  } else {
    const double sc = p.atol + p.rtol * std::abs(x);
    const double d0 = std::abs(x) / sc;
    const double d1 = std::abs(f0.dxdt) / sc;
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min(h, 0.1 * span);
  }
  h = std::max(h, 10.0 * min_step);

  bool last_rejected = false;
  while (true) {
    if (traj.steps_taken >= p.max_steps) {
      traj.status = TrajectoryStatus::StepBudgetExhausted;
      return traj;
    }
    const double remaining = t - p.t_end;
    bool landing = false;
    if (p.land_geometric) {
      if (remaining <= jump_zone) {
        h = remaining;
        landing = true;
      } else {
        h = std::min(h, 0.5 * remaining);
      }
    }
    if (h >= remaining) {
      h = remaining;
      landing = true;
    }

    ++traj.steps_taken;
    const int denom_sign = sign_of(f0.denom);
    const StepResult step = sdirk_step(p, t, x, -h, denom_sign, f0);

    if (step.outcome != StepOutcome::Ok) {
      h *= step.outcome == StepOutcome::NewtonFailed ? 0.25 : 0.5;
      last_rejected = true;
      if (h < min_step) {
        traj.status = step.outcome == StepOutcome::BadDenominator ? TrajectoryStatus::SingularDenominator
                                                                  : TrajectoryStatus::StepUnderflow;
        return traj;
      }
      continue;
    }

    const double sc = p.atol + p.rtol * std::max(std::abs(x), std::abs(step.x_new));
    const double err = std::abs(step.x_new - step.x_hat) / (sc * step.filter);
    const bool forced = landing && p.land_geometric && remaining <= jump_zone;
    if (err > 1.0 && !forced) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      last_rejected = true;
      if (h < min_step) {
        traj.status = TrajectoryStatus::StepUnderflow;
        return traj;
      }
      continue;
    }

    ++traj.steps_accepted;
    t = landing ? p.t_end : t - h;
    x = step.x_new;
    if (p.project) {
      const double xp = p.project(t, x);
      if (std::isfinite(xp)) x = xp;
    }
    traj.last_error = err;
    traj.final_denominator = step.denom_new;
    record(t, x);
    if (std::abs(step.denom_new) < floor) {
      traj.status = TrajectoryStatus::SingularDenominator;
      return traj;
    }
    if (landing) {
      traj.status = TrajectoryStatus::ReachedZero;
      return traj;
    }
    f0 = eval_rhs(p.rhs, t, x);
    double fac = err > 0.0 ? 0.9 * std::pow(err, -0.25) : 5.0;
    fac = std::clamp(fac, 0.2, 5.0);
    if (last_rejected) fac = std::min(fac, 1.0);
    last_rejected = false;
    h *= fac;
  }
}

}  // namespace steklov
