#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace steklov {

struct RhsValue {
  double dxdt = 0.0;
  double denom = 1.0;  // denominator of the right-hand side, watched for zeros
};

using Rhs = std::function<RhsValue(double t, double x)>;

struct IvpProblem {
  Rhs rhs;
  double t_start = 1.0;
  double t_end = 0.0;
  double x_start = 0.0;
  double rtol = 1e-8;
  double atol = 1e-12;
  long max_steps = 1000000;
  std::optional<double> min_step;     // default 1e-14 * |t_start - t_end|
  std::optional<double> denom_floor;  // default 1e-10 * |denom(t_start, x_start)|
  std::optional<double> initial_step;
  /// Never step more than half the remaining distance, and jump straight to
  /// t_end once within 1e-6 of the span. For right-hand sides that vanish
  /// at t_end, so the approach is geometric.
  bool land_geometric = false;
  /// Applied to every accepted x, e.g. to pull it back onto a conserved
  /// level set. Non-finite results are ignored.
  std::function<double(double t, double x)> project;
  /// Keep every accepted step; otherwise only the first and last two.
  bool keep_samples = true;

  /// Throws InvalidProblem.
  void validate() const;
};

enum class TrajectoryStatus {
  ReachedZero,
  SingularDenominator,
  StepBudgetExhausted,
  StepUnderflow,
  StartFailed,  // never set by integrate: the start point could not be computed
};

std::string_view to_string(TrajectoryStatus status);

struct Sample {
  double t = 0.0;
  double x = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;  // t strictly decreasing
  TrajectoryStatus status = TrajectoryStatus::StartFailed;
  long steps_taken = 0;     // accepted + rejected attempts
  long steps_accepted = 0;
  double final_denominator = 0.0;
  double last_error = 0.0;  // scaled error estimate of the last accepted step
};

/// Five-stage L-stable SDIRK of order 4 with an embedded order-3 estimate
/// and scalar Newton per stage, integrating with t decreasing.
Trajectory integrate(const IvpProblem& problem);

}  // namespace steklov
