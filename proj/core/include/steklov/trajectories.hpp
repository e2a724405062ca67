#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steklov/ivp.hpp"
#include "steklov/objective.hpp"
#include "steklov/oracle.hpp"
#include "steklov/polynomial.hpp"
#include "steklov/regularize.hpp"

namespace steklov {

enum class Method { Steklov, SteklovQuartic, Quadratic };

enum class T0Mode { Convexify, QuasiConvexify, Explicit };

std::string_view to_string(Method method);
std::string_view to_string(T0Mode mode);

struct RunConfig {
  std::optional<double> t0;  // used as given whenever present
  double rtol = 1e-8;
  double atol = 1e-12;
  long max_steps = 1000000;
  T0Mode t0_mode = T0Mode::Convexify;
  bool record_trajectory = true;
  /// Search interval handed to convexification_t0 for non-polynomials.
  std::optional<std::pair<double, double>> bracket;
};

struct RunResult {
  Method method = Method::Steklov;
  StartPoint start;
  Trajectory trajectory;
  double x_final = 0.0;
  double f_final = 0.0;
  TrajectoryStatus status = TrajectoryStatus::StartFailed;
  std::vector<std::string> warnings;
  /// Reported minimizers: {x_final} normally, both points in the symmetric
  /// quartic case, empty on failure.
  std::vector<double> minimizers;
  /// SteklovQuartic only: trajectory samples are in depressed coordinates.
  std::optional<DepressedQuartic> depressed;
};

/// Start at the minimizer of mu(., t0) and follow mu_x = 0 to
/// t = 0. Step-1 failures come back as status StartFailed.
RunResult run_steklov(const ObjectiveFunction& obj, const RunConfig& cfg = {});

/// Steklov trajectory for a monic quartic, in depressed coordinates with the
/// closed-form start. Throws InvalidArgument for other polynomials.
RunResult run_steklov_quartic(const Polynomial& p, const RunConfig& cfg = {});

/// Quadratic-regularization baseline: follow phi_x = 0 from t0 to 0.
RunResult run_quadratic(const ObjectiveFunction& obj, const RunConfig& cfg = {});

enum class Verdict { GlobalSuccess, LocalOnly, DidNotConverge };

std::string_view to_string(Verdict verdict);

struct Classification {
  Verdict verdict = Verdict::DidNotConverge;
  double gap = 0.0;       // f_final - min_value
  double distance = 0.0;  // to the nearest global minimizer
};

Classification classify(const RunResult& result, const OracleResult& truth);

}  // namespace steklov
