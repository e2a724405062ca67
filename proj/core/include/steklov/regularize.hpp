#pragma once

#include <optional>
#include <string>
#include <utility>

#include "steklov/objective.hpp"
#include "steklov/polynomial.hpp"

namespace steklov {

enum class RegularizerKind { Steklov, Quadratic };

enum class StartMode { ClosedFormQuartic, ConvexSearch, UserSupplied };

std::string_view to_string(RegularizerKind kind);
std::string_view to_string(StartMode mode);

struct StartPoint {
  double t0 = 0.0;
  double x0 = 0.0;
  double residual = 0.0;  // |mu_x(x0, t0)| or |phi_x(x0, t0)|
  StartMode mode = StartMode::ConvexSearch;
  bool not_monotone = false;  // several sign changes seen; smallest root kept
};

struct SteklovPartials {
  double mu_x = 0.0;
  double mu_xx = 0.0;
  double mu_tx = 0.0;
};

struct QuadPartials {
  double phi = 0.0;
  double phi_x = 0.0;
  double phi_xx = 0.0;
  double phi_tx = 0.0;
};

/// mu(x, t) = (1/2t) * integral of f over [x - t, x + t]. Exact for
/// polynomial objectives, adaptive quadrature otherwise. Throws
/// NonpositiveT for t <= 0.
double steklov_value(const ObjectiveFunction& obj, double x, double t);

/// mu_x = (f(x+t) - f(x-t)) / 2t, mu_xx = (f'(x+t) - f'(x-t)) / 2t,
/// mu_tx = ((f'(x+t) + f'(x-t))/2 - mu_x) / t. Throws NonpositiveT.
SteklovPartials steklov_partials(const ObjectiveFunction& obj, double x, double t);

/// The same partials, continued to t >= 0 with their limits
/// (mu_x -> f', mu_xx -> f'', mu_tx -> 0). Polynomials use the exact
/// expansion in powers of t; other objectives switch to a cancellation-free
/// small-t form below t = small_t. Used by the trajectory right-hand side.
SteklovPartials steklov_partials_continued(const ObjectiveFunction& obj, double x, double t,
                                           double small_t);

/// x^4 + (a2 + 2t^2) x^2 + a1 x + a0 + t^2 a2 / 3 + t^4 / 5, valid for all t.
double quartic_mu_closed(const DepressedQuartic& q, double x, double t);

/// t0 = sqrt(-a2/2), x0 = -cbrt(a1/4): the convexifying start for a
/// depressed quartic. Throws PreconditionViolated unless a2 < 0, a1 != 0.
StartPoint quartic_start(const DepressedQuartic& q);

struct FlatPoint {
  double x_hat = 0.0;
  double t_hat = 0.0;
};

/// The simultaneous solution of mu_x = mu_xx = 0; empty when
/// a2 > -3 a1^(2/3) / 2.
std::optional<FlatPoint> quartic_flat_point(const DepressedQuartic& q);

struct QuasiConvexity {
  bool is_quasiconvex = false;  // of the quartic itself
  double t_threshold = 0.0;     // mu(., t) quasi-convex iff t >= t_threshold
};

QuasiConvexity quartic_quasiconvexity(const DepressedQuartic& q);

struct ConvexifyOptions {
  /// Search interval for non-polynomial objectives.
  std::optional<std::pair<double, double>> bracket;
  int verify_points = 10000;
  int max_growth = 20;
  double growth = 1.5;
};

/// A t0 with mu_xx(., t0) > 0 on a verification grid. Throws
/// ConvexificationFailed or MissingBracket.
double convexification_t0(const ObjectiveFunction& obj, const ConvexifyOptions& opts = {});

/// phi = f + t x^2 / 2 and its partials. Throws MissingSecondDerivative
/// without d2f.
QuadPartials quad_partials(const ObjectiveFunction& obj, double x, double t);

/// max(0, -inf f'') plus a small margin: phi(., t) is convex beyond it.
/// Polynomials need even degree >= 2 and a positive leading coefficient;
/// otherwise pass l0 = inf f''. Throws UnboundedCurvature.
double quad_t0(const ObjectiveFunction& obj, std::optional<double> l0 = std::nullopt);

/// Step 1: root of f(x + t0) - f(x - t0) (Steklov) or of f'(x) + t0 x
/// (quadratic), via a doubling bracket around 0, bisection and Newton
/// polish. Throws NoBracket, NonpositiveT, MissingSecondDerivative.
StartPoint solve_x0(const ObjectiveFunction& obj, double t0, RegularizerKind kind);

}  // namespace steklov
