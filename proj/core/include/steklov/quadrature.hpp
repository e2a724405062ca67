#pragma once

#include <functional>

namespace steklov {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;     // estimated absolute error
  int evaluations = 0;
  bool converged = true;  // false if the subdivision limit was hit
};

/// Adaptive Gauss-Kronrod (7/15 point) integration of f over [a, b] with
/// interval bisection until the estimated error is below
/// max(abs_tol, rel_tol * |integral|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 0.0,
                                    int max_intervals = 4000);

}  // namespace steklov
