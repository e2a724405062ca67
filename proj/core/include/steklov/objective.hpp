#pragma once

#include <functional>
#include <optional>
#include <string>

#include "steklov/polynomial.hpp"

namespace steklov {

using ScalarFn = std::function<double(double)>;

/// Evaluation bundle for a univariate objective. df is mandatory; d2f is
/// needed by the quadratic regularization only. Polynomial objectives carry
/// their coefficients so exact formulas can replace quadrature.
struct ObjectiveFunction {
  ScalarFn f;
  ScalarFn df;
  ScalarFn d2f;  // empty when unavailable
  std::optional<Polynomial> poly;
  std::string label;

  bool has_d2f() const { return static_cast<bool>(d2f); }

  static ObjectiveFunction from_polynomial(Polynomial p, std::string label = "polynomial");
  /// Throws InvalidArgument when f or df is missing.
  static ObjectiveFunction from_functions(ScalarFn f, ScalarFn df, ScalarFn d2f = {},
                                          std::string label = "function");
};

}  // namespace steklov
