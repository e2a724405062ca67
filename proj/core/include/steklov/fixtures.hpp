#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/objective.hpp"

namespace steklov {

/// Names accepted by builtin(): the worked-example polynomials of degree
/// 4, 6, 10 and 20, the damped sine 0.06x^2 + sin 3x, and the three quartic
/// shapes (quasi-convex, symmetric, general).
std::vector<std::string> builtin_names();

/// Throws InvalidArgument for an unknown name.
ObjectiveFunction builtin(std::string_view name);

/// Coefficients of a polynomial builtin; empty for non-polynomial ones.
std::optional<Polynomial> builtin_polynomial(std::string_view name);

}  // namespace steklov
