#pragma once

#include <string_view>
#include <vector>

#include "steklov/objective.hpp"
#include "steklov/polynomial.hpp"

namespace steklov {

enum class CriticalKind { Min, Max, Inflection };

std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
  double x = 0.0;
  double value = 0.0;
  CriticalKind kind = CriticalKind::Min;
};

struct OracleResult {
  std::vector<double> minimizers;  // all global minimizers, increasing
  double min_value = 0.0;
  std::vector<CriticalPoint> critical_points;
  double search_radius = 0.0;
};

/// Global minimizers of a coercive polynomial from the real roots of p'.
/// Throws NotCoercive for odd degree or a negative leading coefficient.
OracleResult poly_global_min(const Polynomial& p);

/// Grid search on [lo, hi] with golden-section refinement of the five best
/// sampled basins.
OracleResult grid_global_min(const ObjectiveFunction& obj, double lo, double hi, long panels);

}  // namespace steklov
