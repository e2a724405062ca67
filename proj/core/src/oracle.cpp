#include "steklov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steklov/error.hpp"

namespace steklov {

namespace {

// Leading nonvanishing Taylor coefficient at a critical point decides its kind.
CriticalKind kind_at(const Polynomial& p, double x) {
  const std::vector<double> c = taylor_coefficients(p, x);
  const double mag = magnitude(p, x);
  const double ax = 1.0 + std::abs(x);
  for (std::size_t k = 2; k < c.size(); ++k) {
    const double tol = 1e-9 * mag / std::pow(ax, static_cast<double>(k));
    if (std::abs(c[k]) > tol) {
      if (k % 2 == 1) return CriticalKind::Inflection;
      return c[k] > 0.0 ? CriticalKind::Min : CriticalKind::Max;
    }
  }
  return CriticalKind::Inflection;
}

double golden_min(const ObjectiveFunction& obj, double a, double b, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = obj.f(c);
  double fd = obj.f(d);
  for (int it = 0; it < 400 && (b - a) > width; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = obj.f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = obj.f(d);
    }
  }
  return fc < fd ? c : d;
}

void collect_minimizers(OracleResult& out, std::vector<std::pair<double, double>> candidates, double merge) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [x, v] : candidates) best = std::min(best, v);
  out.min_value = best;
  const double tol = 1e-9 * (1.0 + std::abs(best));
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [x, v] : candidates) {
    if (v > best + tol) continue;
    if (!out.minimizers.empty() && x - out.minimizers.back() <= merge) continue;
    out.minimizers.push_back(x);
  }
}

}  // namespace

std::string_view to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::Min: return "min";
    case CriticalKind::Max: return "max";
    case CriticalKind::Inflection: return "inflection";
  }
  return "unknown";
}

OracleResult poly_global_min(const Polynomial& p) {
  if (p.degree() < 2 || p.degree() % 2 != 0 || p.leading() <= 0.0) {
    throw Error(ErrorCode::NotCoercive, "polynomial must have even degree and a positive leading coefficient");
  }
  const RootSet crit = real_roots(differentiate(p));
  OracleResult out;
  out.search_radius = crit.radius;
  std::vector<std::pair<double, double>> candidates;
  for (double x : crit.roots) {
    const double v = p(x);
    out.critical_points.push_back({x, v, kind_at(p, x)});
    candidates.emplace_back(x, v);
  }
  collect_minimizers(out, std::move(candidates), 0.0);
  return out;
}

OracleResult grid_global_min(const ObjectiveFunction& obj, double lo, double hi, long panels) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "grid search needs lo < hi");
  if (panels < 2) throw Error(ErrorCode::InvalidArgument, "grid search needs at least 2 panels");
  const double dx = (hi - lo) / static_cast<double>(panels);
  std::vector<double> vals(static_cast<std::size_t>(panels) + 1);
  for (long i = 0; i <= panels; ++i) vals[static_cast<std::size_t>(i)] = obj.f(lo + dx * static_cast<double>(i));

  std::vector<std::pair<double, long>> basins;  // (sampled value, index)
  for (long i = 0; i <= panels; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const bool left_ok = i == 0 || vals[u] < vals[u - 1];
    const bool right_ok = i == panels || vals[u] <= vals[u + 1];
    if (left_ok && right_ok) basins.emplace_back(vals[u], i);
  }
  constexpr std::size_t kBasins = 5;
  std::sort(basins.begin(), basins.end());
  if (basins.size() > kBasins) basins.resize(kBasins);

  OracleResult out;
  out.search_radius = std::max(std::abs(lo), std::abs(hi));
  std::vector<std::pair<double, double>> candidates;
  const double width = 1e-10 * (hi - lo);
  for (const auto& [v, i] : basins) {
    const double a = std::max(lo, lo + dx * static_cast<double>(i - 1));
    const double b = std::min(hi, lo + dx * static_cast<double>(i + 1));
    const double x = golden_min(obj, a, b, width);
    const double fx = obj.f(x);
    out.critical_points.push_back({x, fx, CriticalKind::Min});
    candidates.emplace_back(x, fx);
  }
  collect_minimizers(out, std::move(candidates), 2.0 * dx);
  return out;
}

}  // namespace steklov
