#include "steklov/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "steklov/error.hpp"
#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

void require_positive_t(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveT, "t must be positive");
}

// a1^(2/3) read as (a1^2)^(1/3) >= 0.
double two_thirds_power(double a1) {
  const double c = std::cbrt(a1);
  return c * c;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Root of the increasing function h on (-inf, from] (dir = -1) or
// [from, inf) (dir = +1), by doubling outward then bisecting.
double outward_root(const ScalarFn& h, double from, int dir) {
  double step = 1.0 + std::abs(from);
  double near = from;
  double far = from + dir * step;
  auto beyond = [&](double x) { return dir < 0 ? h(x) <= 0.0 : h(x) >= 0.0; };
  if (beyond(near)) return near;
  int guard = 0;
  while (!beyond(far)) {
    near = far;
    step *= 2.0;
    far = from + dir * step;
    if (++guard > 200 || !std::isfinite(far)) {
      throw Error(ErrorCode::ConvexificationFailed, "no level crossing outside the search interval");
    }
  }
  double lo = std::min(near, far);
  double hi = std::max(near, far);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimum of h on [a, b].
double golden_min(const ScalarFn& h, double a, double b, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = h(c);
  double fd = h(d);
  for (int it = 0; it < 300 && (b - a) > width; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(d);
    }
  }
  return fc < fd ? c : d;
}

// Extremes of df over [lo, hi]: grid scan plus golden refinement of the best cell.
std::pair<double, double> slope_range(const ScalarFn& df, double lo, double hi, int points) {
  const double dx = (hi - lo) / points;
  int imin = 0;
  int imax = 0;
  double vmin = df(lo);
  double vmax = vmin;
  for (int i = 1; i <= points; ++i) {
    const double v = df(lo + i * dx);
    if (v < vmin) {
      vmin = v;
      imin = i;
    }
    if (v > vmax) {
      vmax = v;
      imax = i;
    }
  }
  auto cell = [&](int i) {
    return std::pair{std::max(lo, lo + (i - 1) * dx), std::min(hi, lo + (i + 1) * dx)};
  };
  const auto [a0, b0] = cell(imin);
  vmin = std::min(vmin, df(golden_min(df, a0, b0, 1e-12 * (1.0 + std::abs(a0)))));
  const auto [a1, b1] = cell(imax);
  const ScalarFn neg = [&df](double x) { return -df(x); };
  vmax = std::max(vmax, df(golden_min(neg, a1, b1, 1e-12 * (1.0 + std::abs(a1)))));
  return {vmin, vmax};
}

bool convex_on_grid(const ObjectiveFunction& obj, double t, double lo, double hi, int points) {
  const double dx = (hi - lo) / points;
  for (int i = 0; i <= points; ++i) {
    if (!(steklov_partials(obj, lo + i * dx, t).mu_xx > 0.0)) return false;
  }
  return true;
}

SteklovPartials polynomial_partials(const Polynomial& p, double x, double t) {
  const std::vector<double> c = taylor_coefficients(p, x);
  SteklovPartials out;
  // c_j are Taylor coefficients about x; only odd j feed mu_x and mu_tx,
  // only even j feed mu_xx.
  double tp = 1.0;  // t^(j-1) for odd j, running
  for (std::size_t j = 1; j < c.size(); j += 2) {
    out.mu_x += c[j] * tp;
    tp *= t * t;
  }
  tp = 1.0;  // t^(j-2)
  for (std::size_t j = 2; j < c.size(); j += 2) {
    out.mu_xx += static_cast<double>(j) * c[j] * tp;
    tp *= t * t;
  }
  tp = t;  // t^(j-2) for odd j >= 3
  for (std::size_t j = 3; j < c.size(); j += 2) {
    out.mu_tx += static_cast<double>(j - 1) * c[j] * tp;
    tp *= t * t;
  }
  return out;
}

double second_derivative(const ObjectiveFunction& obj, double x) {
  if (obj.has_d2f()) return obj.d2f(x);
  const double h = 1e-5 * (1.0 + std::abs(x));
  return (obj.df(x + h) - obj.df(x - h)) / (2.0 * h);
}

}  // namespace

std::string_view to_string(RegularizerKind kind) {
  return kind == RegularizerKind::Steklov ? "steklov" : "quadratic";
}

std::string_view to_string(StartMode mode) {
  switch (mode) {
    case StartMode::ClosedFormQuartic: return "ClosedFormQuartic";
    case StartMode::ConvexSearch: return "ConvexSearch";
    case StartMode::UserSupplied: return "UserSupplied";
  }
  return "Unknown";
}

double steklov_value(const ObjectiveFunction& obj, double x, double t) {
  require_positive_t(t);
  if (obj.poly) {
    // Integrating the Taylor expansion about x term by term leaves the even
    // coefficients: mu = sum_{j even} c_j t^j / (j + 1).
    const std::vector<double> c = taylor_coefficients(*obj.poly, x);
    double mu = 0.0;
    double tp = 1.0;
    for (std::size_t j = 0; j < c.size(); j += 2) {
      mu += c[j] * tp / static_cast<double>(j + 1);
      tp *= t * t;
    }
    return mu;
  }
  const double scale = 1.0 + std::abs(obj.f(x));
  const QuadratureResult q =
      integrate_adaptive(obj.f, x - t, x + t, 1e-10, 1e-14 * 2.0 * t * scale);
  return q.value / (2.0 * t);
}

SteklovPartials steklov_partials(const ObjectiveFunction& obj, double x, double t) {
  require_positive_t(t);
  const double dp = obj.df(x + t);
  const double dm = obj.df(x - t);
  SteklovPartials out;
  out.mu_x = (obj.f(x + t) - obj.f(x - t)) / (2.0 * t);
  out.mu_xx = (dp - dm) / (2.0 * t);
  out.mu_tx = (0.5 * (dp + dm) - out.mu_x) / t;
  return out;
}

SteklovPartials steklov_partials_continued(const ObjectiveFunction& obj, double x, double t,
                                           double small_t) {
  if (t < 0.0) throw Error(ErrorCode::NonpositiveT, "t must be nonnegative");
  if (obj.poly) return polynomial_partials(*obj.poly, x, t);
  if (t > 0.0 && t >= small_t) return steklov_partials(obj, x, t);
  // mu_xx = (f''(x+t) + f''(x-t))/2 + O(t^2), mu_tx = t f'''(x)/3 + O(t^3).
  const double sp = second_derivative(obj, x + t);
  const double sm = second_derivative(obj, x - t);
  SteklovPartials out;
  out.mu_xx = 0.5 * (sp + sm);
  out.mu_tx = (sp - sm) / 6.0;
  out.mu_x = 0.5 * (obj.df(x + t) + obj.df(x - t)) - t * out.mu_tx;
  return out;
}

double quartic_mu_closed(const DepressedQuartic& q, double x, double t) {
  const double t2 = t * t;
  return ((x * x + (q.a2 + 2.0 * t2)) * x + q.a1) * x + q.a0 + t2 * q.a2 / 3.0 + t2 * t2 / 5.0;
}

StartPoint quartic_start(const DepressedQuartic& q) {
  if (!(q.a2 < 0.0)) throw Error(ErrorCode::PreconditionViolated, "closed-form start needs a2 < 0");
  if (q.a1 == 0.0) throw Error(ErrorCode::PreconditionViolated, "closed-form start needs a1 != 0");
  StartPoint s;
  s.t0 = std::sqrt(-q.a2 / 2.0);
  s.x0 = -std::cbrt(q.a1 / 4.0);
  s.residual = std::abs(4.0 * s.x0 * s.x0 * s.x0 + q.a1);
  s.mode = StartMode::ClosedFormQuartic;
  return s;
}

std::optional<FlatPoint> quartic_flat_point(const DepressedQuartic& q) {
  const double a23 = two_thirds_power(q.a1);
  if (q.a2 > -1.5 * a23) return std::nullopt;
  return FlatPoint{std::cbrt(q.a1) / 2.0, 0.5 * std::sqrt(std::max(0.0, -(3.0 * a23 + 2.0 * q.a2)))};
}

QuasiConvexity quartic_quasiconvexity(const DepressedQuartic& q) {
  const double disc = -16.0 * (8.0 * q.a2 * q.a2 * q.a2 + 27.0 * q.a1 * q.a1);
  QuasiConvexity out;
  out.is_quasiconvex = disc <= 0.0;
  out.t_threshold = 0.5 * std::sqrt(std::max(0.0, -(3.0 * two_thirds_power(q.a1) + 2.0 * q.a2)));
  return out;
}

double convexification_t0(const ObjectiveFunction& obj, const ConvexifyOptions& opts) {
  double lo = 0.0;
  double hi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  if (obj.poly) {
    const Polynomial& p = *obj.poly;
    if (p.degree() < 2 || p.degree() % 2 != 0 || p.leading() <= 0.0) {
      throw Error(ErrorCode::NotCoercive, "convexification needs even degree and a positive leading coefficient");
    }
    const Polynomial d1 = differentiate(p);
    const Polynomial d2 = differentiate(d1);
    const double radius = d2.degree() > 0 ? real_roots(d2).radius : 0.0;
    lo = -radius;
    hi = radius;
    alpha = std::min(d1(lo), d1(hi));
    beta = std::max(d1(lo), d1(hi));
    if (d2.degree() > 0) {
      for (double c : real_roots(d2).roots) {
        alpha = std::min(alpha, d1(c));
        beta = std::max(beta, d1(c));
      }
    }
  } else {
    if (!opts.bracket) throw Error(ErrorCode::MissingBracket, "non-polynomial objective needs a search interval");
    std::tie(lo, hi) = *opts.bracket;
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "search interval must satisfy lo < hi");
    std::tie(alpha, beta) = slope_range(obj.df, lo, hi, opts.verify_points);
  }

  const ScalarFn& df = obj.df;
  const double a_tilde = outward_root([&](double x) { return df(x) - alpha; }, lo, -1);
  const double b_tilde = outward_root([&](double x) { return df(x) - beta; }, hi, +1);
  double t0 = std::max(b_tilde - a_tilde, 1e-3 * (1.0 + hi - lo));

  for (int round = 0; round <= opts.max_growth; ++round) {
    if (convex_on_grid(obj, t0, lo - t0, hi + t0, opts.verify_points)) return t0;
    t0 *= opts.growth;
  }
  throw Error(ErrorCode::ConvexificationFailed, "mu_xx not positive on the verification grid");
}

QuadPartials quad_partials(const ObjectiveFunction& obj, double x, double t) {
  if (!obj.has_d2f()) throw Error(ErrorCode::MissingSecondDerivative, "phi_xx needs f''");
  QuadPartials out;
  out.phi = obj.f(x) + 0.5 * t * x * x;
  out.phi_x = obj.df(x) + t * x;
  out.phi_xx = obj.d2f(x) + t;
  out.phi_tx = x;
  return out;
}

double quad_t0(const ObjectiveFunction& obj, std::optional<double> l0) {
  double inf_curv = 0.0;
  if (l0) {
    inf_curv = *l0;
  } else if (obj.poly) {
    const Polynomial& p = *obj.poly;
    if (p.degree() < 2 || p.degree() % 2 != 0 || p.leading() <= 0.0) {
      throw Error(ErrorCode::UnboundedCurvature, "f'' is unbounded below");
    }
    const Polynomial d2 = differentiate(differentiate(p));
    const Polynomial d3 = differentiate(d2);
    if (d3.is_zero()) {
      inf_curv = d2[0];
    } else {
      inf_curv = std::numeric_limits<double>::infinity();
      for (double c : real_roots(d3).roots) inf_curv = std::min(inf_curv, d2(c));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "non-polynomial objective needs l0 = inf f''");
  }
  return std::max(0.0, -inf_curv) + 1e-6 * (1.0 + std::abs(inf_curv));
}

StartPoint solve_x0(const ObjectiveFunction& obj, double t0, RegularizerKind kind) {
  require_positive_t(t0);
  const bool steklov = kind == RegularizerKind::Steklov;
  if (!steklov && !obj.has_d2f()) throw Error(ErrorCode::MissingSecondDerivative, "quadratic start needs f''");

  auto g = [&](double x) { return steklov ? obj.f(x + t0) - obj.f(x - t0) : obj.df(x) + t0 * x; };
  auto dg = [&](double x) { return steklov ? obj.df(x + t0) - obj.df(x - t0) : obj.d2f(x) + t0; };
  auto residual = [&](double gx) { return steklov ? std::abs(gx) / (2.0 * t0) : std::abs(gx); };

  StartPoint s;
  s.t0 = t0;
  s.mode = StartMode::ConvexSearch;
  const double g0 = g(0.0);
  if (g0 == 0.0) {
    s.x0 = 0.0;
    s.residual = 0.0;
    return s;
  }

  double r = 1.0;
  while (sign_of(g(-r)) * sign_of(g(r)) > 0) {
    r *= 2.0;
    if (r > 1e12) throw Error(ErrorCode::NoBracket, "no sign change within |x| <= 1e12");
  }

  // Scan the bracket for every sign change; more than one means t0 was too
  // small for convexity and the leftmost root is kept.
  constexpr int kScan = 1024;
  std::vector<std::pair<double, double>> changes;
  double prev_x = -r;
  double prev_g = g(prev_x);
  for (int i = 1; i <= kScan; ++i) {
    const double x = -r + 2.0 * r * i / kScan;
    const double gx = g(x);
    if (gx == 0.0 || sign_of(prev_g) * sign_of(gx) < 0) changes.emplace_back(prev_x, x);
    if (gx != 0.0) {
      prev_x = x;
      prev_g = gx;
    }
  }
  if (changes.empty()) changes.emplace_back(-r, r);
  s.not_monotone = changes.size() > 1;

  double lo = changes.front().first;
  double hi = changes.front().second;
  double glo = g(lo);
  if (g(hi) == 0.0) {
    lo = hi;
  }
  for (int it = 0; it < 400 && (hi - lo) > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (sign_of(gm) == sign_of(glo)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  double gx = g(x);
  for (int it = 0; it < 5 && gx != 0.0; ++it) {
    const double slope = dg(x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double cand = x - gx / slope;
    const double gc = g(cand);
    if (!(std::abs(gc) < std::abs(gx))) break;
    x = cand;
    gx = gc;
  }
  s.x0 = x;
  s.residual = residual(gx);
  return s;
}

}  // namespace steklov
