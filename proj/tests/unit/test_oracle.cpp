#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "steklov/error.hpp"
#include "steklov/fixtures.hpp"
#include "steklov/oracle.hpp"
#include "test_support.hpp"

using namespace steklov;
using testing_support::Rng;

TEST_CASE("poly_global_min on the quartic example") {
  const OracleResult r = poly_global_min(*builtin_polynomial("p4_sec61"));
  REQUIRE(r.minimizers.size() == 1);
  CHECK(r.minimizers[0] == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(r.min_value == doctest::Approx(-833.0).epsilon(1e-14));
  REQUIRE(r.critical_points.size() == 3);
  CHECK(r.critical_points[0].x == doctest::Approx(-2.0));
  CHECK(r.critical_points[0].value == doctest::Approx(-104.0));
  CHECK(r.critical_points[0].kind == CriticalKind::Min);
  CHECK(r.critical_points[1].x == doctest::Approx(1.0));
  CHECK(r.critical_points[1].value == doctest::Approx(31.0));
  CHECK(r.critical_points[1].kind == CriticalKind::Max);
  CHECK(r.critical_points[2].kind == CriticalKind::Min);
  CHECK(r.search_radius >= 7.0);
}

TEST_CASE("poly_global_min on the other examples") {
  const OracleResult sym = poly_global_min(*builtin_polynomial("quartic_symmetric"));
  REQUIRE(sym.minimizers.size() == 2);
  CHECK(sym.minimizers[0] == doctest::Approx(-0.7).epsilon(1e-9));
  CHECK(sym.minimizers[1] == doctest::Approx(0.7).epsilon(1e-9));

  const OracleResult p20 = poly_global_min(*builtin_polynomial("p20_sec63"));
  REQUIRE(p20.minimizers.size() == 1);
  CHECK(p20.minimizers[0] == doctest::Approx(-4.5).epsilon(1e-9));
  CHECK(p20.min_value == doctest::Approx(-742786593463.8248).epsilon(1e-12));

  const OracleResult p10 = poly_global_min(*builtin_polynomial("p10_sec63"));
  CHECK(p10.minimizers[0] == doctest::Approx(9.0).epsilon(1e-9));
  const OracleResult p6 = poly_global_min(*builtin_polynomial("p6_sec62"));
  CHECK(p6.minimizers[0] == doctest::Approx(9.0).epsilon(1e-9));

  const OracleResult x4 = poly_global_min(Polynomial({0, 0, 0, 0, 1}));
  REQUIRE(x4.critical_points.size() == 1);
  CHECK(x4.critical_points[0].kind == CriticalKind::Min);
  CHECK(x4.minimizers == std::vector<double>{0.0});

  // x^4 + x^3 has a flat inflection at 0 and its minimum at -3/4.
  const OracleResult infl = poly_global_min(Polynomial({0, 0, 0, 1, 1}));
  REQUIRE(infl.critical_points.size() == 2);
  CHECK(infl.critical_points[0].x == doctest::Approx(-0.75));
  CHECK(infl.critical_points[1].kind == CriticalKind::Inflection);
  CHECK(infl.minimizers.size() == 1);

  CHECK_THROWS_AS(poly_global_min(Polynomial({0, 0, 0, 1})), Error);
  CHECK_THROWS_AS(poly_global_min(Polynomial({0, 0, -1})), Error);
}

TEST_CASE("oracle result invariants on random polynomials") {
  Rng rng(31);
  for (int it = 0; it < 300; ++it) {
    const int n = 2 * rng.integer(1, 10);
    std::vector<double> c(n + 1);
    for (double& v : c) v = rng.uniform(-5, 5);
    c[n] = 1;
    const Polynomial p(c);
    const OracleResult r = poly_global_min(p);
    REQUIRE_FALSE(r.minimizers.empty());
    CHECK(std::is_sorted(r.minimizers.begin(), r.minimizers.end()));
    double lowest = INFINITY;
    for (const auto& cp : r.critical_points) lowest = std::min(lowest, cp.value);
    for (double m : r.minimizers) CHECK(p(m) <= lowest + 1e-9 * (1 + std::abs(r.min_value)));
    for (const auto& cp : r.critical_points) CHECK(std::abs(cp.x) <= r.search_radius);
  }
}

TEST_CASE("grid_global_min examples") {
  const OracleResult qs = grid_global_min(builtin("quad_sine"), -20, 20, 100000);
  REQUIRE(qs.minimizers.size() == 1);
  CHECK(std::abs(qs.minimizers[0] - (-0.5167)) <= 1e-4);

  const ObjectiveFunction para = ObjectiveFunction::from_functions(
      [](double x) { return (x - 3) * (x - 3); }, [](double x) { return 2 * (x - 3); });
  CHECK(grid_global_min(para, 0, 10, 1000).minimizers[0] == doctest::Approx(3.0).epsilon(1e-8));

  const ObjectiveFunction cosine = ObjectiveFunction::from_functions([](double x) { return std::cos(x); },
                                                                     [](double x) { return -std::sin(x); });
  const OracleResult c = grid_global_min(cosine, 0, 2 * M_PI, 1000);
  CHECK(c.minimizers[0] == doctest::Approx(M_PI).epsilon(1e-8));
  CHECK(c.min_value == doctest::Approx(-1.0).epsilon(1e-15));

  // Minimum on the boundary.
  const ObjectiveFunction line = ObjectiveFunction::from_functions([](double x) { return x; },
                                                                   [](double) { return 1.0; });
  CHECK(grid_global_min(line, -2, 5, 10).minimizers[0] == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("polynomial and grid oracles agree") {
  Rng rng(32);
  for (int n : {4, 6, 8}) {
    for (int it = 0; it < 200; ++it) {
      std::vector<double> c(n + 1);
      for (double& v : c) v = rng.uniform(-5, 5);
      c[n] = 1;
      const Polynomial p(c);
      const OracleResult exact = poly_global_min(p);
      const double r = root_bound(differentiate(p));
      const OracleResult grid = grid_global_min(ObjectiveFunction::from_polynomial(p), -r, r, 1000000);
      CAPTURE(n);
      CAPTURE(it);
      CHECK(grid.min_value == doctest::Approx(exact.min_value).epsilon(1e-7));
      double dist = INFINITY;
      for (double m : exact.minimizers) dist = std::min(dist, std::abs(m - grid.minimizers[0]));
      CHECK(dist <= 1e-5);
    }
  }
}

TEST_CASE("curvature ordering and minimizer sign on random quartics") {
  Rng rng(33);
  int two_minima = 0;
  for (int it = 0; it < 2000; ++it) {
    const DepressedQuartic q = depress_quartic(testing_support::random_nontrivial_quartic(rng, it % 2 == 0));
    const Polynomial f = q.polynomial();
    const Polynomial f2 = differentiate(differentiate(f));
    const OracleResult r = poly_global_min(f);
    REQUIRE(r.minimizers.size() == 1);
    const double xs = r.minimizers[0];
    CHECK((xs > 0) == (q.a1 < 0));
    CHECK(std::abs(xs) > std::sqrt(-q.a2 / 6));

    std::vector<double> mins;
    for (const auto& cp : r.critical_points) {
      if (cp.kind == CriticalKind::Min) mins.push_back(cp.x);
    }
    if (mins.size() != 2) continue;
    ++two_minima;
    const double x1 = mins[0];
    const double x2 = mins[1];
    CHECK((f(x1) < f(x2)) == (f2(x1) > f2(x2)));
    const double global = f(x1) < f(x2) ? x1 : x2;
    const double other = global == x1 ? x2 : x1;
    CHECK(std::abs(global) > std::abs(other));
  }
  CHECK(two_minima > 500);
}
