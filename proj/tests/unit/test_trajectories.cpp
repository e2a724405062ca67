#include <cmath>

#include "doctest.h"
#include "steklov/error.hpp"
#include "steklov/fixtures.hpp"
#include "steklov/oracle.hpp"
#include "steklov/trajectories.hpp"
#include "test_support.hpp"

using namespace steklov;
using testing_support::Rng;

namespace {

RunConfig with_t0(double t0) {
  RunConfig cfg;
  cfg.t0 = t0;
  return cfg;
}

bool has_warning(const RunResult& r, std::string_view prefix) {
  for (const auto& w : r.warnings) {
    if (w.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

double depressed_mu_x(const DepressedQuartic& q, double z, double t) {
  return 4 * z * z * z + 2 * (q.a2 + 2 * t * t) * z + q.a1;
}

double depressed_mu_xx(const DepressedQuartic& q, double z, double t) {
  return 12 * z * z + 2 * q.a2 + 4 * t * t;
}

}  // namespace

TEST_CASE("run_steklov worked examples") {
  const RunResult p6 = run_steklov(builtin("p6_sec62"), with_t0(7.0));
  REQUIRE(p6.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p6.x_final - 9.0) <= 1e-3);
  CHECK(p6.start.mode == StartMode::UserSupplied);

  const RunResult qs = run_steklov(builtin("quad_sine"), with_t0(7.0));
  REQUIRE(qs.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(qs.x_final - (-0.5167)) <= 1e-3);
  CHECK(has_warning(qs, "NotMonotone"));

  const RunResult p10 = run_steklov(builtin("p10_sec63"), with_t0(7.0));
  REQUIRE(p10.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p10.x_final - 9.0) <= 1e-3);

  const RunResult p20 = run_steklov(builtin("p20_sec63"), with_t0(6.0));
  REQUIRE(p20.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p20.x_final - (-4.5)) <= 1e-3);

  const RunResult p4 = run_steklov(builtin("p4_sec61"));
  REQUIRE(p4.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p4.x_final - 7.0) <= 1e-4);
  CHECK(p4.start.mode == StartMode::ConvexSearch);
}

TEST_CASE("run_steklov on convex parabolas stays at the minimizer") {
  for (double c : {-3.0, 0.0, 0.25, 8.0}) {
    const ObjectiveFunction obj = ObjectiveFunction::from_polynomial(Polynomial({c * c, -2 * c, 1}));
    for (double t0 : {0.5, 3.0, 40.0}) {
      const RunResult r = run_steklov(obj, with_t0(t0));
      REQUIRE(r.status == TrajectoryStatus::ReachedZero);
      CHECK(std::abs(r.x_final - c) <= 1e-6);
      CHECK(r.f_final == obj.f(r.x_final));
    }
    CHECK(std::abs(run_steklov(obj).x_final - c) <= 1e-6);
  }
}

TEST_CASE("run_steklov start failures are reported in band") {
  const RunResult r = run_steklov(builtin("quad_sine"));
  CHECK(r.status == TrajectoryStatus::StartFailed);
  CHECK(std::isnan(r.x_final));
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.minimizers.empty());

  const RunResult neg = run_steklov(builtin("p4_sec61"), with_t0(-1.0));
  CHECK(neg.status == TrajectoryStatus::StartFailed);

  RunConfig bracketed;
  bracketed.bracket = std::pair{-10.0, 10.0};
  const RunResult qs = run_steklov(builtin("quad_sine"), bracketed);
  REQUIRE(qs.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(qs.x_final - (-0.5167)) <= 1e-3);

  RunConfig qc;
  qc.t0_mode = T0Mode::QuasiConvexify;
  CHECK(run_steklov(builtin("quad_sine"), qc).status == TrajectoryStatus::StartFailed);
  RunConfig ex;
  ex.t0_mode = T0Mode::Explicit;
  CHECK(run_steklov(builtin("p4_sec61"), ex).status == TrajectoryStatus::StartFailed);
}

TEST_CASE("run_steklov_quartic worked examples") {
  const RunResult r = run_steklov_quartic(*builtin_polynomial("p4_sec61"));
  REQUIRE(r.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(r.x_final - 7.0) <= 1e-4);
  REQUIRE(r.depressed);
  CHECK(r.depressed->a2 == doctest::Approx(-42.0));
  CHECK(r.depressed->a1 == doctest::Approx(-80.0));
  CHECK(r.start.t0 == doctest::Approx(std::sqrt(21.0)));
  CHECK(r.trajectory.samples.front().x == doctest::Approx(std::cbrt(20.0)));
  CHECK(r.trajectory.samples.back().x == doctest::Approx(5.0).epsilon(1e-5));
  CHECK(r.minimizers.size() == 1);
  CHECK(r.f_final == builtin_polynomial("p4_sec61")->operator()(r.x_final));

  const RunResult sym = run_steklov_quartic(*builtin_polynomial("quartic_symmetric"));
  REQUIRE(sym.minimizers.size() == 2);
  CHECK(sym.minimizers[0] == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(sym.minimizers[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(has_warning(sym, "SymmetricTwoMinimizers"));

  // x^4 - 0.09x^2 - 0.03x - 1 is quasi-convex; its minimizer is the real
  // root of 4x^3 - 0.18x - 0.03.
  const RunResult qc = run_steklov_quartic(*builtin_polynomial("quartic_quasiconvex"));
  REQUIRE(qc.status == TrajectoryStatus::ReachedZero);
  CHECK(has_warning(qc, "ConvexOrQuasiConvexShortcut"));
  const double x = qc.x_final;
  CHECK(std::abs(4 * x * x * x - 0.18 * x - 0.03) <= 1e-14);
  CHECK(x == doctest::Approx(0.269810).epsilon(1e-6));

  const RunResult gen = run_steklov_quartic(*builtin_polynomial("quartic_general"));
  const OracleResult truth = poly_global_min(*builtin_polynomial("quartic_general"));
  CHECK(classify(gen, truth).verdict == Verdict::GlobalSuccess);

  CHECK_THROWS_AS(run_steklov_quartic(*builtin_polynomial("p6_sec62")), Error);
  CHECK_THROWS_AS(run_steklov_quartic(Polynomial({0, 0, 0, 0, 2})), Error);
}

TEST_CASE("run_steklov_quartic shortcuts for convex and even quartics") {
  const RunResult convex = run_steklov_quartic(Polynomial({0, -3, 2, 0, 1}));
  REQUIRE(convex.status == TrajectoryStatus::ReachedZero);
  CHECK(has_warning(convex, "ConvexOrQuasiConvexShortcut"));
  const double x = convex.x_final;
  CHECK(std::abs(4 * x * x * x + 4 * x - 3) <= 1e-12);

  const RunResult even = run_steklov_quartic(Polynomial({0, 0, 1, 0, 1}));
  CHECK(even.x_final == 0.0);
  CHECK(even.minimizers.size() == 1);

  // Shifted symmetric quartic (x - 1)^4 - 2 (x - 1)^2.
  const Polynomial shifted = compose_affine(Polynomial({0, 0, -2, 0, 1}), 1.0, 1.0);
  const RunResult s = run_steklov_quartic(shifted);
  REQUIRE(s.minimizers.size() == 2);
  CHECK(s.minimizers[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(s.minimizers[1] == doctest::Approx(2.0));
}

TEST_CASE("run_steklov_quartic with other start parameters") {
  const Polynomial p4 = *builtin_polynomial("p4_sec61");
  RunConfig qc;
  qc.t0_mode = T0Mode::QuasiConvexify;
  const RunResult a = run_steklov_quartic(p4, qc);
  REQUIRE(a.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(a.x_final - 7.0) <= 1e-4);
  CHECK(a.start.t0 > 2.6599);
  CHECK(a.start.t0 < 2.6600);

  const RunResult b = run_steklov_quartic(p4, with_t0(10.0));
  REQUIRE(b.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(b.x_final - 7.0) <= 1e-4);
  CHECK(b.start.mode == StartMode::UserSupplied);
}

TEST_CASE("run_quadratic worked examples") {
  const RunResult p4 = run_quadratic(builtin("p4_sec61"), with_t0(100.0));
  REQUIRE(p4.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p4.x_final - (-2.0)) <= 1e-4);
  CHECK(classify(p4, poly_global_min(*builtin_polynomial("p4_sec61"))).verdict == Verdict::LocalOnly);

  const RunResult p6 = run_quadratic(builtin("p6_sec62"), with_t0(4000.0));
  REQUIRE(p6.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p6.x_final - 2.0) <= 1e-3);

  const RunResult p10 = run_quadratic(builtin("p10_sec63"), with_t0(2e6));
  REQUIRE(p10.status == TrajectoryStatus::ReachedZero);
  CHECK(std::abs(p10.x_final - (-1.0)) <= 1e-3);

  const RunResult p4d = run_quadratic(builtin("p4_sec61"));
  CHECK(p4d.start.t0 > 84.0);
  CHECK(p4d.status == TrajectoryStatus::ReachedZero);

  const ObjectiveFunction no_d2 = ObjectiveFunction::from_functions([](double x) { return x * x; },
                                                                    [](double x) { return 2 * x; });
  CHECK(run_quadratic(no_d2, with_t0(1.0)).status == TrajectoryStatus::StartFailed);
  RunConfig qc;
  qc.t0_mode = T0Mode::QuasiConvexify;
  CHECK(run_quadratic(builtin("p4_sec61"), qc).status == TrajectoryStatus::StartFailed);
}

TEST_CASE("classify examples") {
  const OracleResult truth = poly_global_min(*builtin_polynomial("p4_sec61"));
  const RunResult good = run_steklov_quartic(*builtin_polynomial("p4_sec61"));
  const Classification c = classify(good, truth);
  CHECK(c.verdict == Verdict::GlobalSuccess);
  CHECK(c.distance <= 1e-4);

  RunResult budget = good;
  budget.status = TrajectoryStatus::StepBudgetExhausted;
  CHECK(classify(budget, truth).verdict == Verdict::DidNotConverge);

  RunResult near = good;
  near.x_final = 7.005;
  near.f_final = truth.min_value + 1.0;
  CHECK(classify(near, truth).verdict == Verdict::GlobalSuccess);
  near.x_final = 7.1;
  CHECK(classify(near, truth).verdict == Verdict::LocalOnly);
  near.f_final = truth.min_value;
  CHECK(classify(near, truth).verdict == Verdict::GlobalSuccess);

  OracleResult empty;
  CHECK_THROWS_AS(classify(good, empty), Error);
  CHECK(to_string(Verdict::LocalOnly) == "LocalOnly");
}

TEST_CASE("run_steklov_quartic on random quartics: valley, sign and endpoint invariants") {
  Rng rng(21);
  int ode_runs = 0;
  for (int it = 0; it < 400; ++it) {
    const Polynomial p = testing_support::random_nontrivial_quartic(rng, it % 2 == 0);
    const RunResult r = run_steklov_quartic(p);
    REQUIRE(r.status == TrajectoryStatus::ReachedZero);
    const DepressedQuartic q = *r.depressed;
    if (has_warning(r, "ConvexOrQuasiConvexShortcut")) continue;
    ++ode_runs;
    const double sgn = q.a1 > 0 ? -1.0 : 1.0;
    for (const Sample& s : r.trajectory.samples) {
      CHECK(std::abs(depressed_mu_x(q, s.x, s.t)) <= 1e-6 * (1 + std::abs(q.a1)));
      CHECK(depressed_mu_xx(q, s.x, s.t) > 0.0);
      CHECK(s.x * sgn > 0.0);
    }
    const double z = r.trajectory.samples.back().x;
    CHECK(z * sgn > 0.0);
    CHECK(std::abs(z) > std::sqrt(-q.a2 / 6));
  }
  CHECK(ode_runs > 100);
}

TEST_CASE("run_steklov on random quartics keeps mu_x at zero") {
  Rng rng(22);
  for (int it = 0; it < 60; ++it) {
    const Polynomial p = testing_support::random_nontrivial_quartic(rng, it % 2 == 0);
    const ObjectiveFunction obj = ObjectiveFunction::from_polynomial(p);
    const RunResult r = run_steklov(obj);
    REQUIRE(r.status == TrajectoryStatus::ReachedZero);
    for (const Sample& s : r.trajectory.samples) {
      double mu_x;
      double mu_xx;
      if (s.t > 0) {
        const SteklovPartials d = steklov_partials(obj, s.x, s.t);
        mu_x = d.mu_x;
        mu_xx = d.mu_xx;
      } else {
        mu_x = obj.df(s.x);
        mu_xx = obj.d2f(s.x);
      }
      CHECK(std::abs(mu_x) <= 1e-6 * (1 + std::abs(p[1]) + std::abs(p[3]) * (1 + std::abs(s.x))));
      CHECK(mu_xx > 0.0);
    }
    CHECK(classify(r, poly_global_min(p)).verdict == Verdict::GlobalSuccess);
  }
}

TEST_CASE("scale-shift invariance of run_steklov outputs") {
  Rng rng(23);
  for (int it = 0; it < 60; ++it) {
    const Polynomial f = testing_support::random_nontrivial_quartic(rng, it % 2 == 0);
    const double alpha = rng.uniform(0.5, 2.0);
    const double a = rng.uniform(-5, 5);
    const Polynomial g = compose_affine(f, alpha, a);
    const ObjectiveFunction fo = ObjectiveFunction::from_polynomial(f);
    const RunResult rf = run_steklov(fo);
    REQUIRE(rf.status == TrajectoryStatus::ReachedZero);
    const RunResult rg = run_steklov(ObjectiveFunction::from_polynomial(g), with_t0(rf.start.t0 / alpha));
    REQUIRE(rg.status == TrajectoryStatus::ReachedZero);
    const double x = rf.x_final;
    CHECK(std::abs(rg.x_final - (x + a) / alpha) <= 1e-4 * (1 + std::abs(x)));
  }
}

TEST_CASE("run_steklov_quartic finds the global minimizer of every random quartic") {
  Rng rng(24);
  int failures = 0;
  for (int it = 0; it < 1000; ++it) {
    const Polynomial p = testing_support::random_nontrivial_quartic(rng, it % 2 == 0);
    const RunResult r = run_steklov_quartic(p);
    if (classify(r, poly_global_min(p)).verdict != Verdict::GlobalSuccess) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("the last step of a successful run barely moves x") {
  const double rtol = 1e-8;
  std::vector<RunResult> runs = {run_steklov_quartic(*builtin_polynomial("p4_sec61")),
                                 run_steklov(builtin("p6_sec62"), with_t0(7.0)),
                                 run_steklov(builtin("quad_sine"), with_t0(7.0))};
  Rng rng(25);
  for (int it = 0; it < 50; ++it) {
    runs.push_back(run_steklov_quartic(testing_support::random_nontrivial_quartic(rng, true)));
  }
  std::vector<ObjectiveFunction> objs = {builtin("p4_sec61"), builtin("p6_sec62"), builtin("quad_sine")};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunResult& r = runs[i];
    REQUIRE(r.status == TrajectoryStatus::ReachedZero);
    const auto& s = r.trajectory.samples;
    if (s.size() < 2) continue;
    const double d2 = i < objs.size() ? objs[i].d2f(r.x_final)
                                      : depressed_mu_xx(*r.depressed, s.back().x, 0.0);
    if (d2 <= 1e-3) continue;
    CHECK(s.back().t == 0.0);
    CHECK(std::abs(s.back().x - s[s.size() - 2].x) <= 10 * rtol * (1 + std::abs(s.back().x)));
  }
}

TEST_CASE("compact trajectories give the same endpoint") {
  RunConfig cfg = with_t0(7.0);
  const RunResult full = run_steklov(builtin("p6_sec62"), cfg);
  cfg.record_trajectory = false;
  const RunResult compact = run_steklov(builtin("p6_sec62"), cfg);
  CHECK(compact.x_final == full.x_final);
  CHECK(compact.trajectory.samples.size() <= 3);
}

TEST_CASE("method and mode names") {
  CHECK(to_string(Method::Steklov) == "steklov");
  CHECK(to_string(Method::SteklovQuartic) == "steklov-quartic");
  CHECK(to_string(Method::Quadratic) == "quadratic");
  CHECK(to_string(T0Mode::QuasiConvexify) == "quasi-convexify");
}
