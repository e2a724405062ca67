#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/polynomial.hpp"
#include "steklov/trajectories.hpp"

namespace steklov {

/// Identifier of the random stream recorded in every report.
inline constexpr std::string_view kGeneratorId =
    "mt19937_64;seed=splitmix64(seed,degree,index);uniform=(u>>11)*2^-53";

struct GenSpec {
  int degree = 4;
  double lo = -5.0;
  double hi = 5.0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Seed of instance `index` of a given degree; independent of run order.
std::uint64_t instance_seed(std::uint64_t seed, int degree, std::uint64_t index);

/// The monic polynomial with f' = n * prod (x - r_i) and f(0) = 0.
Polynomial poly_from_critical_points(std::span<const double> critical_points);

/// Instance `index`: degree - 1 critical points uniform on [lo, hi].
Polynomial gen_poly(const GenSpec& spec, std::uint64_t index);
std::vector<double> gen_critical_points(const GenSpec& spec, std::uint64_t index);

enum class BenchMethod { Steklov, Quadratic, Both };

std::string_view to_string(BenchMethod method);

struct T0Map {
  std::map<int, double> steklov;
  std::map<int, double> quadratic;

  /// Steklov 6 for degree 4 and 7 above; quadratic 1e3, 1e4, 1e5 for
  /// degrees 4, 6, 8, 1e8 for 10 to 14 and 1e10 beyond.
  static T0Map defaults();
  /// Throws InvalidArgument if the degree is missing.
  double lookup(Method method, int degree) const;
};

struct BenchOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  long max_steps = 1000000;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct BenchRow {
  Method method = Method::Steklov;
  int degree = 0;
  double t0 = 0.0;
  int samples = 0;
  int n_global = 0;
  int n_local = 0;
  int n_noconverge = 0;
  double failure_rate = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::uint64_t seed = 0;
  BenchMethod method = BenchMethod::Both;
  BenchOptions options;
  std::string generator{kGeneratorId};
  double wall_time = 0.0;  // seconds

  /// Header method,degree,t0,samples,n_global,n_local,n_noconverge,failure_rate.
  std::string to_csv() const;
  std::string to_json() const;
  /// Degree, then t0 and failure rate per method.
  std::string to_table() const;
};

BenchReport run_failure_table(const std::vector<int>& degrees, int samples, BenchMethod method,
                              const T0Map& t0_map, std::uint64_t seed,
                              const BenchOptions& opts = {});

}  // namespace steklov
