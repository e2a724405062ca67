#include "steklov/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "steklov/error.hpp"
#include "steklov/oracle.hpp"

namespace steklov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Portable uniform draw on [0, 1): the top 53 bits of one engine output.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct InstanceOutcome {
  Verdict steklov = Verdict::DidNotConverge;
  Verdict quadratic = Verdict::DidNotConverge;
};

std::vector<Method> methods_of(BenchMethod m) {
  switch (m) {
    case BenchMethod::Steklov: return {Method::Steklov};
    case BenchMethod::Quadratic: return {Method::Quadratic};
    case BenchMethod::Both: return {Method::Steklov, Method::Quadratic};
  }
  return {};
}

}  // namespace

void GenSpec::validate() const {
  if (degree < 4 || degree % 2 != 0) throw Error(ErrorCode::InvalidArgument, "degree must be even and at least 4");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "extremum range needs lo < hi");
}

std::uint64_t instance_seed(std::uint64_t seed, int degree, std::uint64_t index) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(degree));
  return splitmix64(s ^ index);
}

Polynomial poly_from_critical_points(std::span<const double> critical_points) {
  const double n = static_cast<double>(critical_points.size() + 1);
  return antiderivative(Polynomial::from_roots(critical_points, n));
}

std::vector<double> gen_critical_points(const GenSpec& spec, std::uint64_t index) {
  spec.validate();
  std::mt19937_64 rng(instance_seed(spec.seed, spec.degree, index));
  std::vector<double> draws(static_cast<std::size_t>(spec.degree - 1));
  for (double& r : draws) r = spec.lo + (spec.hi - spec.lo) * unit_uniform(rng);
  return draws;
}

Polynomial gen_poly(const GenSpec& spec, std::uint64_t index) {
  return poly_from_critical_points(gen_critical_points(spec, index));
}

std::string_view to_string(BenchMethod method) {
  switch (method) {
    case BenchMethod::Steklov: return "steklov";
    case BenchMethod::Quadratic: return "quadratic";
    case BenchMethod::Both: return "both";
  }
  return "unknown";
}

T0Map T0Map::defaults() {
  T0Map m;
  for (int d = 4; d <= 20; d += 2) m.steklov[d] = d == 4 ? 6.0 : 7.0;
  m.quadratic = {{4, 1e3}, {6, 1e4}, {8, 1e5}, {10, 1e8}, {12, 1e8}, {14, 1e8},
                 {16, 1e10}, {18, 1e10}, {20, 1e10}};
  return m;
}

double T0Map::lookup(Method method, int degree) const {
  const auto& table = method == Method::Quadratic ? quadratic : steklov;
  const auto it = table.find(degree);
  if (it == table.end()) {
    throw Error(ErrorCode::InvalidArgument, "no t0 for degree " + std::to_string(degree));
  }
  return it->second;
}

BenchReport run_failure_table(const std::vector<int>& degrees, int samples, BenchMethod method,
                              const T0Map& t0_map, std::uint64_t seed, const BenchOptions& opts) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be at least 1");
  const std::vector<Method> methods = methods_of(method);
  for (int d : degrees) {
    GenSpec{d, -5.0, 5.0, seed}.validate();
    for (Method m : methods) t0_map.lookup(m, d);
  }

  const auto started = std::chrono::steady_clock::now();
  BenchReport report;
  report.seed = seed;
  report.method = method;
  report.options = opts;
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(samples));
  report.options.threads = threads;

  std::vector<BenchRow> rows;
  for (int degree : degrees) {
    const GenSpec spec{degree, -5.0, 5.0, seed};
    std::vector<InstanceOutcome> outcomes(static_cast<std::size_t>(samples));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int i = next++; i < samples; i = next++) {
        const Polynomial p = gen_poly(spec, static_cast<std::uint64_t>(i));
        const OracleResult truth = poly_global_min(p);
        const ObjectiveFunction obj = ObjectiveFunction::from_polynomial(p);
        InstanceOutcome& o = outcomes[static_cast<std::size_t>(i)];
        for (Method m : methods) {
          RunConfig cfg;
          cfg.t0 = t0_map.lookup(m, degree);
          cfg.t0_mode = T0Mode::Explicit;
          cfg.rtol = opts.rtol;
          cfg.atol = opts.atol;
          cfg.max_steps = opts.max_steps;
          cfg.record_trajectory = false;
          const RunResult r = m == Method::Quadratic ? run_quadratic(obj, cfg) : run_steklov(obj, cfg);
          (m == Method::Quadratic ? o.quadratic : o.steklov) = classify(r, truth).verdict;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (Method m : methods) {
      BenchRow row;
      row.method = m;
      row.degree = degree;
      row.t0 = t0_map.lookup(m, degree);
      row.samples = samples;
      for (const auto& o : outcomes) {
        const Verdict v = m == Method::Quadratic ? o.quadratic : o.steklov;
        if (v == Verdict::GlobalSuccess) ++row.n_global;
        else if (v == Verdict::LocalOnly) ++row.n_local;
        else ++row.n_noconverge;
      }
      row.failure_rate = static_cast<double>(row.n_local + row.n_noconverge) / samples;
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) { return a.method < b.method; });
  report.rows = std::move(rows);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out = "method,degree,t0,samples,n_global,n_local,n_noconverge,failure_rate\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.method)) + ',' + std::to_string(r.degree) + ',' + fmt(r.t0) + ',' +
           std::to_string(r.samples) + ',' + std::to_string(r.n_global) + ',' + std::to_string(r.n_local) +
           ',' + std::to_string(r.n_noconverge) + ',' + fmt(r.failure_rate) + '\n';
  }
  return out;
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["method"] = std::string(to_string(method));
  j["seed"] = seed;
  j["generator"] = generator;
  j["extremum_range"] = {-5.0, 5.0};
  j["tolerances"] = {{"rtol", options.rtol}, {"atol", options.atol}, {"max_steps", options.max_steps}};
  j["threads"] = options.threads;
  j["wall_time"] = wall_time;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"method", std::string(to_string(r.method))},
                   {"degree", r.degree},
                   {"t0", r.t0},
                   {"samples", r.samples},
                   {"n_global", r.n_global},
                   {"n_local", r.n_local},
                   {"n_noconverge", r.n_noconverge},
                   {"failure_rate", r.failure_rate}});
  }
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string BenchReport::to_table() const {
  std::vector<int> degrees;
  for (const auto& r : rows) {
    if (std::find(degrees.begin(), degrees.end(), r.degree) == degrees.end()) degrees.push_back(r.degree);
  }
  std::sort(degrees.begin(), degrees.end());
  const bool has_s = method != BenchMethod::Quadratic;
  const bool has_q = method != BenchMethod::Steklov;
  std::ostringstream os;
  char line[160];
  os << "  n";
  if (has_s) os << " | steklov t0 | failure";
  if (has_q) os << " | quadratic t0 | failure";
  os << '\n';
  for (int d : degrees) {
    std::snprintf(line, sizeof line, "%3d", d);
    os << line;
    for (const auto& r : rows) {
      if (r.degree != d) continue;
      const int width = r.method == Method::Quadratic ? 12 : 10;
      std::snprintf(line, sizeof line, " | %*s | %6.1f%%", width, fmt(r.t0).c_str(), 100.0 * r.failure_rate);
      os << line;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace steklov
