#include "steklov/fixtures.hpp"

#include <cmath>
#include <string>

#include "steklov/error.hpp"

namespace steklov {

namespace {

struct PolyEntry {
  std::string_view name;
  std::vector<double> descending;
};

const std::vector<PolyEntry>& poly_table() {
  static const std::vector<PolyEntry> table = {
      {"p4_sec61", {1, -8, -18, 56, 0}},
      {"p6_sec62", {1, -66.0 / 5, -9.0 / 2, 422, -474, -2160, 0}},
      {"p10_sec63",
       {1, -260.0 / 9, 1035.0 / 4, -120, -9415, 32172, 175765.0 / 2, -1369360.0 / 3, -148560,
        1209600, 0}},
      {"p20_sec63",
       {1,
        -680.0 / 19,
        3935.0 / 9,
        -15755.0 / 17,
        -196105.0 / 8,
        2230697.0 / 12,
        20765145.0 / 112,
        -1351162585.0 / 208,
        10221013715.0 / 768,
        6382409515.0 / 64,
        -12625444643.0 / 32,
        -200463718805.0 / 288,
        2498521767895.0 / 512,
        465297612345.0 / 448,
        -2045419187205.0 / 64,
        198942566751.0 / 16,
        3627285358725.0 / 32,
        -56515087125.0,
        -201131555625.0,
        0,
        0}},
      {"quartic_quasiconvex", {1, 0, -0.09, -0.03, -1}},
      {"quartic_symmetric", {1, 0, -0.98, 0, 1}},
      {"quartic_general", {1, -4.0 / 15, -0.82, 0.168, 1}},
  };
  return table;
}

ObjectiveFunction quad_sine() {
  return ObjectiveFunction::from_functions(
      [](double x) { return 0.06 * x * x + std::sin(3.0 * x); },
      [](double x) { return 0.12 * x + 3.0 * std::cos(3.0 * x); },
      [](double x) { return 0.12 - 9.0 * std::sin(3.0 * x); }, "quad_sine");
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& e : poly_table()) names.emplace_back(e.name);
  names.emplace_back("quad_sine");
  return names;
}

std::optional<Polynomial> builtin_polynomial(std::string_view name) {
  for (const auto& e : poly_table()) {
    if (e.name == name) return Polynomial::from_descending(e.descending);
  }
  return std::nullopt;
}

ObjectiveFunction builtin(std::string_view name) {
  if (name == "quad_sine") return quad_sine();
  if (auto p = builtin_polynomial(name)) return ObjectiveFunction::from_polynomial(*p, std::string(name));
  throw Error(ErrorCode::InvalidArgument, "unknown builtin '" + std::string(name) + "'");
}

}  // namespace steklov
