#include "steklov/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace steklov {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b, int& evals) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  evals += 15;
  return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_intervals) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<Panel> heap;
  heap.push(gauss_kronrod(f, a, b, out.evaluations));
  double value = heap.top().value;
  double error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= max_intervals) {
      out.converged = false;
      break;
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    const Panel left = gauss_kronrod(f, worst.a, mid, out.evaluations);
    const Panel right = gauss_kronrod(f, mid, worst.b, out.evaluations);
    heap.push(left);
    heap.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  // Resum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  return out;
}

}  // namespace steklov
