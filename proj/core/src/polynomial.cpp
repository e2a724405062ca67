#include "steklov/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "steklov/error.hpp"

namespace steklov {

namespace {

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// p is monotone on [lo, hi] with p(lo), p(hi) of opposite sign.
double bisect_root(const Polynomial& p, double lo, double hi, double flo) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Rolle isolation: between consecutive critical points p is monotone, so each
// sign change there brackets exactly one simple root; critical points where p
// itself vanishes are the even-multiplicity roots.
std::vector<double> roots_between(const Polynomial& p, double lo, double hi, const RootOptions& opts) {
  const int n = p.degree();
  if (n <= 0) return {};
  if (n == 1) {
    const double r = -p[0] / p[1];
    return (r >= lo && r <= hi) ? std::vector<double>{r} : std::vector<double>{};
  }

  std::vector<double> crit = roots_between(differentiate(p), lo, hi, opts);
  std::vector<double> knots;
  knots.reserve(crit.size() + 2);
  knots.push_back(lo);
  for (double c : crit) {
    if (c > lo && c < hi) knots.push_back(c);
  }
  knots.push_back(hi);

  std::vector<double> found;
  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) values[i] = p(knots[i]);

  std::vector<bool> crossing(knots.size() - 1, false);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (sign_of(values[i]) * sign_of(values[i + 1]) < 0) {
      crossing[i] = true;
      found.push_back(bisect_root(p, knots[i], knots[i + 1], values[i]));
    }
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const bool interior = i > 0 && i + 1 < knots.size();
    // A near-zero extremum flanked by two crossings sits between two close
    // simple roots, not on a double root.
    const bool flanked = interior && crossing[i - 1] && crossing[i];
    const bool vanishes = values[i] == 0.0 || (interior && !flanked &&
                                               std::abs(values[i]) <= opts.zero_tol * magnitude(p, knots[i]));
    if (vanishes) found.push_back(knots[i]);
  }
  std::sort(found.begin(), found.end());

  std::vector<double> merged;
  for (double r : found) {
    if (!merged.empty() && r - merged.back() <= opts.cluster_tol * (1.0 + std::abs(r))) {
      if (std::abs(p(r)) < std::abs(p(merged.back()))) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite polynomial coefficient");
  }
  trim(coeffs_);
}

Polynomial Polynomial::from_descending(std::span<const double> descending) {
  return Polynomial(std::vector<double>(descending.rbegin(), descending.rend()));
}

Polynomial Polynomial::from_roots(std::span<const double> roots, double lead) {
  std::vector<double> c{lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= r * c[j];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

std::vector<double> Polynomial::descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

double Polynomial::operator()(double x) const {
  double acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

double eval(const Polynomial& p, double x) { return p(x); }

double magnitude(const Polynomial& p, double x) {
  const auto c = p.coeffs();
  const double ax = std::abs(x);
  double acc = std::abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * ax + std::abs(c[k]);
  return acc;
}

Polynomial differentiate(const Polynomial& p) {
  const auto c = p.coeffs();
  if (c.size() == 1) return Polynomial();
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return Polynomial(std::move(d));
}

Polynomial antiderivative(const Polynomial& p) {
  if (p.is_zero()) return Polynomial();
  const auto c = p.coeffs();
  std::vector<double> a(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial compose_affine(const Polynomial& p, double alpha, double a) {
  if (alpha == 0.0) throw Error(ErrorCode::InvalidArgument, "compose_affine needs a nonzero scale");
  const auto c = p.coeffs();
  std::vector<double> acc{c.back()};
  // Horner in the ring: acc <- acc * (alpha x - a) + c_k.
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += alpha * acc[j];
      next[j] -= a * acc[j];
    }
    next[0] += c[k];
    acc = std::move(next);
  }
  return Polynomial(std::move(acc));
}

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
  const auto l = lhs.coeffs();
  const auto r = rhs.coeffs();
  std::vector<double> s(std::max(l.size(), r.size()), 0.0);
  for (std::size_t k = 0; k < l.size(); ++k) s[k] += l[k];
  for (std::size_t k = 0; k < r.size(); ++k) s[k] += r[k];
  return Polynomial(std::move(s));
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  const auto l = lhs.coeffs();
  const auto r = rhs.coeffs();
  std::vector<double> m(l.size() + r.size() - 1, 0.0);
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) m[i + j] += l[i] * r[j];
  }
  return Polynomial(std::move(m));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<double> taylor_coefficients(const Polynomial& p, double x) {
  std::vector<double> b(p.coeffs().begin(), p.coeffs().end());
  const std::size_t n = b.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n; j-- > i;) b[j] += x * b[j + 1];
  }
  return b;
}

DepressedQuartic depress_quartic(const Polynomial& p) {
  if (p.degree() != 4 || !p.is_monic()) {
    throw Error(ErrorCode::InvalidArgument, "depress_quartic needs a monic quartic");
  }
  const double shift = p[3] / 4.0;
  const Polynomial q = compose_affine(p, 1.0, shift);
  return DepressedQuartic{q[2], q[1], q[0], shift};
}

double root_bound(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::DegenerateInput, "zero polynomial has no root bound");
  const int n = p.degree();
  if (n == 0) return 0.0;
  const double lead = std::abs(p.leading());
  double cauchy = 0.0;
  double fujiwara = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ratio = std::abs(p[k]) / lead;
    cauchy = std::max(cauchy, ratio);
    const double scaled = (k == 0) ? ratio / 2.0 : ratio;
    fujiwara = std::max(fujiwara, std::pow(scaled, 1.0 / static_cast<double>(n - k)));
  }
  return std::min(1.0 + cauchy, 2.0 * fujiwara);
}

RootSet real_roots(const Polynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error(ErrorCode::DegenerateInput, "real_roots of the zero polynomial");
  RootSet out;
  if (p.degree() == 0) return out;
  // x^m factors give the root 0 exactly.
  const auto c = p.coeffs();
  std::size_t m = 0;
  while (c[m] == 0.0) ++m;
  const Polynomial q(std::vector<double>(c.begin() + static_cast<std::ptrdiff_t>(m), c.end()));
  if (q.degree() > 0) {
    out.radius = root_bound(q) * (1.0 + 1e-9);
    out.roots = roots_between(q, -out.radius, out.radius, opts);
  }
  if (m > 0) {
    out.roots.insert(std::lower_bound(out.roots.begin(), out.roots.end(), 0.0), 0.0);
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  }
  return out;
}

}  // namespace steklov
