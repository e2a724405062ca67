#pragma once

#include <span>
#include <vector>

namespace steklov {

/// Dense real univariate polynomial. Coefficients are stored in ascending
/// order (coeffs()[k] multiplies x^k) and trailing zeros are trimmed, so the
/// last stored coefficient is nonzero unless the polynomial is identically
/// zero.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> ascending);

  /// Coefficient list written the way polynomials are usually printed,
  /// highest degree first: {1, -8, -18, 56, 0} is x^4 - 8x^3 - 18x^2 + 56x.
  static Polynomial from_descending(std::span<const double> descending);
  /// lead * prod (x - r).
  static Polynomial from_roots(std::span<const double> roots, double lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  bool is_monic() const { return coeffs_.back() == 1.0; }
  double leading() const { return coeffs_.back(); }

  std::span<const double> coeffs() const { return coeffs_; }
  std::vector<double> descending() const;

  /// Coefficient of x^k; zero beyond the degree.
  double operator[](int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
  }

  double operator()(double x) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double x);

/// sum |c_k| |x|^k, the natural scale of rounding error in eval(p, x).
double magnitude(const Polynomial& p, double x);

Polynomial differentiate(const Polynomial& p);

/// P with P' = p and P(0) = 0.
Polynomial antiderivative(const Polynomial& p);

/// q(x) = p(alpha * x - a), expanded exactly in the coefficient basis.
Polynomial compose_affine(const Polynomial& p, double alpha, double a);

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator*(double s, const Polynomial& p);

/// Taylor coefficients about x: p(x + s) = sum_j c[j] s^j, c[j] = p^(j)(x)/j!.
std::vector<double> taylor_coefficients(const Polynomial& p, double x);

/// x^4 + a2 x^2 + a1 x + a0. The source quartic g relates to it through
/// g(x) = depressed(x + shift), shift = b3/4, so a depressed-coordinate
/// point z maps back as x = z - shift.
struct DepressedQuartic {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double shift = 0.0;

  Polynomial polynomial() const { return Polynomial({a0, a1, a2, 0.0, 1.0}); }
  double to_original(double z) const { return z - shift; }
  double to_depressed(double x) const { return x + shift; }
};

DepressedQuartic depress_quartic(const Polynomial& p);

struct RootOptions {
  /// Roots closer than cluster_tol * (1 + |r|) are reported once.
  double cluster_tol = 1e-7;
  /// Critical points where |p| <= zero_tol * magnitude(p, c) count as
  /// (even-multiplicity) roots.
  double zero_tol = 1e-12;
};

struct RootSet {
  std::vector<double> roots;  // strictly increasing
  double radius = 0.0;        // every real root lies in [-radius, radius]
};

/// Bound on the moduli of all roots: the smaller of the Cauchy and
/// Fujiwara bounds.
double root_bound(const Polynomial& p);

RootSet real_roots(const Polynomial& p, const RootOptions& opts = {});

}  // namespace steklov
