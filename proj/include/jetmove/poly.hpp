#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jetmove/scalar.hpp"

namespace jetmove {

/// Dense univariate polynomial, ascending coefficients; the zero polynomial
/// has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs);
  Poly(std::initializer_list<Scalar> coeffs) : Poly(std::vector<Scalar>(coeffs)) {}

  static Poly constant(const Scalar& c);
  static Poly monomial(const Scalar& c, int k);
  /// x - a
  static Poly linear_root(const Scalar& a);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int k) const;
  const Scalar& lead() const;

  Scalar operator()(const Scalar& x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly pow(unsigned n) const;
  /// this(other(x))
  Poly compose(const Poly& other) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division over the coefficient field; throws on zero divisor.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  /// Monic gcd (zero if both are zero).
  static Poly gcd(Poly a, Poly b);

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

/// One signed term of a printed sum: " - 3/4*x", " + (1 + t)*x^2", or
/// without the leading joiner when first.
std::string format_term(const Scalar& c, const std::string& mono, bool first);

}  // namespace jetmove
