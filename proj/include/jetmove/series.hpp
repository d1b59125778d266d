#pragma once

#include <string>
#include <vector>

#include "jetmove/poly.hpp"
#include "jetmove/scalar.hpp"

namespace jetmove {

/// Element of R[x]/(x - center)^order, stored as the `order` Taylor
/// coefficients in t = x - center. Binary operations require identical
/// (center, order); changing precision is always explicit.
class Series {
 public:
  Series(Scalar center, int order, std::vector<Scalar> coeffs);

  static Series zero(const Scalar& center, int order);
  static Series constant(const Scalar& c, const Scalar& center, int order);
  /// The coordinate x itself: center + t.
  static Series variable(const Scalar& center, int order);
  /// Taylor expansion of p around center, truncated.
  static Series from_poly(const Poly& p, const Scalar& center, int order);

  const Scalar& center() const { return center_; }
  int order() const { return static_cast<int>(c_.size()); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  const Scalar& constant_term() const { return c_[0]; }

  /// Representative of degree < order as a polynomial in x.
  Poly to_poly() const;
  /// Same element viewed in the smaller ring (new_order <= order).
  Series truncate(int new_order) const;
  /// Zero-padded representative at a larger order (new_order >= order).
  Series lift(int new_order) const;
  /// Same coefficients, re-labelled center (used for arcs in a local parameter).
  Series recentered(const Scalar& c) const { return Series(c, order(), c_); }

  bool is_zero() const;
  bool is_unit() const { return !c_[0].is_zero(); }

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(const Scalar& s);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Series& b) { return a *= b; }
  friend Series operator*(Series a, const Scalar& s) { return a *= s; }
  friend Series operator*(const Scalar& s, Series a) { return a *= s; }
  friend bool operator==(const Series& a, const Series& b);
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  Series operator+(const Scalar& s) const;
  Series operator-(const Scalar& s) const { return *this + (-s); }

  std::string str() const;

 private:
  void check_compatible(const Series& o) const;
  Scalar center_;
  std::vector<Scalar> c_;
};

/// p(s) computed in the ring of s.
Series eval_poly(const Poly& p, const Series& s);

/// Homogenized evaluation Σ p_k U^k V^(d-k) with d = deg p (used for maps of P^1).
Series eval_homogeneous(const Poly& p, int d, const Series& u, const Series& v);

/// Given s with s(0) = s0 and s'(0) != 0 and y, returns f with
/// y ≡ f(s - s0) (mod t^order), centered at s0.
Series express_in(const Series& y, const Series& s);

}  // namespace jetmove
