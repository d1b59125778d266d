#pragma once

// Exact real numbers living in a tower of real quadratic extensions
// Q(√r1)(√r2)... of the rationals.
//
// A tower of depth k has basis { Π √r_i^{b_i} : b ∈ {0,1}^k }; coordinate
// index bit (i-1) selects √r_i. Every radicand r_i is a positive element of
// the level below that is not a square there, so the representation is unique
// and equality/sign are exact. Towers are interned: adjoining the same
// radicand to the same parent always yields the same Tower object.

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetmove {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Scalar {
 public:
  Scalar();
  Scalar(long value);  // NOLINT: implicit from integers is intended
  Scalar(long num, long den);
  explicit Scalar(mpq_class value);

  /// Parses a radical expression: rationals, + - * / ^n, parentheses, sqrt(...).
  static Scalar parse(std::string_view text);

  /// Nonnegative square root of `s`, adjoining a new tower level only when
  /// `s` is not already a square in its own field.
  static Scalar sqrt_adjoin(const Scalar& s);

  /// The nonnegative square root of *this if it is a square in its field.
  std::optional<Scalar> sqrt_in_field() const;

  std::string str() const;

  bool is_rational() const { return !tower_; }
  const mpq_class& rational() const;
  int depth() const;
  const TowerPtr& tower() const { return tower_; }
  std::span<const mpq_class> coords() const { return c_; }

  int sign() const;
  bool is_zero() const;
  bool is_one() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar inverse() const;
  Scalar pow(unsigned n) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

 private:
  friend class Tower;
  friend struct ScalarAccess;
  Scalar(TowerPtr tower, std::vector<mpq_class> coords);
  void trim();

  TowerPtr tower_;              // null means the rationals
  std::vector<mpq_class> c_;    // size 2^depth
};

class Tower {
 public:
  const TowerPtr& parent() const { return parent_; }
  const Scalar& radicand() const { return radicand_; }
  int depth() const { return depth_; }
  /// Radicand coordinates lifted to the full parent level (size 2^(depth-1)).
  const std::vector<mpq_class>& radicand_coords() const { return rad_coords_; }

  /// Interned tower node parent(√radicand). Caller guarantees the radicand is
  /// positive and not a square in the parent.
  static TowerPtr adjoin(const TowerPtr& parent, const Scalar& radicand);

  /// Radicand coordinates of every level, bottom first (size depth()).
  const std::vector<const std::vector<mpq_class>*>& level_radicands() const { return rads_; }
  /// Ancestors including this node, bottom first (size depth()).
  const std::vector<const Tower*>& chain() const { return chain_; }

  Tower(TowerPtr parent, Scalar radicand, std::vector<mpq_class> rad_coords, int depth)
      : parent_(std::move(parent)), radicand_(std::move(radicand)),
        rad_coords_(std::move(rad_coords)), depth_(depth) {}

 private:
  TowerPtr parent_;
  Scalar radicand_;
  std::vector<mpq_class> rad_coords_;
  int depth_;
  std::vector<const std::vector<mpq_class>*> rads_;
  std::vector<const Tower*> chain_;
};

int tower_depth(const TowerPtr& t);

/// Writes q > 0 as a^2 * f with f a positive integer free of small square
/// factors (trial division only, so f may keep squares of large primes).
std::pair<mpq_class, mpz_class> split_square(const mpq_class& q);

/// The positive generator √r of the top level of `t` (t must be non-null).
Scalar tower_generator(const TowerPtr& t);

}  // namespace jetmove
