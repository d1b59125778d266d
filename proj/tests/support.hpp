#pragma once

// Random generators and independent oracles shared by the unit tests and the
// acceptance suite. Oracles work on plain mpq vectors and do not call the
// library routine they check.

#include <gmpxx.h>

#include <random>
#include <vector>

#include "jetmove/automorphisms.hpp"
#include "jetmove/dantesque.hpp"
#include "jetmove/transitivity.hpp"

namespace testsupport {

using namespace jetmove;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
  bool coin(double p = 0.5) { return std::uniform_real_distribution<double>(0, 1)(g_) < p; }
  /// Small rational num/den with |num| <= n, 1 <= den <= d.
  Scalar rational(long n = 5, long d = 4) { return Scalar(range(-n, n), range(1, d)); }
  Scalar nonzero_rational(long n = 5, long d = 4) {
    for (;;) {
      Scalar s = rational(n, d);
      if (!s.is_zero()) return s;
    }
  }
  Poly poly(int max_degree, long n = 5, long d = 4) {
    std::vector<Scalar> c;
    const int deg = static_cast<int>(range(0, max_degree));
    for (int i = 0; i <= deg; ++i) c.push_back(rational(n, d));
    return Poly(c);
  }
  Series series(const Scalar& center, int order, long n = 5, long d = 4) {
    std::vector<Scalar> c;
    for (int i = 0; i < order; ++i) c.push_back(rational(n, d));
    return Series(center, order, c);
  }
  std::vector<int> partition(int max_sum, int max_parts) {
    std::vector<int> p;
    int left = max_sum;
    const int parts = static_cast<int>(range(1, max_parts));
    for (int i = 0; i < parts && left > 0; ++i) {
      const int e = static_cast<int>(range(1, std::min(left, 3)));
      p.push_back(e);
      left -= e;
    }
    return p;
  }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

// ---------- torus ----------

TorusPoint random_torus_point(Rng& r);
/// Random jet of the given order at the given center (arbitrary direction,
/// vertical with some probability).
Jet random_torus_jet(Rng& r, const TorusPoint& c, int order);
/// Random mutually distant torus jets with the given orders.
std::vector<Jet> random_torus_config(Rng& r, const std::vector<int>& orders);

// ---------- sphere ----------

/// Rational point from inverse stereographic projection, sometimes a pole or
/// a coordinate point.
SpherePoint random_sphere_point(Rng& r);
Jet random_sphere_jet(Rng& r, const SpherePoint& c, int order);
std::vector<Jet> random_sphere_config(Rng& r, const std::vector<int>& orders);

// ---------- words ----------

AutWord random_torus_word(Rng& r, int max_len);
AutWord random_sphere_word(Rng& r, int max_len);

// ---------- oracles ----------

using QPoly = std::vector<mpq_class>;  // ascending coefficients

/// Distinct real roots of p in the open interval (a, b) by Descartes-rule
/// bisection on the square-free part.
int oracle_roots_open(const QPoly& p, const mpq_class& a, const mpq_class& b);
/// Distinct real roots on the whole line.
int oracle_roots_line(const QPoly& p);
/// Distinct real roots in [a, b].
int oracle_roots_closed(const QPoly& p, const mpq_class& a, const mpq_class& b);

/// Taylor coefficients of p at c up to order n (by exact repeated synthetic division).
std::vector<Scalar> oracle_taylor(const Poly& p, const Scalar& c, int n);

/// Square root by solving s^2 = u coefficient by coefficient.
std::vector<Scalar> oracle_sqrt(const Series& u, const Scalar& seed);

/// Solves 2 a f = (1 + a^2) h coefficient by coefficient (a_0 = 0) and checks
/// (1 - a^2) f = (1 + a^2) g; returns nullopt if the second equation fails.
std::optional<std::vector<Scalar>> oracle_rotation_parameter(const Series& f, const Series& g, const Series& h);

/// Euler characteristic of a descriptor by resolving every record into e
/// ordinary blow-ups and contracting the chain of e - 1 exceptional circles.
int oracle_euler(const SurfaceDescriptor& d);
/// Nonorientable genus of the resolution from its Euler characteristic.
int oracle_resolution_genus(const SurfaceDescriptor& d);

SurfaceDescriptor random_descriptor(Rng& r);

}  // namespace testsupport
