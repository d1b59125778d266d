#pragma once

#include <utility>
#include <vector>

#include "jetmove/poly.hpp"
#include "jetmove/series.hpp"

namespace jetmove {

/// v with u*v = 1 in the ring of u. Throws NotAUnit.
Series series_invert(const Series& u);

/// Square root of u with constant term `seed`, by Newton iteration with
/// doubling precision. Throws BadSeed / ZeroSeed.
Series hensel_sqrt(const Series& u, const Scalar& seed);

struct Residue {
  Scalar center;
  int order;
  Series value;  // must live at (center, order)
};

/// Unique p with deg p < Σ orders and p ≡ value_i mod (x - center_i)^order_i.
Poly crt_combine(const std::vector<Residue>& residues);

/// Lagrange interpolation: the crt_combine special case with all orders 1.
Poly interpolate(const std::vector<std::pair<Scalar, Scalar>>& points);

/// Index of the first nonzero coefficient; the order when u is zero.
int poly_valuation(const Series& u);

struct RootRange {
  bool whole_line = true;
  Scalar lo, hi;
  static RootRange line() { return {}; }
  static RootRange closed(Scalar a, Scalar b) { return {false, std::move(a), std::move(b)}; }
};

/// Number of distinct real roots of p in the range (Sturm sequences on the
/// square-free part). Throws ZeroPolynomial.
int sturm_root_count(const Poly& p, const RootRange& range);

/// Sign-variation data backing a root count: roots = var_lo - var_hi (+ roots
/// sitting exactly on closed-interval endpoints).
struct SturmCertificate {
  bool whole_line = true;
  int chain_length = 0;
  int var_lo = 0;
  int var_hi = 0;
  int endpoint_roots = 0;
  int roots = 0;
};
SturmCertificate sturm_certificate(const Poly& p, const RootRange& range);

/// Disjoint closed intervals, each containing exactly one root of p in the
/// range (endpoints are dyadic refinements of the range). Used to report witnesses for failed checks.
std::vector<std::pair<Scalar, Scalar>> isolate_roots(const Poly& p, const RootRange& range);

/// Sign of p just to the right (dir = +1) or left (dir = -1) of x.
int one_sided_sign(const Poly& p, const Scalar& x, int dir);

}  // namespace jetmove
