#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jetmove/series.hpp"

namespace jetmove {

enum class Surface { Torus, Sphere };
std::string surface_name(Surface s);

/// Point (u:v) of P^1, normalized so the last nonzero coordinate is 1.
struct ProjPoint {
  Scalar u, v;
  static ProjPoint make(const Scalar& u, const Scalar& v);
  static ProjPoint finite(const Scalar& a) { return {a, Scalar(1)}; }
  static ProjPoint infinity() { return {Scalar(1), Scalar(0)}; }
  bool is_infinite() const { return v.is_zero(); }
  std::string str() const;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

struct TorusPoint {
  ProjPoint x, y;
  static TorusPoint finite(const Scalar& a, const Scalar& b) {
    return {ProjPoint::finite(a), ProjPoint::finite(b)};
  }
  std::string str() const;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

struct SpherePoint {
  Scalar x, y, z;
  /// Throws InvalidPoint unless x^2 + y^2 + z^2 = 1.
  static SpherePoint make(const Scalar& x, const Scalar& y, const Scalar& z);
  const Scalar& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  std::string str() const;
  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

using Point = std::variant<TorusPoint, SpherePoint>;

/// Affine chart of each P^1 factor: 0 is the coordinate u/v, 1 is v/u.
/// A transposed jet is a graph over the y-factor coordinate instead of x.
struct TorusChart {
  int x = 0;
  int y = 0;
  bool transposed = false;
  friend bool operator==(const TorusChart&, const TorusChart&) = default;
};

/// Ideal ((s - s0)^e, w - f(s)) in the chart coordinates (s, w) of x and y,
/// or ((w - w0)^e, s - f(w)) when transposed.
struct TorusJet {
  TorusChart chart;
  TorusPoint center;
  Series f;
  int order() const { return f.order(); }
  friend bool operator==(const TorusJet&, const TorusJet&) = default;
};

/// Ideal ((v - v0)^e, a - g(v), b - h(v)) where v is coordinate `var` and
/// (a, b) are the two remaining coordinates in ascending order.
struct SphereJet {
  int var = 0;
  SpherePoint center;
  Series g, h;
  int order() const { return g.order(); }
  friend bool operator==(const SphereJet&, const SphereJet&) = default;
};

class Jet {
 public:
  Jet(TorusJet j) : v_(std::move(j)) {}   // NOLINT
  Jet(SphereJet j) : v_(std::move(j)) {}  // NOLINT
  Surface surface() const { return v_.index() == 0 ? Surface::Torus : Surface::Sphere; }
  int order() const;
  Point center() const;
  const TorusJet& torus() const;
  const SphereJet& sphere() const;
  std::string str() const;
  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  std::variant<TorusJet, SphereJet> v_;
};

/// Parametrized arcs t -> X(t), all series centered at 0 with common order.
/// Torus: homogeneous pairs (xu : xv), (yu : yv). Sphere: ambient (x, y, z).
struct TorusArc {
  Series xu, xv, yu, yv;
};
struct SphereArc {
  Series x, y, z;
};

TorusArc jet_arc(const TorusJet& j);
SphereArc jet_arc(const SphereJet& j);
/// Canonical jet of an arc (chart, graph variable and graph series are unique).
TorusJet canonical_jet(const TorusArc& a);
SphereJet canonical_jet(const SphereArc& a);

/// Torus raw ideal ((s - s0)^e, a(s) w + b(s)) in the given chart (the
/// transposed flag swaps the roles of s and w); a must be a unit.
Jet jet_canonicalize_torus(TorusChart chart, const TorusPoint& center, const Series& a,
                           const Series& b);
/// Sphere raw ideal ((v - v0)^e, m00 a + m01 b + c0, m10 a + m11 b + c1) where
/// (a, b) are the non-`var` coordinates; the 2x2 matrix must be a unit.
Jet jet_canonicalize_sphere(int var, const Series& m00, const Series& m01, const Series& c0,
                            const Series& m10, const Series& m11, const Series& c1);
/// Re-canonicalizes an arbitrary graph-form jet (chart choice may change).
Jet jet_canonicalize(const Jet& j);

/// Empty when valid, otherwise a description of the first violated condition.
std::optional<std::string> jet_validate(const Jet& j);
/// Throws InvalidJet with the report when jet_validate fails.
void jet_require_valid(const Jet& j);

bool jet_is_vertical(const Jet& j);
bool jets_mutually_distant(const std::vector<Jet>& js);
/// (a, b) on the torus in chart coordinates, (a, b, c) ambient on the sphere.
std::vector<Scalar> jet_tangent_vector(const Jet& j);

/// Order-1 jet at a point.
Jet point_jet(const Point& p);

struct StandardConfig {
  Surface surface;
  std::vector<Jet> jets;
};

/// Torus: centers (i, 0); sphere: equator points at tangent-half-angle i + 1.
StandardConfig standard_config(Surface s, const std::vector<int>& partition);
SpherePoint standard_sphere_center(int i);

}  // namespace jetmove
