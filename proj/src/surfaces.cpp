#include "jetmove/surfaces.hpp"

#include "jetmove/errors.hpp"
#include "jetmove/exactalg.hpp"

namespace jetmove {

std::string surface_name(Surface s) { return s == Surface::Torus ? "torus" : "sphere"; }

ProjPoint ProjPoint::make(const Scalar& u, const Scalar& v) {
  if (!v.is_zero()) return {u / v, Scalar(1)};
  if (u.is_zero()) throw Error(Errc::InvalidPoint, "(0:0) is not a point of P^1");
  return infinity();
}

std::string ProjPoint::str() const { return is_infinite() ? "inf" : u.str(); }

std::string TorusPoint::str() const { return "(" + x.str() + ", " + y.str() + ")"; }

SpherePoint SpherePoint::make(const Scalar& x, const Scalar& y, const Scalar& z) {
  if (x * x + y * y + z * z != Scalar(1))
    throw Error(Errc::InvalidPoint, "(" + x.str() + ", " + y.str() + ", " + z.str() + ") is not on the sphere");
  return {x, y, z};
}

std::string SpherePoint::str() const { return "(" + x.str() + ", " + y.str() + ", " + z.str() + ")"; }

int Jet::order() const {
  return std::visit([](const auto& j) { return j.order(); }, v_);
}

Point Jet::center() const {
  return std::visit([](const auto& j) -> Point { return j.center; }, v_);
}

const TorusJet& Jet::torus() const {
  if (auto* t = std::get_if<TorusJet>(&v_)) return *t;
  throw Error(Errc::MixedSurfaces, "expected a torus jet");
}

const SphereJet& Jet::sphere() const {
  if (auto* s = std::get_if<SphereJet>(&v_)) return *s;
  throw Error(Errc::MixedSurfaces, "expected a sphere jet");
}

namespace {

const char* kAxis[] = {"x", "y", "z"};

// Affine coordinate of p in chart c, if p lies in it.
std::optional<Scalar> chart_coord(const ProjPoint& p, int c) {
  if (c == 0) {
    if (p.is_infinite()) return std::nullopt;
    return p.u;
  }
  if (p.u.is_zero()) return std::nullopt;
  return p.v / p.u;
}

ProjPoint from_chart(const Scalar& s, int c) {
  return c == 0 ? ProjPoint::finite(s) : ProjPoint::make(Scalar(1), s);
}

std::pair<Series, Series> homogeneous(const Series& s, int c) {
  const Series one = Series::constant(Scalar(1), s.center(), s.order());
  return c == 0 ? std::pair{s, one} : std::pair{one, s};
}

// Chart and affine series of a homogeneous pair.
std::pair<int, Series> dehomogenize(const Series& u, const Series& v) {
  if (!v[0].is_zero()) return {0, u * series_invert(v)};
  if (u[0].is_zero()) throw Error(Errc::Internal, "homogeneous pair vanishes at the center");
  return {1, v * series_invert(u)};
}

Scalar require_coord(const ProjPoint& p, int c, const char* what) {
  auto s = chart_coord(p, c);
  if (!s) throw Error(Errc::InvalidJet, std::string(what) + " coordinate is not in chart " + std::to_string(c));
  return *s;
}

}  // namespace

std::string Jet::str() const {
  if (surface() == Surface::Torus) {
    const auto& j = torus();
    std::string s = "torus jet e=" + std::to_string(j.order()) + " at " + j.center.str();
    s += j.chart.transposed ? ": x = " : ": y = ";
    return s + j.f.str();
  }
  const auto& j = sphere();
  const int a = j.var == 0 ? 1 : 0, b = j.var == 2 ? 1 : 2;
  return "sphere jet e=" + std::to_string(j.order()) + " at " + j.center.str() + ": " + kAxis[a] +
         " = " + j.g.str() + ", " + kAxis[b] + " = " + j.h.str();
}

TorusArc jet_arc(const TorusJet& j) {
  const int e = j.order();
  const Series t = Series::variable(Scalar(0), e);
  const Series graph = j.f.recentered(Scalar(0));
  Series s = t, w = t;
  if (!j.chart.transposed) {
    s = t + require_coord(j.center.x, j.chart.x, "x");
    w = graph;
  } else {
    w = t + require_coord(j.center.y, j.chart.y, "y");
    s = graph;
  }
  auto [xu, xv] = homogeneous(s, j.chart.x);
  auto [yu, yv] = homogeneous(w, j.chart.y);
  return {xu, xv, yu, yv};
}

SphereArc jet_arc(const SphereJet& j) {
  const int e = j.order();
  std::array<Series, 3> c{Series::zero(Scalar(0), e), Series::zero(Scalar(0), e), Series::zero(Scalar(0), e)};
  const int a = j.var == 0 ? 1 : 0, b = j.var == 2 ? 1 : 2;
  c[static_cast<std::size_t>(j.var)] = Series::variable(Scalar(0), e) + j.center[j.var];
  c[static_cast<std::size_t>(a)] = j.g.recentered(Scalar(0));
  c[static_cast<std::size_t>(b)] = j.h.recentered(Scalar(0));
  return {c[0], c[1], c[2]};
}

TorusJet canonical_jet(const TorusArc& a) {
  auto [cx, s] = dehomogenize(a.xu, a.xv);
  auto [cy, w] = dehomogenize(a.yu, a.yv);
  const int e = s.order();
  TorusJet j{{cx, cy, false}, {from_chart(s[0], cx), from_chart(w[0], cy)}, Series::zero(s[0], e)};
  if (e == 1 || !s[1].is_zero()) {
    j.f = express_in(w, s);
  } else if (!w[1].is_zero()) {
    j.chart.transposed = true;
    j.f = express_in(s, w);
  } else {
    throw Error(Errc::NotCurvilinear, "arc has zero velocity");
  }
  return j;
}

SphereJet canonical_jet(const SphereArc& a) {
  const std::array<const Series*, 3> c{&a.x, &a.y, &a.z};
  const int e = a.x.order();
  int var = 0;
  if (e > 1) {
    var = -1;
    for (int k = 0; k < 3 && var < 0; ++k)
      if (!(*c[static_cast<std::size_t>(k)])[1].is_zero()) var = k;
    if (var < 0) throw Error(Errc::NotCurvilinear, "arc has zero velocity");
  }
  const int i = var == 0 ? 1 : 0, k = var == 2 ? 1 : 2;
  const Series& v = *c[static_cast<std::size_t>(var)];
  return {var, SpherePoint::make(a.x[0], a.y[0], a.z[0]), express_in(*c[static_cast<std::size_t>(i)], v),
          express_in(*c[static_cast<std::size_t>(k)], v)};
}

Jet jet_canonicalize_torus(TorusChart chart, const TorusPoint& center, const Series& a,
                           const Series& b) {
  if (!a.is_unit()) throw Error(Errc::NotCurvilinear, "linear part is not a unit");
  const Series graph = (-b * series_invert(a)).recentered(Scalar(0));
  const Scalar base = chart.transposed ? require_coord(center.y, chart.y, "y")
                                       : require_coord(center.x, chart.x, "x");
  const Series t = Series::variable(Scalar(0), a.order()) + base;
  const Series& s = chart.transposed ? graph : t;
  const Series& w = chart.transposed ? t : graph;
  auto [xu, xv] = homogeneous(s, chart.x);
  auto [yu, yv] = homogeneous(w, chart.y);
  return canonical_jet(TorusArc{xu, xv, yu, yv});
}

Jet jet_canonicalize_sphere(int var, const Series& m00, const Series& m01, const Series& c0,
                            const Series& m10, const Series& m11, const Series& c1) {
  const Series det = m00 * m11 - m01 * m10;
  if (!det.is_unit()) throw Error(Errc::NotCurvilinear, "linear part is singular");
  const Series inv = series_invert(det);
  const Series a = (m01 * c1 - m11 * c0) * inv;
  const Series b = (m10 * c0 - m00 * c1) * inv;
  const int e = m00.order();
  std::array<Series, 3> c{Series::zero(Scalar(0), e), Series::zero(Scalar(0), e), Series::zero(Scalar(0), e)};
  const int i = var == 0 ? 1 : 0, k = var == 2 ? 1 : 2;
  c[static_cast<std::size_t>(var)] = Series::variable(Scalar(0), e) + m00.center();
  c[static_cast<std::size_t>(i)] = a.recentered(Scalar(0));
  c[static_cast<std::size_t>(k)] = b.recentered(Scalar(0));
  return canonical_jet(SphereArc{c[0], c[1], c[2]});
}

Jet jet_canonicalize(const Jet& j) {
  if (j.surface() == Surface::Torus) return canonical_jet(jet_arc(j.torus()));
  return canonical_jet(jet_arc(j.sphere()));
}

std::optional<std::string> jet_validate(const Jet& j) {
  try {
    if (j.surface() == Surface::Torus) {
      const auto& t = j.torus();
      if (t.chart.x < 0 || t.chart.x > 1 || t.chart.y < 0 || t.chart.y > 1) return "chart index must be 0 or 1";
      auto sx = chart_coord(t.center.x, t.chart.x);
      auto sy = chart_coord(t.center.y, t.chart.y);
      if (!sx || !sy) return "center is not in the chart";
      const Scalar& base = t.chart.transposed ? *sy : *sx;
      const Scalar& value = t.chart.transposed ? *sx : *sy;
      if (t.f.center() != base) return "graph series is not centered at the jet center";
      if (t.f[0] != value) return "graph value " + t.f[0].str() + " differs from center coordinate " + value.str();
      return std::nullopt;
    }
    const auto& s = j.sphere();
    if (s.var < 0 || s.var > 2) return "series variable must be x, y or z";
    const auto& c = s.center;
    if (c.x * c.x + c.y * c.y + c.z * c.z != Scalar(1)) return "center is not on the sphere";
    if (s.g.order() != s.h.order()) return "graph series have different orders";
    if (s.g.center() != c[s.var] || s.h.center() != c[s.var]) return "graph series are not centered at the jet center";
    const int a = s.var == 0 ? 1 : 0, b = s.var == 2 ? 1 : 2;
    if (s.g[0] != c[a] || s.h[0] != c[b]) return "graph values differ from the center";
    const SphereArc arc = jet_arc(s);
    const Series lhs = arc.x * arc.x + arc.y * arc.y + arc.z * arc.z - Scalar(1);
    for (int k = 0; k < lhs.order(); ++k)
      if (!lhs[k].is_zero())
        return "x^2 + y^2 + z^2 - 1 has nonzero coefficient " + lhs[k].str() + " at order " + std::to_string(k);
    return std::nullopt;
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

void jet_require_valid(const Jet& j) {
  if (auto r = jet_validate(j)) throw Error(Errc::InvalidJet, *r);
}

std::vector<Scalar> jet_tangent_vector(const Jet& j) {
  if (j.surface() == Surface::Torus) {
    const auto& t = j.torus();
    if (t.order() == 1) return {Scalar(0), Scalar(0)};
    if (t.chart.transposed) return {t.f[1], Scalar(1)};
    return {Scalar(1), t.f[1]};
  }
  const auto& s = j.sphere();
  std::vector<Scalar> v(3);
  if (s.order() == 1) return v;
  const int a = s.var == 0 ? 1 : 0, b = s.var == 2 ? 1 : 2;
  v[static_cast<std::size_t>(s.var)] = Scalar(1);
  v[static_cast<std::size_t>(a)] = s.g[1];
  v[static_cast<std::size_t>(b)] = s.h[1];
  return v;
}

bool jet_is_vertical(const Jet& j) {
  if (j.surface() == Surface::Sphere && !j.sphere().center.z.is_zero())
    throw Error(Errc::NotOnEquator, "verticality is defined only for centers with z = 0");
  if (j.order() == 1) return false;
  const auto v = jet_tangent_vector(j);
  return v[0].is_zero() && (j.surface() == Surface::Torus || v[1].is_zero());
}

bool jets_mutually_distant(const std::vector<Jet>& js) {
  for (std::size_t i = 0; i < js.size(); ++i)
    for (std::size_t k = 0; k < i; ++k) {
      if (js[i].surface() != js[k].surface()) throw Error(Errc::MixedSurfaces, "jets on different surfaces");
      if (js[i].center() == js[k].center()) return false;
    }
  return true;
}

Jet point_jet(const Point& p) {
  if (auto* t = std::get_if<TorusPoint>(&p)) {
    const int cx = t->x.is_infinite() ? 1 : 0, cy = t->y.is_infinite() ? 1 : 0;
    const Scalar s = *chart_coord(t->x, cx), w = *chart_coord(t->y, cy);
    return TorusJet{{cx, cy, false}, *t, Series::constant(w, s, 1)};
  }
  const auto& s = std::get<SpherePoint>(p);
  return SphereJet{0, s, Series::constant(s.y, s.x, 1), Series::constant(s.z, s.x, 1)};
}

SpherePoint standard_sphere_center(int i) {
  const Scalar t(i + 1);
  const Scalar d = Scalar(1) + t * t;
  return SpherePoint::make((Scalar(1) - t * t) / d, Scalar(2) * t / d, Scalar(0));
}

StandardConfig standard_config(Surface s, const std::vector<int>& partition) {
  if (partition.empty()) throw Error(Errc::PreconditionFailed, "partition must be nonempty");
  StandardConfig cfg{s, {}};
  for (std::size_t k = 0; k < partition.size(); ++k) {
    const int e = partition[k];
    if (e < 1) throw Error(Errc::PreconditionFailed, "partition parts must be positive");
    const int i = static_cast<int>(k) + 1;
    if (s == Surface::Torus) {
      cfg.jets.push_back(TorusJet{{0, 0, false}, TorusPoint::finite(Scalar(i), Scalar(0)), Series::zero(Scalar(i), e)});
    } else {
      const SpherePoint c = standard_sphere_center(i);
      const Series u = Series::from_poly(Poly{Scalar(1), Scalar(0), Scalar(-1)}, c.x, e);
      cfg.jets.push_back(SphereJet{0, c, hensel_sqrt(u, c.y), Series::zero(c.x, e)});
    }
  }
  return cfg;
}

}  // namespace jetmove
