#include "jetmove/automorphisms.hpp"

#include <cstdlib>
#include <mutex>
#include <numeric>

#include "jetmove/errors.hpp"

namespace jetmove {

namespace {

const char* kAxis[] = {"x", "y", "z"};

[[noreturn]] void forbidden_root(const Poly& p, const RootRange& range, const std::string& what) {
  auto iv = isolate_roots(p, range);
  std::string msg = what + " " + p.str() + " has a root";
  if (!iv.empty()) msg += " in [" + iv[0].first.str() + ", " + iv[0].second.str() + "]";
  throw Error(Errc::RootInForbiddenRegion, msg);
}

// p^2 + q^2 = r^2 checked as (r - p)(r + p) = q^2; for half-angle twists
// r + p is constant, which keeps the product cheap over a tower.
bool pythagorean(const Poly& p, const Poly& q, const Poly& r) { return (r - p) * (r + p) == q * q; }

}  // namespace

TorusTwist certify_twist(TorusTwist t) {
  if (t.axis != 0 && t.axis != 1) throw Error(Errc::PreconditionFailed, "twist axis must be 0 (x) or 1 (y)");
  if (t.q.is_zero()) throw Error(Errc::ZeroPolynomial, "twist denominator is zero");
  t.cert = sturm_certificate(t.q, RootRange::line());
  if (t.cert.roots != 0) forbidden_root(t.q, RootRange::line(), "denominator");
  if (t.p.degree() != t.q.degree())
    throw Error(Errc::DegreeMismatch, "deg p = " + std::to_string(t.p.degree()) +
                                          " but deg q = " + std::to_string(t.q.degree()));
  return t;
}

SphereTwist certify_twist(SphereTwist t) {
  if (t.fixed < 0 || t.fixed > 2) throw Error(Errc::PreconditionFailed, "fixed axis must be 0, 1 or 2");
  if (t.r.is_zero()) throw Error(Errc::ZeroPolynomial, "rotation denominator is zero");
  if (!pythagorean(t.p, t.q, t.r)) throw Error(Errc::IdentityFails, "p^2 + q^2 != r^2");
  const auto range = RootRange::closed(Scalar(-1), Scalar(1));
  t.cert = sturm_certificate(t.r, range);
  if (t.cert.roots != 0) forbidden_root(t.r, range, "denominator");
  return t;
}

TorusMoebius certify_moebius(TorusMoebius m) {
  for (const auto* a : {&m.mx, &m.my})
    if (((*a)[0] * (*a)[3] - (*a)[1] * (*a)[2]).is_zero())
      throw Error(Errc::PreconditionFailed, "Möbius matrix is singular");
  return m;
}

TorusTwist make_torus_twist(int axis, Poly p, Poly q) {
  return certify_twist(TorusTwist{axis, std::move(p), std::move(q), {}});
}

SphereTwist make_sphere_twist(int fixed, Poly p, Poly q, Poly r) {
  return certify_twist(SphereTwist{fixed, std::move(p), std::move(q), std::move(r), {}});
}

Surface generator_surface(const Generator& g) {
  return std::holds_alternative<SphereTwist>(g) ? Surface::Sphere : Surface::Torus;
}

void certify_word(const AutWord& w) {
  for (const auto& g : w.gens) {
    if (generator_surface(g) != w.surface) throw Error(Errc::MixedSurfaces, "generator on the wrong surface");
    std::visit(
        [](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, TorusMoebius>) certify_moebius(x);
          else certify_twist(x);
        },
        g);
  }
}

std::string generator_formula(const Generator& g) {
  if (auto* t = std::get_if<TorusTwist>(&g)) {
    const std::string v = t->axis == 1 ? "x" : "y";
    const std::string shift = "(" + t->p.str(v) + ")/(" + t->q.str(v) + ")";
    return t->axis == 1 ? "(x, y) -> (x, y + " + shift + ")" : "(x, y) -> (x + " + shift + ", y)";
  }
  if (auto* m = std::get_if<TorusMoebius>(&g)) {
    auto frac = [](const std::array<Scalar, 4>& a, const std::string& v) {
      return "((" + a[0].str() + ")*" + v + " + (" + a[1].str() + "))/((" + a[2].str() + ")*" + v + " + (" +
             a[3].str() + "))";
    };
    return "(x, y) -> (" + frac(m->mx, "x") + ", " + frac(m->my, "y") + ")";
  }
  const auto& s = std::get<SphereTwist>(g);
  const int f = s.fixed, i = (f + 1) % 3, j = (f + 2) % 3;
  const std::string v = kAxis[f], ci = kAxis[i], cj = kAxis[j];
  const std::string p = "(" + s.p.str(v) + ")", q = "(" + s.q.str(v) + ")", r = "(" + s.r.str(v) + ")";
  return v + " fixed; " + ci + " -> (" + ci + "*" + p + " - " + cj + "*" + q + ")/" + r + ", " + cj + " -> (" + ci +
         "*" + q + " + " + cj + "*" + p + ")/" + r;
}

std::string word_formula(const AutWord& w) {
  if (w.gens.empty()) return "identity";
  std::string out;
  for (std::size_t k = 0; k < w.gens.size(); ++k) {
    if (k) out += " ; then ";
    out += generator_formula(w.gens[k]);
  }
  return out;
}

TorusArc apply_arc(const Generator& g, const TorusArc& a) {
  if (auto* t = std::get_if<TorusTwist>(&g)) {
    const int d = t->q.degree();
    TorusArc r = a;
    if (t->axis == 1) {
      const Series pb = eval_homogeneous(t->p, d, a.xu, a.xv), qb = eval_homogeneous(t->q, d, a.xu, a.xv);
      r.yu = qb * a.yu + pb * a.yv;
      r.yv = qb * a.yv;
    } else {
      const Series pb = eval_homogeneous(t->p, d, a.yu, a.yv), qb = eval_homogeneous(t->q, d, a.yu, a.yv);
      r.xu = qb * a.xu + pb * a.xv;
      r.xv = qb * a.xv;
    }
    return r;
  }
  if (auto* m = std::get_if<TorusMoebius>(&g)) {
    const auto& x = m->mx;
    const auto& y = m->my;
    return {a.xu * x[0] + a.xv * x[1], a.xu * x[2] + a.xv * x[3], a.yu * y[0] + a.yv * y[1],
            a.yu * y[2] + a.yv * y[3]};
  }
  throw Error(Errc::MixedSurfaces, "sphere generator applied to a torus arc");
}

SphereArc apply_arc(const Generator& g, const SphereArc& a) {
  const auto* s = std::get_if<SphereTwist>(&g);
  if (!s) throw Error(Errc::MixedSurfaces, "torus generator applied to a sphere arc");
  std::array<Series, 3> c{a.x, a.y, a.z};
  const int f = s->fixed, i = (f + 1) % 3, j = (f + 2) % 3;
  const Series& v = c[static_cast<std::size_t>(f)];
  const Series rinv = series_invert(eval_poly(s->r, v));
  const Series p = eval_poly(s->p, v) * rinv, q = eval_poly(s->q, v) * rinv;
  const Series ci = c[static_cast<std::size_t>(i)], cj = c[static_cast<std::size_t>(j)];
  c[static_cast<std::size_t>(i)] = ci * p - cj * q;
  c[static_cast<std::size_t>(j)] = ci * q + cj * p;
  return {c[0], c[1], c[2]};
}

namespace {

// Homogeneous pairs may be scaled by any unit; dividing by a unit component
// keeps the coefficients from compounding along a long word.
void rescale(Series& u, Series& v) {
  if (v.is_unit()) {
    u = u * series_invert(v);
    v = Series::constant(Scalar(1), v.center(), v.order());
  } else {
    v = v * series_invert(u);
    u = Series::constant(Scalar(1), u.center(), u.order());
  }
}

void check_surface(const AutWord& w, Surface s) {
  if (w.surface != s) throw Error(Errc::MixedSurfaces, "word and jet live on different surfaces");
}

}  // namespace

Jet apply_jet(const AutWord& w, const Jet& j) {
  check_surface(w, j.surface());
  if (w.gens.empty()) return jet_canonicalize(j);
  if (j.surface() == Surface::Torus) {
    TorusArc a = jet_arc(j.torus());
    for (const auto& g : w.gens) {
      a = apply_arc(g, a);
      rescale(a.xu, a.xv);
      rescale(a.yu, a.yv);
    }
    return canonical_jet(a);
  }
  SphereArc a = jet_arc(j.sphere());
  for (const auto& g : w.gens) a = apply_arc(g, a);
  return canonical_jet(a);
}

Point apply_point(const AutWord& w, const Point& p) { return apply_jet(w, point_jet(p)).center(); }

AutWord word_inverse(const AutWord& w) {
  AutWord r{w.surface, {}};
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
    if (auto* t = std::get_if<TorusTwist>(&*it)) {
      TorusTwist inv = *t;
      inv.p = -t->p;
      r.gens.emplace_back(inv);
    } else if (auto* m = std::get_if<TorusMoebius>(&*it)) {
      auto adj = [](const std::array<Scalar, 4>& a) { return std::array<Scalar, 4>{a[3], -a[1], -a[2], a[0]}; };
      r.gens.emplace_back(TorusMoebius{adj(m->mx), adj(m->my)});
    } else {
      SphereTwist inv = std::get<SphereTwist>(*it);
      inv.q = -inv.q;
      r.gens.emplace_back(inv);
    }
  }
  return r;
}

AutWord word_compose(const AutWord& w1, const AutWord& w2) {
  if (w1.surface != w2.surface && !w1.gens.empty() && !w2.gens.empty())
    throw Error(Errc::MixedSurfaces, "cannot compose words on different surfaces");
  AutWord r{w1.gens.empty() ? w2.surface : w1.surface, w1.gens};
  r.gens.insert(r.gens.end(), w2.gens.begin(), w2.gens.end());
  return r;
}

Matrix identity_matrix(int n) {
  Matrix m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(1);
  return m;
}

Matrix matrix_mul(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<Scalar>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

namespace {

// d/dx (a/b) evaluated at x.
Scalar quotient_derivative(const Poly& a, const Poly& b, const Scalar& x) {
  const Scalar bv = b(x);
  return (a.derivative()(x) * bv - a(x) * b.derivative()(x)) / (bv * bv);
}

// Jacobian of a torus generator by first-order arcs through p.
Matrix torus_jacobian_by_arcs(const Generator& g, const TorusPoint& p) {
  const TorusJet base = point_jet(p).torus();
  const Scalar s0 = base.f.center(), w0 = base.f[0];
  Matrix m(2, std::vector<Scalar>(2));
  for (int k = 0; k < 2; ++k) {
    const Series t = Series::variable(Scalar(0), 2);
    const Series s = k == 0 ? t + s0 : Series::constant(s0, Scalar(0), 2);
    const Series w = k == 1 ? t + w0 : Series::constant(w0, Scalar(0), 2);
    const Series one = Series::constant(Scalar(1), Scalar(0), 2);
    TorusArc a{base.chart.x == 0 ? s : one, base.chart.x == 0 ? one : s, base.chart.y == 0 ? w : one,
               base.chart.y == 0 ? one : w};
    a = apply_arc(g, a);
    const TorusJet img = point_jet(TorusPoint{ProjPoint::make(a.xu[0], a.xv[0]), ProjPoint::make(a.yu[0], a.yv[0])}).torus();
    const Series sx = img.chart.x == 0 ? a.xu * series_invert(a.xv) : a.xv * series_invert(a.xu);
    const Series sy = img.chart.y == 0 ? a.yu * series_invert(a.yv) : a.yv * series_invert(a.yu);
    m[0][static_cast<std::size_t>(k)] = sx[1];
    m[1][static_cast<std::size_t>(k)] = sy[1];
  }
  return m;
}

}  // namespace

Matrix generator_jacobian(const Generator& g, const Point& pt) {
  if (auto* s = std::get_if<SphereTwist>(&g)) {
    const auto& c = std::get<SpherePoint>(pt);
    const int f = s->fixed, i = (f + 1) % 3, j = (f + 2) % 3;
    const Scalar v = c[f], rv = s->r(v);
    const Scalar pr = s->p(v) / rv, qr = s->q(v) / rv;
    const Scalar dpr = quotient_derivative(s->p, s->r, v), dqr = quotient_derivative(s->q, s->r, v);
    Matrix m = identity_matrix(3);
    auto at = [&m](int a, int b) -> Scalar& { return m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    at(i, i) = pr;
    at(i, j) = -qr;
    at(i, f) = c[i] * dpr - c[j] * dqr;
    at(j, i) = qr;
    at(j, j) = pr;
    at(j, f) = c[i] * dqr + c[j] * dpr;
    return m;
  }
  const auto& p = std::get<TorusPoint>(pt);
  if (!p.x.is_infinite() && !p.y.is_infinite()) {
    if (auto* t = std::get_if<TorusTwist>(&g)) {
      const Scalar& v = t->axis == 1 ? p.x.u : p.y.u;
      const Scalar d = quotient_derivative(t->p, t->q, v);
      Matrix m = identity_matrix(2);
      if (t->axis == 1) m[1][0] = d;
      else m[0][1] = d;
      return m;
    }
    const auto& mb = std::get<TorusMoebius>(g);
    const Scalar dx = mb.mx[2] * p.x.u + mb.mx[3], dy = mb.my[2] * p.y.u + mb.my[3];
    if (!dx.is_zero() && !dy.is_zero()) {
      Matrix m(2, std::vector<Scalar>(2));
      m[0][0] = (mb.mx[0] * mb.mx[3] - mb.mx[1] * mb.mx[2]) / (dx * dx);
      m[1][1] = (mb.my[0] * mb.my[3] - mb.my[1] * mb.my[2]) / (dy * dy);
      return m;
    }
  }
  return torus_jacobian_by_arcs(g, p);
}

Matrix jacobian_at(const AutWord& w, const Point& p) {
  Matrix m = identity_matrix(w.surface == Surface::Torus ? 2 : 3);
  Point cur = p;
  for (const auto& g : w.gens) {
    m = matrix_mul(generator_jacobian(g, cur), m);
    cur = apply_point(AutWord{w.surface, {g}}, cur);
  }
  return m;
}

Scalar nth_rational(std::size_t k) {
  static std::mutex mu;
  static std::vector<Scalar> list{Scalar(0)};
  static long height = 0;
  std::lock_guard<std::mutex> lock(mu);
  while (list.size() <= k) {
    ++height;
    // all p/q in lowest terms with max(|p|, q) = height
    for (long q = 1; q <= height; ++q)
      for (long p = (q == height ? 1 : height); p <= height; ++p) {
        if (std::gcd(p, q) != 1) continue;
        if (q != height && p != height) continue;
        list.emplace_back(p, q);
        list.emplace_back(-p, q);
      }
  }
  return list[k];
}

std::size_t enum_limit() {
  if (const char* env = std::getenv("JETMOVE_ENUM_LIMIT")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1000;
}

}  // namespace jetmove
