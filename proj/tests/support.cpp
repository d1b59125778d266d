#include "support.hpp"

#include <algorithm>

#include "jetmove/errors.hpp"

namespace testsupport {

namespace {

std::pair<Series, Series> pair_of(const Series& s, int chart) {
  const Series one = Series::constant(Scalar(1), Scalar(0), s.order());
  return chart == 0 ? std::pair{s, one} : std::pair{one, s};
}

Series random_arc_coord(Rng& r, const Scalar& c0, int order, bool zero_velocity) {
  std::vector<Scalar> c{c0};
  for (int k = 1; k < order; ++k) c.push_back(k == 1 && zero_velocity ? Scalar(0) : r.rational(4, 3));
  return Series(Scalar(0), order, c);
}

}  // namespace

TorusPoint random_torus_point(Rng& r) {
  auto coord = [&r] { return r.coin(0.15) ? ProjPoint::infinity() : ProjPoint::finite(r.rational(4, 3)); };
  return {coord(), coord()};
}

Jet random_torus_jet(Rng& r, const TorusPoint& c, int order) {
  const int cx = c.x.is_infinite() ? 1 : 0, cy = c.y.is_infinite() ? 1 : 0;
  const Scalar s0 = cx == 0 ? c.x.u : Scalar(0), w0 = cy == 0 ? c.y.u : Scalar(0);
  for (;;) {
    const bool vertical = r.coin(0.25);
    Series s = random_arc_coord(r, s0, order, vertical);
    Series w = random_arc_coord(r, w0, order, false);
    if (order > 1 && s[1].is_zero() && w[1].is_zero()) continue;
    auto [xu, xv] = pair_of(s, cx);
    auto [yu, yv] = pair_of(w, cy);
    return canonical_jet(TorusArc{xu, xv, yu, yv});
  }
}

std::vector<Jet> random_torus_config(Rng& r, const std::vector<int>& orders) {
  std::vector<Jet> out;
  std::vector<TorusPoint> used;
  for (int e : orders) {
    TorusPoint p = random_torus_point(r);
    while (std::find(used.begin(), used.end(), p) != used.end()) p = random_torus_point(r);
    used.push_back(p);
    out.push_back(random_torus_jet(r, p, e));
  }
  return out;
}

SpherePoint random_sphere_point(Rng& r) {
  const double pick = std::uniform_real_distribution<double>(0, 1)(r.engine());
  if (pick < 0.1) {
    std::vector<Scalar> v(3);
    v[static_cast<std::size_t>(r.range(0, 2))] = r.coin() ? Scalar(1) : Scalar(-1);
    return SpherePoint::make(v[0], v[1], v[2]);
  }
  if (pick < 0.3) {
    const Scalar t = r.rational(4, 3), d = Scalar(1) + t * t;
    return SpherePoint::make((Scalar(1) - t * t) / d, Scalar(2) * t / d, Scalar(0));
  }
  const Scalar u = r.rational(3, 2), v = r.rational(3, 2), d = Scalar(1) + u * u + v * v;
  return SpherePoint::make(Scalar(2) * u / d, Scalar(2) * v / d, (u * u + v * v - Scalar(1)) / d);
}

Jet random_sphere_jet(Rng& r, const SpherePoint& c, int order) {
  const Series one = Series::constant(Scalar(1), Scalar(0), order);
  if (order > 1 && c.z.is_zero() && r.coin(0.3)) {
    // Along the great circle through the pole: c cos + N sin, reparametrized.
    Series s = random_arc_coord(r, Scalar(0), order, false);
    if (s[1].is_zero()) s = s + Series::variable(Scalar(0), order);
    const Series d = series_invert(one + s * s);
    const Series cs = (one - s * s) * d, sn = Scalar(2) * s * d;
    return canonical_jet(SphereArc{cs * c.x, cs * c.y, sn});
  }
  // Stereographic chart from the pole away from c.
  const bool from_north = c.z != Scalar(1);
  const Scalar den = from_north ? Scalar(1) - c.z : Scalar(1) + c.z;
  for (;;) {
    Series u = random_arc_coord(r, c.x / den, order, false);
    Series v = random_arc_coord(r, c.y / den, order, false);
    if (order > 1 && u[1].is_zero() && v[1].is_zero()) continue;
    const Series q = u * u + v * v;
    const Series inv = series_invert(one + q);
    const Series z = from_north ? (q - one) * inv : (one - q) * inv;
    return canonical_jet(SphereArc{Scalar(2) * u * inv, Scalar(2) * v * inv, z});
  }
}

std::vector<Jet> random_sphere_config(Rng& r, const std::vector<int>& orders) {
  std::vector<Jet> out;
  std::vector<SpherePoint> used;
  for (int e : orders) {
    SpherePoint p = random_sphere_point(r);
    while (std::find(used.begin(), used.end(), p) != used.end()) p = random_sphere_point(r);
    used.push_back(p);
    out.push_back(random_sphere_jet(r, p, e));
  }
  return out;
}

AutWord random_torus_word(Rng& r, int max_len) {
  AutWord w{Surface::Torus, {}};
  const int len = static_cast<int>(r.range(0, max_len));
  while (static_cast<int>(w.gens.size()) < len) {
    if (r.coin(0.3)) {
      auto mat = [&r] {
        for (;;) {
          std::array<Scalar, 4> m{r.rational(3, 2), r.rational(3, 2), r.rational(3, 2), r.rational(3, 2)};
          if (!(m[0] * m[3] - m[1] * m[2]).is_zero()) return m;
        }
      };
      w.gens.emplace_back(certify_moebius(TorusMoebius{mat(), mat()}));
      continue;
    }
    const Poly s = r.poly(1, 3, 2);
    const Poly q = Poly::constant(Scalar(r.range(1, 3), r.range(1, 2))) + s * s;
    std::vector<Scalar> pc;
    for (int k = 0; k < q.degree(); ++k) pc.push_back(r.rational(3, 2));
    pc.push_back(r.nonzero_rational(3, 2));
    w.gens.emplace_back(make_torus_twist(static_cast<int>(r.range(0, 1)), Poly(pc), q));
  }
  return w;
}

AutWord random_sphere_word(Rng& r, int max_len) {
  AutWord w{Surface::Sphere, {}};
  const int len = static_cast<int>(r.range(0, max_len));
  while (static_cast<int>(w.gens.size()) < len) {
    const Poly m = r.poly(1, 3, 2), n = r.poly(1, 3, 2);
    const Poly rr = m * m + n * n;
    if (rr.is_zero()) continue;
    try {
      w.gens.emplace_back(make_sphere_twist(static_cast<int>(r.range(0, 2)), m * m - n * n,
                                            Poly::constant(Scalar(2)) * m * n, rr));
    } catch (const Error&) {
      // r vanished somewhere in [-1, 1]; draw again
    }
  }
  return w;
}

// ---------- polynomial oracles on mpq vectors ----------

namespace {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly deriv(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

QPoly rem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
    trim(a);
  }
  return a;
}

QPoly quo(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
    trim(a);
  }
  trim(q);
  return q;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly squarefree(const QPoly& p) {
  QPoly g = gcd(p, deriv(p));
  if (g.size() <= 1) return p;
  return quo(p, g);
}

int variations(const QPoly& q) {
  int v = 0, last = 0;
  for (const auto& c : q) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last && s != last) ++v;
    last = s;
  }
  return v;
}

int descartes(const QPoly& p, const mpq_class& a, const mpq_class& b, int depth) {
  // q(x) = (1 + x)^n p((a + b x) / (1 + x)) has its positive roots in bijection with roots in (a, b).
  const std::size_t n = p.size() - 1;
  QPoly q;
  QPoly lin{a, b}, one_x{mpq_class(1), mpq_class(1)};
  for (std::size_t k = 0; k <= n; ++k) {
    QPoly term{p[k]};
    for (std::size_t i = 0; i < k; ++i) term = mul(term, lin);
    for (std::size_t i = k; i < n; ++i) term = mul(term, one_x);
    if (q.size() < term.size()) q.resize(term.size());
    for (std::size_t i = 0; i < term.size(); ++i) q[i] += term[i];
  }
  const int v = variations(q);
  if (v <= 1) return v;
  if (depth > 200) throw std::runtime_error("Descartes oracle did not converge");
  const mpq_class m = (a + b) / 2;
  return descartes(p, a, m, depth + 1) + descartes(p, m, b, depth + 1) + (eval(p, m) == 0 ? 1 : 0);
}

}  // namespace

int oracle_roots_open(const QPoly& p0, const mpq_class& a, const mpq_class& b) {
  QPoly p = p0;
  trim(p);
  p = squarefree(p);
  if (p.size() <= 1 || !(a < b)) return 0;
  return descartes(p, a, b, 0);
}

int oracle_roots_line(const QPoly& p0) {
  QPoly p = p0;
  trim(p);
  if (p.size() <= 1) return 0;
  mpq_class bound = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    mpq_class r = abs(p[k] / p.back());
    if (r > bound) bound = r;
  }
  bound += 1;
  return oracle_roots_open(p, -bound, bound);
}

int oracle_roots_closed(const QPoly& p0, const mpq_class& a, const mpq_class& b) {
  QPoly p = p0;
  trim(p);
  if (p.size() <= 1) return 0;
  int ends = (eval(p, a) == 0 ? 1 : 0) + (a != b && eval(p, b) == 0 ? 1 : 0);
  return oracle_roots_open(p, a, b) + ends;
}

std::vector<Scalar> oracle_taylor(const Poly& p, const Scalar& c, int n) {
  std::vector<Scalar> cur = p.coeffs(), out;
  for (int k = 0; k < n; ++k) {
    if (cur.empty()) {
      out.emplace_back(0);
      continue;
    }
    // synthetic division by (x - c)
    std::vector<Scalar> q(cur.size() - 1);
    Scalar acc;
    for (std::size_t i = cur.size(); i-- > 0;) {
      acc = acc * c + cur[i];
      if (i > 0) q[i - 1] = acc;
    }
    out.push_back(acc);
    cur = std::move(q);
  }
  return out;
}

std::vector<Scalar> oracle_sqrt(const Series& u, const Scalar& seed) {
  std::vector<Scalar> s{seed};
  for (int k = 1; k < u.order(); ++k) {
    Scalar acc = u[k];
    for (int i = 1; i < k; ++i) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
    s.push_back(acc / (Scalar(2) * seed));
  }
  return s;
}

std::optional<std::vector<Scalar>> oracle_rotation_parameter(const Series& f, const Series& g, const Series& h) {
  const int e = f.order();
  auto sq_coeff = [](const std::vector<Scalar>& a, int j) {
    Scalar s;
    for (int i = 0; i <= j; ++i)
      if (i < static_cast<int>(a.size()) && j - i < static_cast<int>(a.size()))
        s += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j - i)];
    return s;
  };
  std::vector<Scalar> a;
  for (int k = 0; k < e; ++k) {
    // coefficient k of 2 a f - (1 + a^2) h with a_k unknown; h_0 = 0
    Scalar rhs = h[k];
    for (int j = 0; j < k; ++j) rhs += sq_coeff(a, j) * h[k - j];
    for (int j = 0; j < k; ++j) rhs -= Scalar(2) * a[static_cast<std::size_t>(j)] * f[k - j];
    a.push_back(rhs / (Scalar(2) * f[0]));
  }
  for (int k = 0; k < e; ++k) {
    Scalar lhs, rhs;
    for (int j = 0; j <= k; ++j) {
      const Scalar a2 = sq_coeff(a, j);
      lhs += ((j == 0 ? Scalar(1) : Scalar(0)) - a2) * f[k - j];
      rhs += ((j == 0 ? Scalar(1) : Scalar(0)) + a2) * g[k - j];
    }
    if (lhs != rhs) return std::nullopt;
  }
  return a;
}

int oracle_euler(const SurfaceDescriptor& d) {
  int chi = d.base == Base::Sphere ? 2 : 0;
  for (const auto& r : d.records) {
    chi -= r.order;  // e ordinary blow-ups, each replacing a point by a circle
    const int k = r.order - 1;
    if (k > 0) {
      const int chain = 0 * k - (k - 1);  // k circles, consecutive ones meeting in a point
      chi += 1 - chain;                   // contract the chain to a point
    }
  }
  return chi;
}

int oracle_resolution_genus(const SurfaceDescriptor& d) {
  int chi = d.base == Base::Sphere ? 2 : 0;
  for (const auto& r : d.records) chi -= r.order;
  return 2 - chi;
}

SurfaceDescriptor random_descriptor(Rng& r) {
  SurfaceDescriptor d;
  d.base = static_cast<Base>(r.range(0, 2));
  const int n = static_cast<int>(r.range(0, 4));
  for (int i = 0; i < n; ++i) {
    BlowupRecord rec;
    rec.order = static_cast<int>(r.range(1, 5));
    if (i > 0 && r.coin(0.3)) rec.parent = static_cast<int>(r.range(0, i - 1));
    d.records.push_back(rec);
  }
  return d;
}

}  // namespace testsupport
