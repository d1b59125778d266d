#include "jetmove/transitivity.hpp"

#include <algorithm>

#include "jetmove/errors.hpp"

namespace jetmove {

namespace {

[[noreturn]] void exhausted(const std::string& what) {
  throw Error(Errc::EnumerationExhausted,
              what + ": no admissible choice within " + std::to_string(enum_limit()) + " candidates");
}

template <class T>
bool all_distinct(const std::vector<T>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (v[i] == v[k]) return false;
  return true;
}

Poly node_poly(const std::vector<Scalar>& nodes) {
  Poly m = Poly::constant(Scalar(1));
  for (const auto& c : nodes) m *= Poly::linear_root(c);
  return m;
}

// Shear whose shift takes value deltas[k] at nodes[k]: q = 1 + M^2,
// p = interpolant + M * v^deg M, so deg p = deg q and q has no real roots.
std::optional<TorusTwist> interpolating_shear(int axis, const std::vector<Scalar>& nodes,
                                              const std::vector<Scalar>& deltas) {
  if (std::all_of(deltas.begin(), deltas.end(), [](const Scalar& d) { return d.is_zero(); }))
    return std::nullopt;
  std::vector<std::pair<Scalar, Scalar>> pts;
  for (std::size_t k = 0; k < nodes.size(); ++k) pts.emplace_back(nodes[k], deltas[k]);
  const Poly m = node_poly(nodes);
  const Poly q = Poly::constant(Scalar(1)) + m * m;
  const Poly p = interpolate(pts) + m * Poly::monomial(Scalar(1), m.degree());
  return make_torus_twist(axis, p, q);
}

std::vector<TorusPoint> apply_all(const Generator& g, std::vector<TorusPoint> pts) {
  const AutWord w{Surface::Torus, {g}};
  for (auto& p : pts) p = std::get<TorusPoint>(apply_point(w, p));
  return pts;
}

}  // namespace

AutWord separate_points_torus(const std::vector<TorusPoint>& points) {
  if (!all_distinct(points)) throw Error(Errc::DuplicatePoints, "points are not pairwise distinct");
  AutWord w{Surface::Torus, {}};
  bool standard = true;
  for (std::size_t i = 0; i < points.size(); ++i)
    standard = standard && points[i] == TorusPoint::finite(Scalar(static_cast<long>(i) + 1), Scalar(0));
  if (standard) return w;

  std::vector<TorusPoint> pts = points;
  auto push = [&](const Generator& g) {
    pts = apply_all(g, pts);
    w.gens.push_back(g);
  };

  // Bring infinite coordinates into the affine chart with u -> 1/(u - t).
  TorusMoebius mb;
  bool need_moebius = false;
  for (int axis = 0; axis < 2; ++axis) {
    auto coord = [axis](const TorusPoint& p) -> const ProjPoint& { return axis == 0 ? p.x : p.y; };
    if (std::none_of(pts.begin(), pts.end(), [&](const TorusPoint& p) { return coord(p).is_infinite(); })) continue;
    need_moebius = true;
    std::size_t k = 0;
    for (; k < enum_limit(); ++k) {
      const Scalar t = nth_rational(k);
      if (std::none_of(pts.begin(), pts.end(), [&](const TorusPoint& p) { return coord(p) == ProjPoint::finite(t); }))
        break;
    }
    if (k == enum_limit()) exhausted("Möbius shift");
    const Scalar shift = -nth_rational(k);
    std::array<Scalar, 4>& mat = axis == 0 ? mb.mx : mb.my;
    mat[0] = Scalar(0);
    mat[1] = Scalar(1);
    mat[2] = Scalar(1);
    mat[3] = shift;
  }
  if (need_moebius) push(certify_moebius(mb));

  auto xs = [&] {
    std::vector<Scalar> v;
    for (const auto& p : pts) v.push_back(p.x.u);
    return v;
  };
  auto ys = [&] {
    std::vector<Scalar> v;
    for (const auto& p : pts) v.push_back(p.y.u);
    return v;
  };

  // Make x-coordinates distinct: shift x by λ·k on the k-th distinct y-value.
  if (!all_distinct(xs())) {
    std::vector<Scalar> nodes;
    for (const auto& y : ys())
      if (std::find(nodes.begin(), nodes.end(), y) == nodes.end()) nodes.push_back(y);
    std::size_t k = 1;
    for (; k < enum_limit(); ++k) {
      const Scalar lambda = nth_rational(k);
      std::vector<Scalar> moved;
      for (const auto& p : pts) {
        const auto idx = std::find(nodes.begin(), nodes.end(), p.y.u) - nodes.begin();
        moved.push_back(p.x.u + lambda * Scalar(static_cast<long>(idx)));
      }
      if (all_distinct(moved)) break;
    }
    if (k == enum_limit()) exhausted("x separation");
    std::vector<Scalar> deltas;
    for (std::size_t i = 0; i < nodes.size(); ++i) deltas.push_back(nth_rational(k) * Scalar(static_cast<long>(i)));
    push(*interpolating_shear(0, nodes, deltas));
  }

  // y_i -> i, then x_i -> i over the now distinct y, then y_i -> 0.
  auto shear_to = [&](int axis, const std::vector<Scalar>& targets) {
    const auto nodes = axis == 1 ? xs() : ys();
    const auto cur = axis == 1 ? ys() : xs();
    std::vector<Scalar> deltas;
    for (std::size_t i = 0; i < pts.size(); ++i) deltas.push_back(targets[i] - cur[i]);
    if (auto t = interpolating_shear(axis, nodes, deltas)) push(*t);
  };
  std::vector<Scalar> idx, zeros(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) idx.emplace_back(static_cast<long>(i) + 1);
  shear_to(1, idx);
  shear_to(0, idx);
  shear_to(1, zeros);
  return w;
}

NonverticalResult make_nonvertical_torus(const std::vector<Jet>& jets) {
  std::vector<std::vector<Scalar>> tangents;
  for (const auto& j : jets)
    if (j.order() >= 2) tangents.push_back(jet_tangent_vector(j));
  for (std::size_t k = 0; k < enum_limit(); ++k) {
    const Scalar lambda = nth_rational(k);
    const bool ok = std::none_of(tangents.begin(), tangents.end(),
                                 [&](const std::vector<Scalar>& v) { return (v[0] + lambda * v[1]).is_zero(); });
    if (!ok) continue;
    NonverticalResult res{AutWord{Surface::Torus, {}}, jets, lambda};
    if (lambda.is_zero()) return res;
    res.word.gens.push_back(make_torus_twist(0, Poly{Scalar(0), lambda, lambda}, Poly{Scalar(1), Scalar(0), Scalar(1)}));
    for (auto& j : res.jets) j = apply_jet(res.word, j);
    return res;
  }
  exhausted("non-vertical shear");
}

AutWord synth_torus(const std::vector<Jet>& targets) {
  if (!jets_mutually_distant(targets)) throw Error(Errc::NotDistant, "target jets are not mutually distant");
  std::vector<TorusPoint> centers;
  for (const auto& j : targets) centers.push_back(j.torus().center);
  const AutWord sigma = separate_points_torus(centers);
  std::vector<Jet> moved;
  for (const auto& j : targets) moved.push_back(apply_jet(sigma, j));
  const NonverticalResult nu = make_nonvertical_torus(moved);

  std::vector<Residue> res;
  Poly m = Poly::constant(Scalar(1));
  for (std::size_t i = 0; i < nu.jets.size(); ++i) {
    const auto& j = nu.jets[i].torus();
    const int e = j.order();
    if (j.chart.transposed || j.chart.x != 0 || j.chart.y != 0) throw Error(Errc::Internal, "jet not in graph form");
    res.push_back({j.f.center(), e, j.f});
    m *= Poly::linear_root(j.f.center()).pow(static_cast<unsigned>(e));
  }
  const Poly q = Poly::constant(Scalar(1)) + m * m;
  for (auto& r : res) r.value = r.value * Series::from_poly(q, r.center, r.order);
  const Poly pc = crt_combine(res);

  AutWord w{Surface::Torus, {}};
  if (!pc.is_zero()) w.gens.push_back(make_torus_twist(1, pc + m * Poly::monomial(Scalar(1), m.degree()), q));
  w = word_compose(w, word_inverse(nu.word));
  return word_compose(w, word_inverse(sigma));
}

namespace {

// Rotation about `fixed` whose tangent of the half angle is a(v).
std::optional<SphereTwist> half_angle_twist(int fixed, const Poly& a) {
  if (a.is_zero()) return std::nullopt;
  const Poly one = Poly::constant(Scalar(1));
  return make_sphere_twist(fixed, one - a * a, Poly::constant(Scalar(2)) * a, one + a * a);
}

// Tangent of half the angle rotating (y, z) to (y2, z2) on a common circle
// about the origin; the points must not be antipodal.
Scalar half_angle(const Scalar& y, const Scalar& z, const Scalar& y2, const Scalar& z2) {
  const Scalar rho2 = y * y + z * z;
  const Scalar den = rho2 + y * y2 + z * z2;
  if (den.is_zero()) throw Error(Errc::Internal, "antipodal rotation requested");
  return (y * z2 - z * y2) / den;
}

// Rotation of (y, z) by the angle with tangent of half angle m.
std::pair<Scalar, Scalar> rotate(const Scalar& y, const Scalar& z, const Scalar& m) {
  const Scalar r = Scalar(1) + m * m, c = (Scalar(1) - m * m) / r, s = Scalar(2) * m / r;
  return {y * c - z * s, y * s + z * c};
}

std::vector<SpherePoint> apply_all(const Generator& g, std::vector<SpherePoint> pts) {
  const AutWord w{Surface::Sphere, {g}};
  for (auto& p : pts) p = std::get<SpherePoint>(apply_point(w, p));
  return pts;
}

std::pair<std::size_t, std::size_t> cantor_pair(std::size_t k) {
  std::size_t d = 0;
  while ((d + 1) * (d + 2) / 2 <= k) ++d;
  const std::size_t i = k - d * (d + 1) / 2;
  return {i, d - i};
}

}  // namespace

AutWord separate_points_sphere(const std::vector<SpherePoint>& points) {
  if (!all_distinct(points)) throw Error(Errc::DuplicatePoints, "points are not pairwise distinct");
  const std::size_t n = points.size();
  AutWord w{Surface::Sphere, {}};
  std::vector<SpherePoint> target;
  for (std::size_t i = 0; i < n; ++i) target.push_back(standard_sphere_center(static_cast<int>(i) + 1));
  if (points == target) return w;

  std::vector<SpherePoint> pts = points;
  auto push = [&](const Generator& g) {
    pts = apply_all(g, pts);
    w.gens.push_back(g);
  };
  auto good_x = [](const std::vector<SpherePoint>& v) {
    std::vector<Scalar> xs;
    for (const auto& p : v) {
      if (p.x * p.x == Scalar(1)) return false;
      xs.push_back(p.x);
    }
    return all_distinct(xs);
  };

  // (a) constant rotations about y then z until the x are distinct and off ±1.
  if (!good_x(pts)) {
    std::size_t k = 1;
    std::vector<Generator> chosen;
    for (; k < enum_limit(); ++k) {
      const auto [i, j] = cantor_pair(k);
      chosen.clear();
      if (auto t = half_angle_twist(1, Poly::constant(nth_rational(i)))) chosen.emplace_back(*t);
      if (auto t = half_angle_twist(2, Poly::constant(nth_rational(j)))) chosen.emplace_back(*t);
      auto trial = pts;
      for (const auto& g : chosen) trial = apply_all(g, trial);
      if (good_x(trial)) break;
    }
    if (k == enum_limit()) exhausted("generic rotation");
    for (const auto& g : chosen) push(g);
  }

  // (b) rotate each point inside its x-fiber to height z'_i with
  // 0 < z'_i^2 < Y_i^2, z'_i distinct. Step (c) needs sqrt(Y_i^2 - z'_i^2), so
  // prefer a square there, then a square class already adjoined, then the
  // smallest new radicand.
  constexpr std::size_t kSquareSearch = 24;
  std::vector<Scalar> zsel, ysel, nodes, params;
  std::vector<mpz_class> kernels;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar yt2 = target[i].y * target[i].y;
    std::optional<Scalar> first_m;
    std::optional<Scalar> best;
    std::pair<int, std::size_t> best_score{3, 0};
    std::size_t valid = 0;
    for (std::size_t k = 0; k < enum_limit() && valid < kSquareSearch; ++k) {
      const Scalar m = nth_rational(k);
      auto [y2, z2] = rotate(pts[i].y, pts[i].z, m);
      if (z2.is_zero() || !(z2 * z2 < yt2)) continue;
      if (std::find(zsel.begin(), zsel.end(), z2) != zsel.end()) continue;
      ++valid;
      if (!first_m) first_m = m;
      const Scalar rad = yt2 - z2 * z2;
      if (!rad.is_rational()) {
        if (rad.sqrt_in_field()) {
          best = m;
          break;
        }
        continue;
      }
      const mpz_class f = split_square(rad.rational()).second;
      const int cls = f == 1 ? 0 : std::find(kernels.begin(), kernels.end(), f) != kernels.end() ? 1 : 2;
      const std::pair<int, std::size_t> score{cls, mpz_sizeinbase(f.get_mpz_t(), 2) + k};
      if (score < best_score) {
        best_score = score;
        best = m;
        if (cls == 0) break;
      }
    }
    if (!first_m) exhausted("fiber rotation");
    const Scalar m = best ? *best : *first_m;
    auto [y2, z2] = rotate(pts[i].y, pts[i].z, m);
    if (const Scalar rad = yt2 - z2 * z2; rad.is_rational()) kernels.push_back(split_square(rad.rational()).second);
    zsel.push_back(z2);
    ysel.push_back(y2);
    nodes.push_back(pts[i].x);
    params.push_back(m);
  }
  {
    std::vector<std::pair<Scalar, Scalar>> pp;
    for (std::size_t i = 0; i < n; ++i) pp.emplace_back(nodes[i], params[i]);
    if (auto t = half_angle_twist(0, interpolate(pp))) push(*t);
  }

  // (c) rotate inside each z-fiber to x = X_i, y = ±sqrt(Y_i^2 - z'^2);
  // (d) rotate inside the x = X_i fiber onto the equator.
  std::vector<std::pair<Scalar, Scalar>> pc, pd;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar& z2 = pts[i].z;
    const Scalar yc_abs = Scalar::sqrt_adjoin(target[i].y * target[i].y - z2 * z2);
    Scalar yc = yc_abs;
    const Scalar den = pts[i].x * pts[i].x + pts[i].y * pts[i].y + pts[i].x * target[i].x + pts[i].y * yc;
    if (den.is_zero()) yc = -yc_abs;
    pc.emplace_back(z2, half_angle(pts[i].x, pts[i].y, target[i].x, yc));
    pd.emplace_back(target[i].x, half_angle(yc, z2, target[i].y, Scalar(0)));
  }
  if (auto t = half_angle_twist(2, interpolate(pc))) push(*t);
  if (auto t = half_angle_twist(0, interpolate(pd))) push(*t);
  if (pts != target) throw Error(Errc::Internal, "point separation missed its targets");
  return w;
}

SphereTwist lambda_family_twist(const Scalar& lambda) {
  const Poly a = Poly{Scalar(1), Scalar(0), Scalar(1)};  // 1 + z^2
  const Poly lz = Poly{Scalar(0), lambda};
  return make_sphere_twist(2, a * a - lz * lz, Poly::constant(Scalar(2)) * a * lz, a * a + lz * lz);
}

NonverticalResult make_nonvertical_sphere(const std::vector<Jet>& jets) {
  for (const auto& j : jets)
    if (!j.sphere().center.z.is_zero()) throw Error(Errc::NotOnEquator, "jet center is off the equator");
  for (std::size_t k = 0; k < enum_limit(); ++k) {
    const Scalar lambda = nth_rational(k);
    bool ok = true;
    for (const auto& j : jets) {
      if (j.order() < 2) continue;
      const auto v = jet_tangent_vector(j);
      const auto& c = j.sphere().center;
      const Scalar two_l = Scalar(2) * lambda;
      if ((v[0] - two_l * c.y * v[2]).is_zero() && (v[1] + two_l * c.x * v[2]).is_zero()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    NonverticalResult res{AutWord{Surface::Sphere, {}}, jets, lambda};
    if (lambda.is_zero()) return res;
    res.word.gens.push_back(lambda_family_twist(lambda));
    for (auto& j : res.jets) j = apply_jet(res.word, j);
    return res;
  }
  exhausted("non-vertical rotation");
}

Series solve_rotation_parameter(const Series& f, const Series& g, const Series& h) {
  const int e = f.order();
  const Scalar& c = f.center();
  const Series x = Series::variable(c, e);
  const Series one = Series::constant(Scalar(1), c, e);
  if (!(x * x + f * f - one).is_zero() || !(x * x + g * g + h * h - one).is_zero())
    throw Error(Errc::PreconditionFailed, "f, g, h do not satisfy the sphere congruences");
  if (f[0] != g[0] || f[0].is_zero()) throw Error(Errc::PreconditionFailed, "f(c) and g(c) must agree and be nonzero");
  if (h.is_zero()) {
    if (f != g) throw Error(Errc::PreconditionFailed, "h = 0 but f != g");
    return Series::zero(c, e);
  }
  const int d = poly_valuation(h);
  const int prec = e + 2 * d;
  const Series xl = Series::variable(c, prec);
  const Series onel = Series::constant(Scalar(1), c, prec);
  const Series fl = hensel_sqrt(onel - xl * xl, f[0]);
  const Series hl = h.lift(prec);
  const Series gl = hensel_sqrt(onel - xl * xl - hl * hl, g[0]);
  // f + g has valuation 0 since f(c) = g(c) != 0.
  const Series a = hl * series_invert(fl + gl);
  return a.truncate(e);
}

namespace {

void require_surface(const std::vector<Jet>& js, Surface s) {
  for (const auto& j : js)
    if (j.surface() != s) throw Error(Errc::MixedSurfaces, "target jets on different surfaces");
}

}  // namespace

AutWord synth_sphere(const std::vector<Jet>& targets) {
  require_surface(targets, Surface::Sphere);
  if (!jets_mutually_distant(targets)) throw Error(Errc::NotDistant, "target jets are not mutually distant");
  std::vector<SpherePoint> centers;
  for (const auto& j : targets) centers.push_back(j.sphere().center);
  const AutWord sigma = separate_points_sphere(centers);
  std::vector<Jet> moved;
  for (const auto& j : targets) moved.push_back(apply_jet(sigma, j));
  const NonverticalResult nu = make_nonvertical_sphere(moved);

  std::vector<Residue> res;
  for (const auto& jet : nu.jets) {
    const auto& j = jet.sphere();
    if (j.var != 0) throw Error(Errc::Internal, "non-vertical jet is not a graph over x");
    const int e = j.order();
    const Scalar& c = j.center.x;
    const Series x = Series::variable(c, e);
    const Series f = hensel_sqrt(Series::constant(Scalar(1), c, e) - x * x, j.center.y);
    res.push_back({c, e, solve_rotation_parameter(f, j.g, j.h)});
  }
  AutWord w{Surface::Sphere, {}};
  if (auto t = half_angle_twist(0, crt_combine(res))) w.gens.emplace_back(*t);
  w = word_compose(w, word_inverse(nu.word));
  return word_compose(w, word_inverse(sigma));
}

AutWord synth(const std::vector<Jet>& targets) {
  if (targets.empty()) throw Error(Errc::PreconditionFailed, "no target jets");
  if (targets[0].surface() == Surface::Torus) {
    require_surface(targets, Surface::Torus);
    return synth_torus(targets);
  }
  return synth_sphere(targets);
}

AutWord synth_pair(const std::vector<Jet>& from, const std::vector<Jet>& to, const std::vector<Jet>& pinned) {
  if (from.size() != to.size()) throw Error(Errc::OrderMismatch, "from and to have different lengths");
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i].order() != to[i].order())
      throw Error(Errc::OrderMismatch, "jet " + std::to_string(i) + " has order " + std::to_string(from[i].order()) +
                                           " in from but " + std::to_string(to[i].order()) + " in to");
  std::vector<Jet> a = pinned, b = pinned;
  a.insert(a.end(), from.begin(), from.end());
  b.insert(b.end(), to.begin(), to.end());
  if (a.empty()) throw Error(Errc::PreconditionFailed, "no jets");
  if (!jets_mutually_distant(a)) throw Error(Errc::NotDistant, "pinned and from jets are not mutually distant");
  if (!jets_mutually_distant(b)) throw Error(Errc::NotDistant, "pinned and to jets are not mutually distant");
  return word_compose(word_inverse(synth(a)), synth(b));
}

}  // namespace jetmove
