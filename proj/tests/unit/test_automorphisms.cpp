#include <doctest.h>

#include <functional>

#include "jetmove/automorphisms.hpp"
#include "jetmove/errors.hpp"
#include "support.hpp"

using namespace jetmove;
using namespace testsupport;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

Series ser(Scalar c, std::vector<Scalar> v) {
  const int e = static_cast<int>(v.size());
  return Series(std::move(c), e, std::move(v));
}

AutWord word(Surface s, std::vector<Generator> g) { return AutWord{s, std::move(g)}; }

// x -> 2x^2 / (x^2 + 1) added to y
TorusTwist shear() { return make_torus_twist(1, Poly{0, 0, 2}, Poly{1, 0, 1}); }

// rotation about z by the angle with tan(θ/2) = λz
SphereTwist lambda_twist(const Scalar& l) {
  return make_sphere_twist(2, Poly{1, 0, -l * l}, Poly{0, 2 * l}, Poly{1, 0, l * l});
}

const Scalar k35(3, 5), k45(4, 5);

Matrix mat(std::vector<std::vector<Scalar>> m) { return m; }

// v ∥ w for equal-length vectors
bool parallel(const std::vector<Scalar>& v, const std::vector<Scalar>& w) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (!(v[i] * w[j] - v[j] * w[i]).is_zero()) return false;
  return true;
}

std::vector<Scalar> times(const Matrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> r(m.size(), Scalar(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

bool finite(const TorusPoint& p) { return !p.x.is_infinite() && !p.y.is_infinite(); }

}  // namespace

TEST_CASE("certify_twist examples") {
  CHECK_NOTHROW(shear());
  CHECK_NOTHROW(make_sphere_twist(0, Poly{1, 0, -1}, Poly{0, 2}, Poly{1, 0, 1}));
  CHECK(code_of([] { make_torus_twist(1, Poly{0, 1}, Poly{-1, 0, 1}); }) ==
        Errc::RootInForbiddenRegion);
  CHECK(code_of([] { make_torus_twist(1, Poly{0, 1}, Poly{1, 0, 1}); }) == Errc::DegreeMismatch);
  CHECK(code_of([] { make_sphere_twist(0, Poly{1}, Poly{1}, Poly{1}); }) == Errc::IdentityFails);
  // r = x + 1/2 - ... would vanish inside [-1, 1]: p = x, q = 0, r = x
  CHECK(code_of([] { make_sphere_twist(0, Poly{0, 1}, Poly{}, Poly{0, 1}); }) ==
        Errc::RootInForbiddenRegion);
  CHECK_NOTHROW(certify_moebius(TorusMoebius{}));
  TorusMoebius sing;
  sing.mx = {Scalar(1), Scalar(2), Scalar(2), Scalar(4)};
  CHECK_THROWS_AS(certify_moebius(sing), Error);
}

TEST_CASE("certificates record the forbidden-region root count") {
  const auto t = shear();
  CHECK(t.cert.roots == 0);
  CHECK(t.cert.whole_line);
  const auto s = lambda_twist(Scalar(1));
  CHECK(s.cert.roots == 0);
  CHECK_FALSE(s.cert.whole_line);
}

TEST_CASE("apply_point examples") {
  const Point p{TorusPoint::finite(1, 0)};
  CHECK(apply_point(word(Surface::Torus, {}), p) == p);
  CHECK(apply_point(word(Surface::Torus, {shear()}), p) == Point{TorusPoint::finite(1, 1)});
  const auto s = make_sphere_twist(0, Poly{1, 0, -1}, Poly{0, 2}, Poly{1, 0, 1});
  const Point e{SpherePoint::make(0, 1, 0)};
  CHECK(apply_point(word(Surface::Sphere, {s}), e) == e);
  // x = 3/5 rotates (y, z) = (4/5, 0) by cos = 16/34, sin = 30/34
  const Point r{SpherePoint::make(k35, k45, 0)};
  const auto img = std::get<SpherePoint>(apply_point(word(Surface::Sphere, {s}), r));
  CHECK(img.x == k35);
  CHECK(img.y == k45 * Scalar(16, 34));
  CHECK(img.z == k45 * Scalar(30, 34));
}

TEST_CASE("apply_point on infinite torus coordinates") {
  TorusMoebius m;
  m.mx = {Scalar(0), Scalar(1), Scalar(1), Scalar(0)};  // x -> 1/x
  const Point p{TorusPoint::finite(0, 3)};
  const auto img = std::get<TorusPoint>(apply_point(word(Surface::Torus, {certify_moebius(m)}), p));
  CHECK(img.x.is_infinite());
  CHECK(img.y == ProjPoint::finite(3));
}

TEST_CASE("apply_jet examples") {
  const auto w = word(Surface::Torus, {shear()});
  const Jet j2 = TorusJet{{}, TorusPoint::finite(0, 0), ser(0, {0, 0})};
  CHECK(apply_jet(w, j2) == j2);
  const Jet j3 = TorusJet{{}, TorusPoint::finite(0, 0), ser(0, {0, 0, 0})};
  const Jet want = TorusJet{{}, TorusPoint::finite(0, 0), ser(0, {0, 0, 2})};
  // y' = y + 2x^2/(1+x^2), so the graph y = 0 goes to y = 2x^2 mod x^3;
  // the ideal (x^3, y) maps to (x^3, y - 2x^2)
  CHECK(apply_jet(w, j3) == want);
  CHECK(apply_jet(word(Surface::Torus, {}), want) == want);
}

TEST_CASE("word_inverse examples") {
  const auto inv = word_inverse(word(Surface::Torus, {shear()}));
  REQUIRE(inv.gens.size() == 1);
  const auto& t = std::get<TorusTwist>(inv.gens[0]);
  CHECK(t.p == -shear().p);
  CHECK(t.q == shear().q);
  const auto s = lambda_twist(Scalar(2));
  const AutWord sw = word_inverse(word(Surface::Sphere, {s}));
  const auto& si = std::get<SphereTwist>(sw.gens[0]);
  CHECK(si.p == s.p);
  CHECK(si.q == -s.q);
  CHECK(si.r == s.r);
  Rng r(31);
  const AutWord ws = word(Surface::Sphere, {s});
  const AutWord wi = word(Surface::Sphere, {si});
  for (int k = 0; k < 5; ++k) {
    const Point p{random_sphere_point(r)};
    CHECK(apply_point(wi, apply_point(ws, p)) == p);
  }
  CHECK(word_inverse(word(Surface::Torus, {})).gens.empty());
}

TEST_CASE("jacobian_at examples") {
  // axis 0 shear by (3y^2 + 5y)/(y^2 + 1) at (7, 0): p'(0) = 5
  const auto t = make_torus_twist(0, Poly{0, 5, 3}, Poly{1, 0, 1});
  CHECK(jacobian_at(word(Surface::Torus, {t}), Point{TorusPoint::finite(7, 0)}) ==
        mat({{1, 5}, {0, 1}}));
  CHECK(jacobian_at(word(Surface::Sphere, {lambda_twist(Scalar(1))}),
                    Point{SpherePoint::make(k35, k45, 0)}) ==
        mat({{1, 0, Scalar(-8, 5)}, {0, 1, Scalar(6, 5)}, {0, 0, 1}}));
  CHECK(jacobian_at(word(Surface::Torus, {}), Point{TorusPoint::finite(1, 1)}) == identity_matrix(2));
  CHECK(jacobian_at(word(Surface::Sphere, {}), Point{SpherePoint::make(1, 0, 0)}) ==
        identity_matrix(3));
}

TEST_CASE("nth_rational enumerates by height") {
  const std::vector<Scalar> head{0, 1, -1, 2, -2, Scalar(1, 2), Scalar(-1, 2), 3};
  for (std::size_t k = 0; k < head.size(); ++k) CHECK(nth_rational(k) == head[k]);
  std::vector<Scalar> seen;
  for (std::size_t k = 0; k < 200; ++k) {
    const Scalar s = nth_rational(k);
    for (const auto& o : seen) CHECK(o != s);
    seen.push_back(s);
  }
}

TEST_CASE("certified sphere twists preserve x^2 + y^2 + z^2 (property)") {
  Rng r(32);
  for (int k = 0; k < 40; ++k) {
    const auto w = random_sphere_word(r, 4);
    for (const auto& g : w.gens) {
      const auto& s = std::get<SphereTwist>(g);
      CHECK(s.p * s.p + s.q * s.q == s.r * s.r);
      for (const Scalar x : {Scalar(-1), Scalar(0), Scalar(1)}) CHECK_FALSE(s.r(x).is_zero());
    }
  }
}

TEST_CASE("inverse words undo the word on random points (property)") {
  Rng r(33);
  for (int k = 0; k < 40; ++k) {
    const auto wt = random_torus_word(r, 4);
    const Point pt{random_torus_point(r)};
    CHECK(apply_point(word_inverse(wt), apply_point(wt, pt)) == pt);
    CHECK(apply_point(word_compose(wt, word_inverse(wt)), pt) == pt);
    const auto ws = random_sphere_word(r, 3);
    const Point ps{random_sphere_point(r)};
    CHECK(apply_point(word_inverse(ws), apply_point(ws, ps)) == ps);
  }
}

TEST_CASE("apply_jet is functorial and preserves order and centers (property)") {
  Rng r(34);
  for (int k = 0; k < 30; ++k) {
    const int e = static_cast<int>(r.range(1, 4));
    const auto w1 = random_torus_word(r, 3), w2 = random_torus_word(r, 3);
    const Jet j = random_torus_jet(r, random_torus_point(r), e);
    const Jet once = apply_jet(word_compose(w1, w2), j);
    CHECK(once == apply_jet(w2, apply_jet(w1, j)));
    CHECK(once.order() == e);
    CHECK(once.center() == apply_point(word_compose(w1, w2), j.center()));
    CHECK(apply_jet(word_inverse(w1), apply_jet(w1, j)) == j);

    const auto v1 = random_sphere_word(r, 2), v2 = random_sphere_word(r, 2);
    const Jet s = random_sphere_jet(r, random_sphere_point(r), e);
    const Jet sonce = apply_jet(word_compose(v1, v2), s);
    CHECK(sonce == apply_jet(v2, apply_jet(v1, s)));
    CHECK(sonce.order() == e);
    CHECK(sonce.center() == apply_point(word_compose(v1, v2), s.center()));
  }
}

TEST_CASE("jacobian_at follows the chain rule and the first-order jet (property)") {
  Rng r(35);
  int torus_checked = 0;
  for (int k = 0; k < 30; ++k) {
    const auto ws = random_sphere_word(r, 3);
    const SpherePoint c = random_sphere_point(r);
    const Matrix J = jacobian_at(ws, Point{c});
    Matrix chain = identity_matrix(3);
    Point p{c};
    for (const auto& g : ws.gens) {
      chain = matrix_mul(generator_jacobian(g, p), chain);
      p = apply_point(word(Surface::Sphere, {g}), p);
    }
    CHECK(J == chain);
    const Jet s = random_sphere_jet(r, c, 2);
    CHECK(parallel(times(J, jet_tangent_vector(s)), jet_tangent_vector(apply_jet(ws, s))));

    const auto wt = random_torus_word(r, 3);
    const TorusPoint tc = random_torus_point(r);
    if (!finite(tc)) continue;
    const Point img = apply_point(wt, Point{tc});
    if (!finite(std::get<TorusPoint>(img))) continue;
    const Jet t = random_torus_jet(r, tc, 2);
    if (t.torus().chart.transposed || t.torus().chart.x != 0 || t.torus().chart.y != 0) continue;
    const Jet ti = apply_jet(wt, t);
    if (ti.torus().chart.x != 0 || ti.torus().chart.y != 0) continue;
    CHECK(parallel(times(jacobian_at(wt, Point{tc}), jet_tangent_vector(t)), jet_tangent_vector(ti)));
    ++torus_checked;
  }
  CHECK(torus_checked >= 10);
}
