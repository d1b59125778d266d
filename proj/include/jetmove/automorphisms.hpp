#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "jetmove/exactalg.hpp"
#include "jetmove/surfaces.hpp"

namespace jetmove {

/// Torus shear. axis 1: (x, y) -> (x, y + p(x)/q(x)); axis 0: (x, y) -> (x + p(y)/q(y), y).
struct TorusTwist {
  int axis = 1;
  Poly p, q;
  SturmCertificate cert;  // q has no real roots
};

/// Pair of Möbius maps, (u:v) -> (a u + b v : c u + d v) on each factor;
/// matrices stored row-major {a, b, c, d}.
struct TorusMoebius {
  std::array<Scalar, 4> mx{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
  std::array<Scalar, 4> my{Scalar(1), Scalar(0), Scalar(0), Scalar(1)};
};

/// Sphere rotation about the `fixed` coordinate axis by the angle with
/// cos = p/r, sin = q/r, all evaluated at that coordinate. With (i, j) the
/// other two coordinates in cyclic order: c_i -> (c_i p - c_j q)/r,
/// c_j -> (c_i q + c_j p)/r.
struct SphereTwist {
  int fixed = 0;
  Poly p, q, r;
  SturmCertificate cert;  // r has no roots in [-1, 1]
};

using Generator = std::variant<TorusTwist, TorusMoebius, SphereTwist>;

/// Composition of generators, applied left to right.
struct AutWord {
  Surface surface = Surface::Torus;
  std::vector<Generator> gens;
};

/// Checks the root condition, then degree equality (torus) or the
/// Pythagorean identity (sphere); fills in the certificate.
TorusTwist certify_twist(TorusTwist t);
SphereTwist certify_twist(SphereTwist t);
TorusMoebius certify_moebius(TorusMoebius m);
TorusTwist make_torus_twist(int axis, Poly p, Poly q);
SphereTwist make_sphere_twist(int fixed, Poly p, Poly q, Poly r);
/// Re-certifies every generator of a word (used on loaded words).
void certify_word(const AutWord& w);

Surface generator_surface(const Generator& g);
std::string generator_formula(const Generator& g);
std::string word_formula(const AutWord& w);

TorusArc apply_arc(const Generator& g, const TorusArc& a);
SphereArc apply_arc(const Generator& g, const SphereArc& a);

Point apply_point(const AutWord& w, const Point& p);
Jet apply_jet(const AutWord& w, const Jet& j);
AutWord word_inverse(const AutWord& w);
/// w1 then w2.
AutWord word_compose(const AutWord& w1, const AutWord& w2);

using Matrix = std::vector<std::vector<Scalar>>;
Matrix matrix_mul(const Matrix& a, const Matrix& b);
Matrix identity_matrix(int n);

/// Jacobian of one generator at p: torus in the affine charts of p and of
/// its image (chart 1 = v/u used for infinite coordinates), sphere as the
/// ambient 3x3 matrix. Rows are image coordinates.
Matrix generator_jacobian(const Generator& g, const Point& p);
/// Chain rule across the word.
Matrix jacobian_at(const AutWord& w, const Point& p);

/// Rationals 0, 1, -1, 2, -2, 1/2, -1/2, 3, ... ordered by height.
Scalar nth_rational(std::size_t k);
/// Cap on generic-choice enumeration (JETMOVE_ENUM_LIMIT, default 1000).
std::size_t enum_limit();

}  // namespace jetmove
