#pragma once

#include <vector>

#include "jetmove/automorphisms.hpp"

namespace jetmove {

/// Word sending points[i] to the standard center (i + 1, 0). Throws DuplicatePoints.
AutWord separate_points_torus(const std::vector<TorusPoint>& points);
/// Word sending points[i] to standard_sphere_center(i + 1). Throws DuplicatePoints.
AutWord separate_points_sphere(const std::vector<SpherePoint>& points);

struct NonverticalResult {
  AutWord word;
  std::vector<Jet> jets;  // images of the input jets, none vertical
  Scalar lambda;          // chosen parameter (0 means the empty word)
};

/// Jets at centers (i, 0); x-shear with p = λ(y + y^2), q = 1 + y^2.
NonverticalResult make_nonvertical_torus(const std::vector<Jet>& jets);
/// Jets at equator centers; the λ-family rotation about the z-axis.
NonverticalResult make_nonvertical_sphere(const std::vector<Jet>& jets);

/// The λ-family (p, q, r) as polynomials in z.
SphereTwist lambda_family_twist(const Scalar& lambda);

/// a with (1 - a^2) f = (1 + a^2) g and 2 a f = (1 + a^2) h at the ring of f.
Series solve_rotation_parameter(const Series& f, const Series& g, const Series& h);

/// Word w with apply_jet(w, standard_config(orders)[i]) = targets[i].
AutWord synth_torus(const std::vector<Jet>& targets);
AutWord synth_sphere(const std::vector<Jet>& targets);
AutWord synth(const std::vector<Jet>& targets);

/// Word sending from[j] to to[j] and fixing every pinned jet.
AutWord synth_pair(const std::vector<Jet>& from, const std::vector<Jet>& to, const std::vector<Jet>& pinned);

}  // namespace jetmove
