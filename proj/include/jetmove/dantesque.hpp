#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetmove/surfaces.hpp"

namespace jetmove {

enum class Base { Sphere, Torus, Klein };
std::string base_name(Base b);

/// One weighted blow-up: on the base surface (parent empty) or on the
/// exceptional locus of an earlier record.
struct BlowupRecord {
  std::optional<int> parent;
  int order = 1;
  std::optional<Jet> center;
};

struct SurfaceDescriptor {
  Base base = Base::Sphere;
  std::vector<BlowupRecord> records;
};

struct BlowupForest {
  std::vector<std::optional<int>> parent;  // forest parent of each record
  int trees = 0;
  int edges = 0;  // s
  /// Q_i <= Q_j: i equals j or is an ancestor of j.
  bool leq(int i, int j) const;
};

struct HomeoInvariants {
  int euler = 0;
  bool orientable = true;
  int genus = 0;                   // orientable or nonorientable genus of the resolution
  std::vector<int> singularities;  // orders e >= 2 (type A_{e-1}^-), ascending
  std::string str() const;
  friend bool operator==(const HomeoInvariants&, const HomeoInvariants&) = default;
};

/// Throws CyclicReference or InvalidDescriptor.
BlowupForest forest_build(const SurfaceDescriptor& d);
HomeoInvariants descriptor_invariants(const SurfaceDescriptor& d);
/// Flat descriptor with the same invariants (sphere based unless the input
/// is the bare torus).
SurfaceDescriptor descriptor_normalize(const SurfaceDescriptor& d);

enum class Verdict { Isomorphic, NotIsomorphic, HypothesisNotMet };
std::string verdict_name(Verdict v);
Verdict isomorphism_decide(const SurfaceDescriptor& a, const SurfaceDescriptor& b);

}  // namespace jetmove
