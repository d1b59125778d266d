#include "jetmove/dantesque.hpp"

#include <algorithm>
#include <numeric>

#include "jetmove/errors.hpp"

namespace jetmove {

std::string base_name(Base b) {
  switch (b) {
    case Base::Sphere: return "sphere";
    case Base::Torus: return "torus";
    case Base::Klein: return "klein";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Isomorphic: return "isomorphic";
    case Verdict::NotIsomorphic: return "not-isomorphic";
    case Verdict::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "?";
}

std::string HomeoInvariants::str() const {
  std::string s = "euler " + std::to_string(euler) + ", " + (orientable ? "orientable" : "nonorientable") +
                  " genus " + std::to_string(genus) + ", singularities {";
  for (std::size_t i = 0; i < singularities.size(); ++i)
    s += (i ? ", A" : "A") + std::to_string(singularities[i] - 1) + "-";
  return s + "}";
}

bool BlowupForest::leq(int i, int j) const {
  for (std::optional<int> k = j; k; k = parent[static_cast<std::size_t>(*k)])
    if (*k == i) return true;
  return false;
}

BlowupForest forest_build(const SurfaceDescriptor& d) {
  const int n = static_cast<int>(d.records.size());
  BlowupForest f;
  f.parent.resize(d.records.size());
  for (int i = 0; i < n; ++i) {
    const auto& r = d.records[static_cast<std::size_t>(i)];
    if (r.order < 1) throw Error(Errc::InvalidDescriptor, "record " + std::to_string(i) + " has order < 1");
    if (r.parent) {
      if (*r.parent < 0 || *r.parent >= n || *r.parent == i)
        throw Error(Errc::InvalidDescriptor, "record " + std::to_string(i) + " has an invalid parent");
      f.parent[static_cast<std::size_t>(i)] = r.parent;
      continue;
    }
    // A base record whose center coincides with an earlier one sits on top of it.
    if (!r.center) continue;
    for (int k = i - 1; k >= 0; --k) {
      const auto& o = d.records[static_cast<std::size_t>(k)];
      if (!o.parent && o.center && o.center->center() == r.center->center()) {
        f.parent[static_cast<std::size_t>(i)] = k;
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    for (std::optional<int> k = f.parent[static_cast<std::size_t>(i)]; k; k = f.parent[static_cast<std::size_t>(*k)])
      if (++steps > n) throw Error(Errc::CyclicReference, "record " + std::to_string(i) + " lies on a parent cycle");
  }
  for (const auto& p : f.parent) (p ? f.edges : f.trees)++;
  return f;
}

HomeoInvariants descriptor_invariants(const SurfaceDescriptor& d) {
  HomeoInvariants h;
  const int n = static_cast<int>(d.records.size());
  const int chi = d.base == Base::Sphere ? 2 : 0;
  h.euler = chi - n;
  for (const auto& r : d.records)
    if (r.order >= 2) h.singularities.push_back(r.order);
  std::sort(h.singularities.begin(), h.singularities.end());
  if (n == 0) {
    h.orientable = d.base != Base::Klein;
    h.genus = d.base == Base::Sphere ? 0 : (d.base == Base::Torus ? 1 : 2);
    return h;
  }
  h.orientable = false;
  h.genus = (d.base == Base::Sphere ? 0 : 2);
  for (const auto& r : d.records) h.genus += r.order;
  return h;
}

SurfaceDescriptor descriptor_normalize(const SurfaceDescriptor& d) {
  forest_build(d);
  const bool flat_sphere = d.base == Base::Sphere && forest_build(d).edges == 0;
  if (flat_sphere || (d.base == Base::Torus && d.records.empty())) return d;
  const HomeoInvariants h = descriptor_invariants(d);
  std::vector<int> orders = h.singularities;
  const int singular_sum = std::accumulate(orders.begin(), orders.end(), 0);
  const int genus = h.orientable ? 0 : h.genus;
  orders.insert(orders.end(), static_cast<std::size_t>(genus - singular_sum), 1);
  std::sort(orders.rbegin(), orders.rend());
  SurfaceDescriptor out{Base::Sphere, {}};
  if (orders.empty()) return out;
  const auto cfg = standard_config(Surface::Sphere, orders);
  for (std::size_t i = 0; i < orders.size(); ++i) out.records.push_back({std::nullopt, orders[i], cfg.jets[i]});
  return out;
}

Verdict isomorphism_decide(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
  const HomeoInvariants ha = descriptor_invariants(a), hb = descriptor_invariants(b);
  auto distinct = [](const std::vector<int>& s) { return std::adjacent_find(s.begin(), s.end()) == s.end(); };
  if (!distinct(ha.singularities) || !distinct(hb.singularities)) return Verdict::HypothesisNotMet;
  return ha == hb ? Verdict::Isomorphic : Verdict::NotIsomorphic;
}

}  // namespace jetmove
