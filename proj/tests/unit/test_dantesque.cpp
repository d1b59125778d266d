#include <doctest.h>

#include <algorithm>
#include <functional>

#include "jetmove/dantesque.hpp"
#include "jetmove/errors.hpp"
#include "support.hpp"

using namespace jetmove;
using namespace testsupport;

namespace {

SurfaceDescriptor flat(Base b, std::vector<int> orders) {
  SurfaceDescriptor d{b, {}};
  for (int e : orders) d.records.push_back({std::nullopt, e, std::nullopt});
  return d;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_CASE("forest_build examples") {
  SurfaceDescriptor two{Base::Sphere, {}};
  two.records.push_back({std::nullopt, 1, point_jet(Point{SpherePoint::make(1, 0, 0)})});
  two.records.push_back({std::nullopt, 2, point_jet(Point{SpherePoint::make(0, 1, 0)})});
  const auto f2 = forest_build(two);
  CHECK(f2.trees == 2);
  CHECK(f2.edges == 0);

  SurfaceDescriptor chain = flat(Base::Torus, {1, 1});
  chain.records[1].parent = 0;
  const auto f1 = forest_build(chain);
  CHECK(f1.trees == 1);
  CHECK(f1.edges == 1);
  CHECK(f1.leq(0, 1));
  CHECK_FALSE(f1.leq(1, 0));
  CHECK(f1.leq(1, 1));

  const auto f0 = forest_build(SurfaceDescriptor{});
  CHECK(f0.trees == 0);
  CHECK(f0.edges == 0);
}

TEST_CASE("forest_build puts same-center records on top of each other") {
  SurfaceDescriptor d{Base::Sphere, {}};
  const Jet p = point_jet(Point{SpherePoint::make(1, 0, 0)});
  d.records.push_back({std::nullopt, 1, p});
  d.records.push_back({std::nullopt, 1, p});
  const auto f = forest_build(d);
  CHECK(f.edges == 1);
  CHECK(f.parent[1] == 0);
}

TEST_CASE("forest_build rejects bad descriptors") {
  SurfaceDescriptor cyc = flat(Base::Sphere, {1, 1});
  cyc.records[0].parent = 1;
  cyc.records[1].parent = 0;
  CHECK(code_of([&] { forest_build(cyc); }) == Errc::CyclicReference);
  SurfaceDescriptor out = flat(Base::Sphere, {1});
  out.records[0].parent = 4;
  CHECK(code_of([&] { forest_build(out); }) == Errc::InvalidDescriptor);
  CHECK(code_of([] { forest_build(flat(Base::Sphere, {0})); }) == Errc::InvalidDescriptor);
}

TEST_CASE("descriptor_invariants examples") {
  const auto t = descriptor_invariants(flat(Base::Torus, {}));
  CHECK(t.euler == 0);
  CHECK(t.orientable);
  CHECK(t.genus == 1);
  CHECK(t.singularities.empty());
  const auto s2 = descriptor_invariants(flat(Base::Sphere, {2}));
  CHECK(s2.euler == 1);
  CHECK_FALSE(s2.orientable);
  CHECK(s2.genus == 2);
  CHECK(s2.singularities == std::vector<int>{2});
  const auto s111 = descriptor_invariants(flat(Base::Sphere, {1, 1, 1}));
  CHECK(s111.euler == -1);
  CHECK_FALSE(s111.orientable);
  CHECK(s111.genus == 3);
  CHECK(s111.singularities.empty());
  const auto sph = descriptor_invariants(flat(Base::Sphere, {}));
  CHECK(sph.euler == 2);
  CHECK(sph.orientable);
  CHECK(sph.genus == 0);
  const auto kl = descriptor_invariants(flat(Base::Klein, {}));
  CHECK(kl.euler == 0);
  CHECK_FALSE(kl.orientable);
  CHECK(kl.genus == 2);
}

TEST_CASE("descriptor_normalize examples") {
  const auto f = flat(Base::Sphere, {2, 1});
  const auto nf = descriptor_normalize(f);
  CHECK(nf.base == Base::Sphere);
  CHECK(descriptor_invariants(nf) == descriptor_invariants(f));
  CHECK(forest_build(nf).edges == 0);

  const auto k = descriptor_normalize(flat(Base::Klein, {}));
  CHECK(k.base == Base::Sphere);
  REQUIRE(k.records.size() == 2);
  CHECK(k.records[0].order == 1);
  CHECK(k.records[1].order == 1);

  SurfaceDescriptor tower = flat(Base::Torus, {1, 2});
  tower.records[1].parent = 0;
  const auto n = descriptor_normalize(tower);
  CHECK(n.base == Base::Sphere);
  int sum = 0, twos = 0;
  for (const auto& r : n.records) {
    sum += r.order;
    twos += r.order == 2;
  }
  CHECK(sum == 5);  // genus 2 + 1 + 2 needs Σe = 5 on a sphere
  CHECK(twos == 1);
  CHECK(descriptor_invariants(n) == descriptor_invariants(tower));
  CHECK(forest_build(n).edges == 0);

  const auto t2 = descriptor_normalize(flat(Base::Torus, {2}));
  std::vector<int> orders;
  for (const auto& r : t2.records) orders.push_back(r.order);
  std::sort(orders.begin(), orders.end());
  CHECK(t2.base == Base::Sphere);
  CHECK(orders == std::vector<int>{1, 1, 2});

  const auto bare = descriptor_normalize(flat(Base::Torus, {}));
  CHECK(bare.base == Base::Torus);
  CHECK(bare.records.empty());
}

TEST_CASE("isomorphism_decide examples") {
  const auto a = flat(Base::Sphere, {1, 1, 1});
  CHECK(isomorphism_decide(a, a) == Verdict::Isomorphic);
  CHECK(isomorphism_decide(a, flat(Base::Torus, {1})) == Verdict::Isomorphic);
  CHECK(isomorphism_decide(flat(Base::Sphere, {2}), flat(Base::Sphere, {1, 1})) == Verdict::NotIsomorphic);
  CHECK(isomorphism_decide(flat(Base::Sphere, {2, 2}), flat(Base::Sphere, {2, 2})) ==
        Verdict::HypothesisNotMet);
  CHECK(isomorphism_decide(flat(Base::Torus, {}), flat(Base::Sphere, {1, 1})) == Verdict::NotIsomorphic);
  CHECK(isomorphism_decide(flat(Base::Klein, {}), flat(Base::Sphere, {1, 1})) == Verdict::Isomorphic);
}

TEST_CASE("invariants agree with the resolution oracles (property)") {
  Rng r(51);
  for (int k = 0; k < 300; ++k) {
    const auto d = random_descriptor(r);
    const auto h = descriptor_invariants(d);
    CHECK(h.euler == oracle_euler(d));
    if (!h.orientable) CHECK(h.genus == oracle_resolution_genus(d));
    CHECK(h.orientable == (d.records.empty() && d.base != Base::Klein));
  }
}

TEST_CASE("each record lowers euler by one whatever its order (property)") {
  for (Base b : {Base::Sphere, Base::Torus, Base::Klein})
    for (int e = 1; e <= 5; ++e) {
      const auto before = flat(b, {2});
      const auto after = flat(b, {2, e});
      CHECK(descriptor_invariants(after).euler == descriptor_invariants(before).euler - 1);
      CHECK(oracle_euler(after) == oracle_euler(before) - 1);
    }
}

TEST_CASE("normalize preserves invariants and is idempotent (property)") {
  Rng r(52);
  for (int k = 0; k < 300; ++k) {
    const auto d = random_descriptor(r);
    const auto n = descriptor_normalize(d);
    CHECK(descriptor_invariants(n) == descriptor_invariants(d));
    CHECK(forest_build(n).edges == 0);
    const auto nn = descriptor_normalize(n);
    CHECK(nn.base == n.base);
    REQUIRE(nn.records.size() == n.records.size());
    for (std::size_t i = 0; i < n.records.size(); ++i) CHECK(nn.records[i].order == n.records[i].order);
    CHECK((forest_build(d).edges == 0) == (d.records.empty() || std::none_of(d.records.begin(), d.records.end(),
                                                                             [](const BlowupRecord& x) { return x.parent.has_value(); })));
  }
}

TEST_CASE("isomorphism_decide is reflexive and symmetric (property)") {
  Rng r(53);
  for (int k = 0; k < 300; ++k) {
    const auto a = random_descriptor(r), b = random_descriptor(r);
    CHECK(isomorphism_decide(a, b) == isomorphism_decide(b, a));
    const Verdict self = isomorphism_decide(a, a);
    CHECK((self == Verdict::Isomorphic || self == Verdict::HypothesisNotMet));
  }
}
