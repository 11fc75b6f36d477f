#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "mcm/quiver.hpp"

using namespace mcm;
using namespace testing_helpers;

namespace {

Bounds for_catalog(const Catalog& c) {
  Bounds b;
  b.degree_cap = c.recommended_degree_cap;
  b.hom_bound = 6;
  return b;
}

ARQuiver quiver_of(const Catalog& c) {
  return build_quiver(c.hs.quotient, catalog_modules(c), for_catalog(c));
}

std::size_t vertex(const ARQuiver& q, const std::string& name) {
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (q.vertices[v].name == name) return v;
  FAIL("no vertex " << name);
  return 0;
}

// Both routes to the middle term agree and multiplicity is additive.
void check_middle_terms(const ARQuiver& q) {
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (q.vertices[v].free) continue;
    auto data = middle_term(q, v);
    CHECK(data.middle == middle_from_tau(q, v));
    CHECK(data.middle_multiplicity == q.vertices[v].multiplicity + q.vertices[data.tau].multiplicity);
    if (data.mu_identity_applies()) CHECK(data.middle_mu == q.vertices[v].mu + q.vertices[data.tau].mu);
  }
}

}  // namespace

TEST_CASE("regular ring: the free vertex alone") {
  auto S = ring(7, {"x"}, {1}, {});
  auto q = build_quiver(S, {}, small());
  REQUIRE(q.vertices.size() == 1);
  CHECK(q.vertices[0].free);
  CHECK(q.stable_components().empty());
  // End(A) = k[x]: rad / rad^2 is spanned by x, a loop in degree 1.
  CHECK(q.irr(0, 0) == 1);
  REQUIRE(q.arrows.size() == 1);
  CHECK(q.arrows[0].layers.at(0).shift == 1);
}

TEST_CASE("A1 surface: A and M joined by double arrows") {
  auto cat = ade_catalog("A", 1, 2, 5);
  auto q = quiver_of(cat);
  REQUIRE(q.vertices.size() == 2);
  auto a = *q.free_vertex();
  auto m = 1 - a;
  CHECK(q.irr(a, m) == 2);
  CHECK(q.irr(m, a) == 2);
  CHECK(q.irr(m, m) == 0);
  CHECK(q.irr(a, a) == 0);
  CHECK(q.tau[m] == m);
  auto data = middle_term(q, m);
  CHECK(data.middle_free_rank == 2);
  CHECK_FALSE(data.mu_identity_applies());
  check_middle_terms(q);
}

TEST_CASE("A3 curve quiver") {
  auto cat = ade_catalog("A", 3, 1, 5);
  auto q = quiver_of(cat);
  REQUIRE(q.vertices.size() == 4);
  auto a = *q.free_vertex();
  auto m1 = vertex(q, "M1"), np = vertex(q, "N+"), nm = vertex(q, "N-");
  CHECK(q.irr(a, m1) == 1);
  CHECK(q.irr(m1, a) == 1);
  for (auto n : {np, nm}) {
    CHECK(q.irr(m1, n) == 1);
    CHECK(q.irr(n, m1) == 1);
    CHECK(q.irr(a, n) == 0);
    CHECK(q.irr(n, a) == 0);
  }
  CHECK(q.irr(np, nm) == 0);
  CHECK(q.irr(m1, m1) == 0);
  // tau = Syz_1 swaps the two branches.
  CHECK(q.tau[np] == nm);
  CHECK(q.tau[nm] == np);
  CHECK(q.tau[m1] == m1);
  auto comps = q.stable_components();
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].size() == 3);
  check_middle_terms(q);
  auto dn = middle_term(q, np);
  CHECK(dn.mu_identity_applies());
  CHECK(dn.middle_mu == 2);

  for (auto f : {QuiverFunctor::Dual, QuiverFunctor::Link}) {
    auto r = reverse_iso_check(q, f, for_catalog(cat));
    CHECK_MESSAGE(r.ok, r.detail);
  }
}

TEST_CASE("A2 curve: a loop at M") {
  auto cat = ade_catalog("A", 2, 1, 7);
  auto q = quiver_of(cat);
  auto a = *q.free_vertex();
  auto m = vertex(q, "M1");
  CHECK(q.irr(m, m) == 1);
  CHECK(q.irr(a, m) == 1);
  CHECK(q.irr(m, a) == 1);
  check_middle_terms(q);
}

TEST_CASE("surfaces: arrows come in pairs and lambda fixes every vertex") {
  for (auto [n, p] : {std::pair{2, 5u}, std::pair{3, 13u}}) {
    auto cat = ade_catalog("A", n, 2, p);
    auto q = quiver_of(cat);
    auto b = for_catalog(cat);
    for (std::size_t i = 0; i < q.vertices.size(); ++i)
      for (std::size_t j = 0; j < q.vertices.size(); ++j) CHECK((q.irr(i, j) > 0) == (q.irr(j, i) > 0));
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
      if (!q.vertices[v].free) CHECK(q.tau[v] == v);
    check_middle_terms(q);
    auto l = reverse_iso_check(q, QuiverFunctor::Link, b);
    CHECK_MESSAGE(l.ok, l.detail);
    for (std::size_t v = 0; v < q.vertices.size(); ++v) CHECK(l.bijection[v] == v);
    auto d = reverse_iso_check(q, QuiverFunctor::Dual, b);
    CHECK_MESSAGE(d.ok, d.detail);
  }
}

TEST_CASE("larger curve catalogs") {
  for (auto [n, p] : {std::pair{4, 7u}, std::pair{5, 13u}}) {
    auto cat = ade_catalog("A", n, 1, p);
    auto q = quiver_of(cat);
    auto b = for_catalog(cat);
    check_middle_terms(q);
    CHECK(q.stable_components().size() == 1);
    for (auto f : {QuiverFunctor::Dual, QuiverFunctor::Link}) {
      auto r = reverse_iso_check(q, f, b);
      CHECK_MESSAGE(r.ok, r.detail);
    }
  }
}

TEST_CASE("lifted irreducible maps stay irreducible") {
  auto cat = ade_catalog("A", 3, 1, 5);
  auto b = for_catalog(cat);
  auto q = quiver_of(cat);
  auto& filt = *q.filtration;
  const auto& F = q.ring->field();
  std::size_t checked = 0;
  for (const auto& arrow : q.arrows) {
    if (q.vertices[arrow.source].free || q.vertices[arrow.target].free) continue;
    for (const auto& layer : arrow.layers) {
      const auto& H = filt.hom(arrow.source, arrow.target, layer.shift);
      for (const auto& f : filt.irreducible_maps(arrow.source, arrow.target, layer.shift)) {
        auto lifted = lift_map(H, f, b);
        HomSpace L(minimal_presentation(lifted.source), minimal_presentation(lifted.target));
        REQUIRE(L.source().gen_degrees() == lifted.source.gen_degrees());
        REQUIRE(L.target().gen_degrees() == lifted.target.gen_degrees());
        EchelonBasis<PrimeField> r1(F, L.coord_dim()), r2(F, L.coord_dim());
        for (const auto& v : filt.rad1(L)) r1.insert(v);
        for (const auto& v : filt.rad2(L)) r2.insert(v);
        CHECK(r1.contains(lifted.map));
        CHECK_FALSE(r2.contains(lifted.map));
        ++checked;
      }
    }
  }
  CHECK(checked >= 4);
}

TEST_CASE("filtration layers") {
  auto cat = ade_catalog("A", 3, 1, 5);
  auto q = quiver_of(cat);
  auto& filt = *q.filtration;
  auto m1 = vertex(q, "M1"), np = vertex(q, "N+");
  // Between different vertices the first layer is all of Hom.
  for (int t : filt.candidate_shifts(m1, np)) {
    auto l = filt.layer(m1, np, t);
    CHECK(l.rad1_dim == l.hom_dim);
    CHECK(l.rad2_dim <= l.rad1_dim);
  }
  // On End(M) the identity is not radical.
  auto l = filt.layer(m1, m1, 0);
  CHECK(l.rad1_dim + 1 == l.hom_dim);
}

TEST_CASE("orbit ideal and component properties") {
  for (auto [n, dim, p] : {std::tuple{3, 1, 5u}, std::tuple{2, 1, 7u}, std::tuple{2, 2, 5u}}) {
    auto cat = ade_catalog("A", n, dim, p);
    auto q = quiver_of(cat);
    auto b = for_catalog(cat);
    for (const auto& comp : q.stable_components()) {
      auto ideal = syzygy_orbit_ideal(q, comp, 4, b);
      CHECK(ideal.constant);
      REQUIRE(ideal.generator);
      CHECK(*ideal.generator >= 1);
      CHECK(*ideal.generator <= 2);
    }
    for (const auto& r : component_classify(q, parse_property("ulrich"), b)) CHECK(r.verdict == "true");
    // Period search and growth resolve up to nine steps, each raising degrees by deg f.
    Bounds deep = b;
    deep.degree_cap = 12 * cat.hs.degree;
    for (const auto& r : component_classify(q, parse_property("periodic"), deep)) CHECK(r.verdict == "true");
    for (const auto& r : component_classify(q, parse_property("cx=1"), deep)) CHECK(r.verdict == "true");
    for (const auto& r : component_classify(q, parse_property("curv<=1"), deep)) CHECK(r.verdict == "true");
    for (const auto& r : component_classify(q, parse_property("bounded_nonperiodic"), deep))
      CHECK(r.verdict == "false");
    // Too small a cap leaves the verdict open rather than guessing.
    Bounds shallow = b;
    shallow.degree_cap = 2 * cat.hs.degree;
    for (const auto& r : component_classify(q, parse_property("cx=1"), shallow)) CHECK(r.verdict == "partial");
  }
  CHECK_THROWS_AS(parse_property("cx=two"), InputError);
  CHECK_THROWS_AS(parse_property("wild"), InputError);
  CHECK(parse_property("curv<=1.5").name() == "curv<=1.5");
}

TEST_CASE("catalog closure and DOT output") {
  auto cat = ade_catalog("A", 3, 1, 5);
  auto b = for_catalog(cat);
  auto mods = catalog_modules(cat);
  auto missing = mods;
  missing.erase(std::remove_if(missing.begin(), missing.end(), [](const auto& m) { return m.name == "N-"; }),
                missing.end());
  CHECK_THROWS_WITH_AS(build_quiver(cat.hs.quotient, missing, b), doctest::Contains("catalog incomplete"),
                       InputError);
  auto doubled = mods;
  doubled.push_back({"copy", mods[0].module.shifted(3)});
  CHECK_THROWS_AS(build_quiver(cat.hs.quotient, doubled, b), InputError);
  auto sum = mods;
  sum.push_back({"sum", direct_sum(mods[0].module, mods[1].module)});
  CHECK_THROWS_AS(build_quiver(cat.hs.quotient, sum, b), InputError);

  auto q = quiver_of(cat);
  auto dot = to_dot(q);
  CHECK(dot.find("\"A\" [label=\"A (μ=1, e=2)\", shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("\"M1\" [label=\"M1 (μ=2, e=2)\"]") != std::string::npos);
  CHECK(dot.find("\"N+\" -> \"M1\" [label=\"1\"]") != std::string::npos);
  CHECK(dot == to_dot(quiver_of(cat)));
}
