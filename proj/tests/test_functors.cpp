#include "doctest.h"
#include "helpers.hpp"
#include "mcm/functors.hpp"
#include "mcm/mf.hpp"

using namespace mcm;
using namespace testing_helpers;

namespace {

Bounds for_catalog(const Catalog& c) {
  Bounds b;
  b.degree_cap = c.recommended_degree_cap;
  b.hom_bound = 6;
  return b;
}

// Isomorphism up to a shift of the grading, with a readable failure.
bool iso_up_to_shift(const GradedModule& a, const GradedModule& b, const Bounds& bounds) {
  return find_shift_isomorphism(a, b, bounds).has_value();
}

bool stably_iso(const GradedModule& a, const GradedModule& b, const Bounds& bounds) {
  auto sa = stable_part(a, bounds).module, sb = stable_part(b, bounds).module;
  return is_isomorphic_ungraded(sa, sb, bounds);
}

}  // namespace

TEST_CASE("stable part strips free summands") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto m = maximal_ideal(A, small());
  auto padded = direct_sum(direct_sum(m, GradedModule::free(A, {2})), GradedModule::free(A, {-1}));
  auto s = stable_part(padded, small());
  CHECK(s.free_degrees == std::vector<int>{-1, 2});
  CHECK(is_isomorphic(s.module, m, small()));
  auto t = stable_part(m, small());
  CHECK_FALSE(t.stripped());
  CHECK(stable_part(GradedModule::free(A, {0, 0}), small()).module.is_zero_module());
}

TEST_CASE("dual") {
  auto A = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  CHECK(is_isomorphic(dual(GradedModule::free(A, {0}), small()), GradedModule::free(A, {0}), small()));
  CHECK(is_isomorphic(dual(GradedModule::free(A, {2}), small()), GradedModule::free(A, {-2}), small()));
  CHECK_THROWS_AS(dual(GradedModule::residue_field(A), small()), InputError);

  for (auto [n, dim, p] : {std::tuple{2, 1, 7u}, std::tuple{3, 1, 5u}, std::tuple{2, 2, 5u}}) {
    auto cat = ade_catalog("A", n, dim, p);
    auto b = for_catalog(cat);
    for (const auto& e : cat.entries) {
      auto M = coker_module(e);
      auto D = dual(M, b);
      CHECK(mcm_test(D, b));
      CHECK(is_isomorphic(dual(D, b), M, b));
      // Graded comparison with the transposed factorization.
      CHECK(is_isomorphic(D, coker_module(mf_transpose(e)), b));
    }
  }
}

TEST_CASE("transpose") {
  auto B = ring(7, {"x"}, {1}, {"x^2"});
  CHECK(transpose(GradedModule::free(B, {0})).is_zero_module());
  auto k = GradedModule::residue_field(B);
  CHECK(iso_up_to_shift(transpose(k), k, small()));

  auto cat = ade_catalog("A", 4, 1, 7);
  auto b = for_catalog(cat);
  for (const auto& e : cat.entries) {
    auto M = coker_module(e);
    auto tr = transpose(M);
    CHECK(is_isomorphic(tr, dual(syzygy(M, 2, b), b, false), b));
  }
}

TEST_CASE("linkage") {
  for (auto [n, dim, p] : {std::tuple{3, 1, 5u}, std::tuple{4, 1, 7u}, std::tuple{3, 2, 13u}}) {
    auto cat = ade_catalog("A", n, dim, p);
    auto b = for_catalog(cat);
    for (const auto& e : cat.entries) {
      auto M = coker_module(e);
      auto l = link(M, b);
      CHECK(is_isomorphic(link(l, b), M, b));
      CHECK(is_isomorphic(cosyzygy(dual(M, b), 1, b), l, b));
      // D o lambda^{-1} = Syz_1 and lambda is an involution.
      CHECK(is_isomorphic(dual(l, b), minimal_presentation(syzygy(M, 1, b)), b));
      if (dim == 2) CHECK(iso_up_to_shift(l, M, b));
    }
  }
  // Free summands are stripped before linking.
  auto cat = ade_catalog("A", 2, 1, 7);
  auto b = for_catalog(cat);
  auto M = coker_module(cat.entries[0]);
  CHECK(is_isomorphic(link(direct_sum(M, GradedModule::free(M.ring(), {0})), b), link(M, b), b));
}

TEST_CASE("cosyzygy and the translate") {
  auto cat = ade_catalog("A", 2, 2, 5);
  auto b = for_catalog(cat);
  for (const auto& e : cat.entries) {
    auto M = coker_module(e);
    auto up = cosyzygy(M, 1, b);
    CHECK(is_isomorphic(minimal_presentation(syzygy(up, 1, b)), M, b));
    CHECK(is_isomorphic(cosyzygy(minimal_presentation(syzygy(M, 1, b)), 1, b), M, b));
    // Over a hypersurface the cosyzygy is the shifted factorization, up to twist.
    CHECK(iso_up_to_shift(up, coker_module(mf_shift(e)), b));
    CHECK(is_isomorphic(ar_translate(M, b), M, b));
  }
  auto curve = ade_catalog("A", 3, 1, 5);
  auto bc = for_catalog(curve);
  for (const auto& e : curve.entries) {
    auto M = coker_module(e);
    CHECK(is_isomorphic(ar_translate(M, bc), minimal_presentation(syzygy(M, 1, bc)), bc));
  }
}

TEST_CASE("Ext modules") {
  // Ext^1(k, A) = k(shift) over a one-dimensional Gorenstein ring.
  auto A = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  auto k = GradedModule::residue_field(A);
  auto e1 = ext_module(k, 1, small());
  CHECK(iso_up_to_shift(e1, k, small()));
  CHECK(ext_module(k, 2, small()).is_zero_module());
  CHECK(ext_module(k, 0, small()).is_zero_module());
  CHECK(ext_module(maximal_ideal(A, small()), 1, small()).is_zero_module());
  CHECK(codimension(k, small()) == 1);
  CHECK(codimension(maximal_ideal(A, small()), small()) == 0);
}

TEST_CASE("MCM approximation") {
  auto A = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  auto m = maximal_ideal(A, small());
  CHECK(is_isomorphic(mcm_approx(m, small()), m, small()));
  auto k = GradedModule::residue_field(A);
  auto xk = mcm_approx(k, small());
  CHECK(mcm_test(xk, small()));
  CHECK(stably_iso(xk, mcm_approx_via_syzygies(k, small()), small()));
  // X(Syz_1 M) = Syz_1 X(M) in the stable category.
  CHECK(stably_iso(mcm_approx(syzygy(k, 1, small()), small()),
                   minimal_presentation(syzygy(xk, 1, small())), small()));

  Bounds b = small();
  b.degree_cap = 20;
  auto S = ring(5, {"x", "y", "z"}, {1, 1, 1}, {"x*y-z^2"});
  auto ks = GradedModule::residue_field(S);
  auto x2 = mcm_approx(ks, b);
  CHECK(mcm_test(x2, b));
  CHECK(iso_up_to_shift(x2, dual(syzygy(ks, 2, b), b, false), b));
  CHECK(stably_iso(x2, mcm_approx_via_syzygies(ks, b), b));
  auto line = module_from(S, {0}, {1, 1}, {{"x", "z"}});
  CHECK(codimension(line, b) == 1);
  auto xl = mcm_approx(line, b);
  CHECK(mcm_test(xl, b));
  CHECK(stably_iso(xl, mcm_approx_via_syzygies(line, b), b));

  // The maximal ideal of a surface has depth 1; its approximation is Syz_1 X(k).
  auto ms = maximal_ideal(S, b);
  CHECK_FALSE(mcm_test(ms, b));
  auto xm = mcm_approx(ms, b);
  CHECK(mcm_test(xm, b));
  CHECK(stably_iso(xm, minimal_presentation(syzygy(x2, 1, b)), b));
}

TEST_CASE("lifting maps to syzygies") {
  auto cat = ade_catalog("A", 4, 1, 7);
  auto b = for_catalog(cat);
  auto M = coker_module(cat.entries[0]);
  auto N = coker_module(cat.entries[1]);
  HomSpace end(M, M);
  auto lifted = lift_map(end, end.identity(), b);
  HomSpace syz_end(lifted.source, lifted.target);
  REQUIRE(syz_end.coefficients(lifted.map));
  auto diff = lifted.map;
  auto id = syz_end.identity();
  const auto& F = M.ring()->field();
  for (std::size_t t = 0; t < diff.size(); ++t) diff[t] = F.sub(diff[t], id[t]);
  // The lift of the identity agrees with the identity modulo beta.
  auto beta = beta_basis(syz_end);
  EchelonBasis<PrimeField> span(F, syz_end.coord_dim());
  for (const auto& v : beta) span.insert(v);
  CHECK(span.contains(diff));

  // Every lift of a map M -> N is a homomorphism; the zero map lifts into beta.
  for (int shift : {0, -1, -2, -3}) {
    HomSpace H(M, N.shifted(shift));
    for (const auto& h : H.basis()) {
      auto l = lift_map(H, h, b);
      HomSpace L(l.source, l.target);
      CHECK(L.coefficients(l.map));
    }
    auto z = lift_map(H, Vec(H.coord_dim(), 0), b);
    CHECK(is_zero_vec(z.map));
  }
}

TEST_CASE("stable Hom") {
  auto B = ring(7, {"x"}, {1}, {"x^2"});
  auto k = GradedModule::residue_field(B);
  auto sk = stable_hom(k, k);
  CHECK(sk.hom_dim == 1);
  CHECK(sk.dim() == 1);
  auto cat = ade_catalog("A", 2, 1, 7);
  auto M = coker_module(cat.entries[0]);
  for (int s = -4; s <= 4; ++s) CHECK(stable_hom(GradedModule::free(M.ring(), {s}), M).dim() == 0);
  CHECK(stable_hom(M, M).dim() >= 1);
  // The identity class is nonzero.
  HomSpace end(M, M);
  EchelonBasis<PrimeField> span(M.ring()->field(), end.coord_dim());
  for (const auto& v : beta_basis(end)) span.insert(v);
  CHECK_FALSE(span.contains(end.identity()));
}
