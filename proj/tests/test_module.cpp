#include <random>

#include "doctest.h"
#include "mcm/module.hpp"

using namespace mcm;

namespace {

RingPtr ring(std::uint32_t p, std::vector<std::string> vars, std::vector<int> w, std::vector<std::string> rels) {
  return QuotientRing::make(PrimeField(p), std::move(vars), std::move(w), rels);
}

GradedModule module_from(const RingPtr& A, std::vector<int> gens, std::vector<int> rels,
                         const std::vector<std::vector<std::string>>& entries) {
  FreeMap p(A, gens, rels);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < rels.size(); ++j) p.at(i, j) = A->element(entries[i][j]);
  return GradedModule(p);
}

Bounds small() {
  Bounds b;
  b.degree_cap = 30;
  return b;
}

}  // namespace

TEST_CASE("minimal presentation examples") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  // m = (x, y) presented minimally by its Koszul-type relations.
  auto m = maximal_ideal(A, small());
  auto mm = minimal_presentation(m);
  CHECK(mm.num_generators() == m.num_generators());
  CHECK(mm.num_relations() == m.num_relations());

  // A unit entry removes one generator and one relation.
  auto u = module_from(A, {0, 0}, {0, 1}, {{"1", "x"}, {"0", "y"}});
  auto um = minimal_presentation(u);
  CHECK(um.num_generators() == 1);
  CHECK(um.num_relations() == 1);

  // k + A over k[x]/(x^2), presented with redundant data.
  auto B = ring(7, {"x"}, {1}, {"x^2"});
  auto red = module_from(B, {0, 0, 1}, {1, 1, 2}, {{"x", "0", "0"}, {"0", "0", "0"}, {"1", "1", "x"}});
  auto rm = minimal_presentation(red);
  CHECK(rm.num_generators() == 2);
  CHECK(mu(red) == 2);
  auto expected = direct_sum(GradedModule::residue_field(B), GradedModule::free(B, {0}));
  CHECK(is_isomorphic(rm, expected, small()));
}

TEST_CASE("module invariants examples") {
  auto C = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  auto inv = invariants(GradedModule::free(C, {0}), small());
  CHECK(inv.multiplicity == 2);
  CHECK(inv.dim == 1);
  CHECK(inv.rank_num == 1);
  CHECK(inv.rank_den == 1);

  for (auto A : {C, ring(5, {"x", "y", "z"}, {1, 1, 1}, {"x*y-z^2"}), ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"})}) {
    auto k = invariants(GradedModule::residue_field(A), small());
    CHECK(k.mu == 1);
    REQUIRE(k.length);
    CHECK(*k.length == 1);
    CHECK(k.multiplicity == 1);
    CHECK(k.dim == 0);
  }

  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  CHECK(mu(maximal_ideal(A, small())) == 2);
}

TEST_CASE("multiplicity of plane curves equals the order of the equation") {
  // Oracle: e(k[x,y]/(f)) is the lowest total degree of a term of f.
  struct Case {
    std::vector<int> w;
    std::string f;
    std::size_t e;
  };
  for (const auto& c : std::vector<Case>{{{1, 1}, "x^2+y^2", 2},
                                         {{1, 1}, "x^3+y^3", 3},
                                         {{3, 2}, "x^2+y^3", 2},
                                         {{5, 2}, "x^2+y^5", 2},
                                         {{3, 1}, "x+y^3", 1},
                                         {{4, 3}, "x^3+y^4", 3}}) {
    auto A = ring(7, {"x", "y"}, c.w, {c.f});
    CHECK(multiplicity(GradedModule::free(A, {0}), small()) == c.e);
  }
}

TEST_CASE("Hom space examples") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto F = GradedModule::free(A, {0});
  CHECK(HomSpace(F, F).dim() == 1);

  auto B = ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"});
  auto k = GradedModule::residue_field(B);
  CHECK(HomSpace(k, k).dim() == 1);

  // m is generated in degree 1; compare with k placed in degree 1.
  auto m = maximal_ideal(B, small());
  CHECK(HomSpace(m, GradedModule::residue_field(B, 1)).dim() == 2);

  // Hom(A, M) is M in degree 0.
  auto M = m.shifted(1);
  CHECK(HomSpace(GradedModule::free(B, {0}), M).dim() == M.dim(0));
}

TEST_CASE("isomorphism examples") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto m = maximal_ideal(A, small());
  CHECK(is_isomorphic(m, m, small()));
  auto F = GradedModule::free(A, {0});
  auto k = GradedModule::residue_field(A);
  CHECK_FALSE(is_isomorphic(F, k, small()));
  CHECK_FALSE(find_shift_isomorphism(F, k, small()));
  auto s = find_shift_isomorphism(m, m.shifted(3), small());
  REQUIRE(s);
  // m = (m(3))(-3).
  CHECK(*s == -3);
  CHECK_FALSE(is_isomorphic(m, m.shifted(3), small()));
}

TEST_CASE("decomposition examples") {
  auto B = ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"});
  auto k = GradedModule::residue_field(B);
  auto dk = decompose(k, small());
  REQUIRE(dk.summands.size() == 1);
  CHECK(dk.summands[0].multiplicity == 1);

  auto kk = direct_sum(k, k);
  auto d2 = decompose(kk, small());
  REQUIRE(d2.summands.size() == 1);
  CHECK(d2.summands[0].multiplicity == 2);
  CHECK(is_isomorphic(d2.summands[0].module, k, small()));

  // Mixed shifts and ranks.
  auto m = maximal_ideal(B, small());
  auto mix = direct_sum(direct_sum(k.shifted(-2), m), GradedModule::free(B, {0}));
  auto d3 = decompose(mix, small());
  CHECK(d3.count() == 3);
  CHECK(is_isomorphic_ungraded(mix, direct_sum(direct_sum(GradedModule::free(B, {5}), k), m), small()));
}

TEST_CASE("decomposition is seed independent") {
  auto B = ring(5, {"x", "y"}, {1, 1}, {"x^2", "y^2"});
  auto k = GradedModule::residue_field(B);
  auto m = maximal_ideal(B, small());
  auto M = direct_sum(direct_sum(k, m), direct_sum(k, GradedModule::free(B, {1})));
  std::vector<std::size_t> reference;
  for (std::uint64_t seed : {1ull, 2ull, 99ull, 12345ull}) {
    Bounds b = small();
    b.seed = seed;
    auto d = decompose(M, b);
    std::vector<std::size_t> sig;
    for (const auto& s : d.summands) sig.push_back(s.module.num_generators() * 10 + s.multiplicity);
    std::sort(sig.begin(), sig.end());
    if (reference.empty()) reference = sig;
    CHECK(sig == reference);
  }
  CHECK(reference == std::vector<std::size_t>{11, 12, 21});
}

TEST_CASE("Ulrich examples") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  CHECK_FALSE(ulrich_test(GradedModule::free(A, {0}), small()));
  auto C = ring(7, {"x", "y"}, {1, 1}, {"x^2-y^2"});
  CHECK(ulrich_test(maximal_ideal(C, small()), small()));
}

TEST_CASE("maps into mM perturb the identity to an isomorphism") {
  auto A = ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x^3+y^3+z^3"});
  auto m = maximal_ideal(A, small());
  auto M = direct_sum(m, m.shifted(-1));
  HomSpace end(M, M);
  // Endomorphisms with zero top form the kernel of the top map.
  Matrix tops(A->field(), M.num_generators() * M.num_generators(), end.dim());
  for (std::size_t b = 0; b < end.dim(); ++b) {
    auto t = top_matrix(end, end.basis()[b]);
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j) tops(i * t.cols() + j, b) = t(i, j);
  }
  auto radical = nullspace_vectors(tops);
  REQUIRE(!radical.empty());
  std::mt19937_64 rng(4);
  auto id = end.identity();
  for (int t = 0; t < 5; ++t) {
    Vec c(end.dim(), 0);
    for (const auto& r : radical) axpy(A->field(), static_cast<std::uint32_t>(rng() % 7), r, c);
    auto f = end.combine(c);
    CHECK(top_matrix(end, f).is_zero());
    Vec g(id.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = A->field().sub(id[i], f[i]);
    CHECK(rank(top_matrix(end, g)) == M.num_generators());
    for (int d = 0; d <= 6; ++d) CHECK(rank(action_matrix(end, g, d)) == M.dim(d));
  }
}

TEST_CASE("beta subspace contains the maps through free modules") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto m = maximal_ideal(A, small());
  auto F = GradedModule::free(A, {0});
  // Every map from a free module factors through a free module.
  HomSpace H(F, m.shifted(-1));
  CHECK(beta_basis(H).size() == H.dim());
  // Over GF(7) the ring is a domain and End_0(m) is the field GF(49),
  // spanned by 1 and y/x. A field has no proper ideals and the identity of
  // m does not factor through a free module, so beta vanishes.
  HomSpace E(m, m);
  CHECK(E.dim() == 2);
  CHECK(beta_basis(E).empty());
  auto local = local_endomorphism_ring(E, small());
  REQUIRE(local);
  CHECK(local->residue_dim == 2);
  CHECK(local->radical.empty());
}

TEST_CASE("kernel generators respect the degree cap") {
  auto S = ring(7, {"x", "y"}, {1, 1}, {});
  FreeMap phi(S, {0}, {2, 2});
  phi.at(0, 0) = S->element("x^2");
  phi.at(0, 1) = S->element("y^2");
  auto k = kernel_generators(phi, small());
  REQUIRE(k.cols() == 1);
  CHECK(k.source[0] == 4);
  Bounds tight;
  tight.degree_cap = 3;
  CHECK_THROWS_AS(kernel_generators(phi, tight), Inconclusive);
}
