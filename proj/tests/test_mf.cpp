#include "doctest.h"
#include "helpers.hpp"
#include "mcm/mf.hpp"

using namespace mcm;
using namespace testing_helpers;

namespace {

// Polynomial product over GF(p) on exponent maps, independent of the
// degree-piece machinery.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b, std::int64_t p) {
  Polynomial out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] = ((out[e] + ca * cb) % p + p) % p;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Polynomial poly_add(Polynomial a, const Polynomial& b, std::int64_t p) {
  for (const auto& [e, c] : b) a[e] = ((a[e] + c) % p + p) % p;
  for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
  return a;
}

Polynomial normalize(const Polynomial& a, std::int64_t p) { return poly_add(Polynomial{}, a, p); }

// phi * psi == f * I for string matrices.
bool product_is_f(const WeightedPolyRing& S, const std::vector<std::vector<std::string>>& phi,
                  const std::vector<std::vector<std::string>>& psi, const std::string& f) {
  std::int64_t p = S.field().characteristic();
  auto F = normalize(S.parse(f), p);
  std::size_t n = phi.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Polynomial acc;
      for (std::size_t j = 0; j < n; ++j) acc = poly_add(acc, poly_mul(S.parse(phi[i][j]), S.parse(psi[j][k]), p), p);
      if (acc != (i == k ? F : Polynomial{})) return false;
    }
  return true;
}

Bounds for_catalog(const Catalog& c) {
  Bounds b;
  b.degree_cap = c.recommended_degree_cap;
  b.hom_bound = 6;
  return b;
}

bool same_entries(const FreeMap& a, const FreeMap& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    const auto &x = a.entries[k], &y = b.entries[k];
    if (x.is_zero() != y.is_zero()) return false;
    if (!x.is_zero() && (x.degree != y.degree || x.coords != y.coords)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validate examples") {
  auto h = make_hypersurface(PrimeField(7), {"x"}, {1}, "x^2");
  CHECK(validate(make_mf(h, {{"x"}}, {{"x"}})));
  auto h2 = make_hypersurface(PrimeField(7), {"x", "y"}, {1, 1}, "x^2");
  CHECK_FALSE(validate(make_mf(h2, {{"x"}}, {{"y"}})));
  // Entries with no consistent twist.
  CHECK_THROWS_AS(make_mf(h2, {{"x", "y^2"}, {"y", "x"}}, {{"x", "y"}, {"y", "x"}}), InputError);
  CHECK_THROWS_AS(make_mf(h2, {{"x", "y"}}, {{"x"}}), InputError);
  CHECK_THROWS_AS(make_mf(h2, {{"x+y^2"}}, {{"x"}}), InputError);
}

TEST_CASE("A_n curve factorizations match the multiplication oracle") {
  for (int n = 1; n <= 8; ++n) {
    std::uint32_t p = n % 2 ? 5 : 7;
    auto cat = ade_catalog("A", n, 1, p);
    const auto& S = cat.hs.poly->ambient();
    for (int j = 1; j <= n; ++j) {
      std::vector<std::vector<std::string>> phi = {
          {"x", "y^" + std::to_string(j)}, {"y^" + std::to_string(n + 1 - j), "-x"}};
      CHECK(product_is_f(S, phi, phi, "x^2+y^" + std::to_string(n + 1)));
      CHECK(validate(make_mf(cat.hs, phi, phi)));
    }
    for (const auto& e : cat.entries) CHECK(validate(e));
  }
}

TEST_CASE("dim-2 A_n factorizations match the multiplication oracle") {
  for (int n = 1; n <= 4; ++n) {
    auto cat = ade_catalog("A", n, 2, 13);
    REQUIRE(cat.entries.size() == static_cast<std::size_t>(n));
    const auto& S = cat.hs.poly->ambient();
    for (const auto& e : cat.entries) {
      CHECK(validate(e));
      CHECK(e.reduced());
      std::vector<std::vector<std::string>> phi(2, std::vector<std::string>(2)), psi = phi;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          phi[i][j] = cat.hs.poly->to_string(e.phi.at(i, j));
          psi[i][j] = cat.hs.poly->to_string(e.psi.at(i, j));
        }
      CHECK(product_is_f(S, phi, psi, "x^2+y^2+z^" + std::to_string(n + 1)));
    }
  }
}

TEST_CASE("cokernel examples") {
  auto h = make_hypersurface(PrimeField(7), {"x"}, {1}, "x^2");
  auto k = coker_module(make_mf(h, {{"x"}}, {{"x"}}));
  CHECK(is_isomorphic(k, GradedModule::residue_field(h.quotient), small()));

  auto c = make_hypersurface(PrimeField(5), {"x", "y"}, {1, 1}, "x^2+y^2");
  auto mf = make_mf(c, {{"x", "y"}, {"y", "-x"}}, {{"x", "y"}, {"y", "-x"}});
  REQUIRE(validate(mf));
  auto M = coker_module(mf);
  CHECK(mu(M) == 2);
  CHECK(multiplicity(M, small()) == 2);
  CHECK(ulrich_test(M, small()));
  CHECK(mcm_test(M, small()));

  // Block sums give direct sums; trivial blocks disappear.
  auto n1 = make_mf(c, {{"x+2*y"}}, {{"x-2*y"}});
  REQUIRE(validate(n1));
  auto sum = mf_direct_sum(mf, n1);
  CHECK(validate(sum));
  CHECK(is_isomorphic(coker_module(sum), direct_sum(M, coker_module(n1)), small()));
  auto unit = make_mf(c, {{"1"}}, {{"x^2+y^2"}});
  auto free_block = make_mf(c, {{"x^2+y^2"}}, {{"1"}});
  CHECK(validate(unit));
  CHECK(validate(free_block));
  auto padded = mf_direct_sum(mf_direct_sum(n1, unit), free_block);
  CHECK_FALSE(padded.reduced());
  auto r = mf_reduce(padded);
  CHECK(r.reduced());
  CHECK(r.size() == 1);
  CHECK(validate(r));
  CHECK(is_isomorphic(coker_module(padded), coker_module(n1), small()));
}

TEST_CASE("shift and transpose") {
  auto h = make_hypersurface(PrimeField(7), {"x"}, {1}, "x^2");
  auto xx = make_mf(h, {{"x"}}, {{"x"}});
  auto s = mf_shift(xx);
  CHECK(same_entries(s.phi, xx.phi));
  CHECK(same_entries(s.psi, xx.psi));

  auto cat = ade_catalog("A", 4, 1, 7);
  Bounds b = for_catalog(cat);
  for (const auto& e : cat.entries) {
    auto s2 = mf_shift(mf_shift(e));
    CHECK(validate(s2));
    CHECK(same_entries(s2.phi, e.phi));
    CHECK(same_entries(s2.psi, e.psi));
    auto shifted_twists = e.phi.target;
    for (auto& d : shifted_twists) d += cat.hs.degree;
    CHECK(s2.phi.target == shifted_twists);
    CHECK(validate(mf_transpose(e)));
  }
  // Symmetric factorization: transpose is a fixed point.
  auto c = make_hypersurface(PrimeField(5), {"x", "y"}, {1, 1}, "x^2+y^2");
  auto sym = make_mf(c, {{"x", "y"}, {"y", "-x"}}, {{"x", "y"}, {"y", "-x"}});
  auto t = mf_transpose(sym);
  CHECK(same_entries(t.phi, sym.phi));
  CHECK(same_entries(t.psi, sym.psi));
}

TEST_CASE("catalog invariants") {
  struct Case {
    int n, dim;
    std::uint32_t p;
  };
  for (auto [n, dim, p] : {Case{1, 1, 5}, Case{2, 1, 7}, Case{3, 1, 5}, Case{4, 1, 7}, Case{5, 1, 13},
                           Case{1, 2, 5}, Case{2, 2, 5}, Case{3, 2, 13}}) {
    CAPTURE(n);
    CAPTURE(dim);
    auto cat = ade_catalog("A", n, dim, p);
    Bounds b = for_catalog(cat);
    std::size_t expected = dim == 2 ? n : (n % 2 ? (n + 3) / 2 : n / 2);
    CHECK(cat.entries.size() == expected);
    std::vector<GradedModule> mods;
    for (const auto& e : cat.entries) {
      CHECK(validate(e));
      CHECK(e.reduced());
      auto M = coker_module(e);
      CHECK(mcm_test(M, b));
      CHECK(is_indecomposable(M, b));
      CHECK(ulrich_test(M, b));
      // Shift realizes the first syzygy, and syzygies are 2-periodic.
      auto res = resolve(M, 4, b);
      auto shift = find_shift_isomorphism(coker_module(mf_shift(e)), syzygy_from(res, 1), b);
      REQUIRE(shift);
      CHECK(*shift == 0);
      CHECK(find_shift_isomorphism(syzygy_from(res, 1), syzygy_from(res, 3), b));
      mods.push_back(M);
    }
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (std::size_t j = i + 1; j < mods.size(); ++j) CHECK_FALSE(find_shift_isomorphism(mods[i], mods[j], b));
  }
}

TEST_CASE("catalog loader rejects unsupported input") {
  CHECK_THROWS_AS(ade_catalog("A", 1, 1, 7), InputError);
  CHECK_THROWS_AS(ade_catalog("A", 2, 2, 7), InputError);
  CHECK_THROWS_AS(ade_catalog("D", 4, 1, 5), InputError);
  CHECK_THROWS_AS(ade_catalog("A", 9, 1, 7), InputError);
  CHECK_THROWS_AS(ade_catalog("A", 5, 2, 13), InputError);
  CHECK_NOTHROW(ade_catalog("A", 2, 1, 3));
}

TEST_CASE("factorizations from resolution tails") {
  auto B = ring(7, {"x"}, {1}, {"x^2"});
  auto mf = from_resolution_tail(GradedModule::residue_field(B), small());
  CHECK(validate(mf));
  REQUIRE(mf.size() == 1);
  CHECK(B->ambient().monomial_string({1}) == "x");
  CHECK(mf.hs.poly->to_string(mf.phi.at(0, 0)) == "x");
  CHECK(mf.hs.poly->to_string(mf.psi.at(0, 0)) == "x");

  auto C = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  auto m = maximal_ideal(C, small());
  auto t = from_resolution_tail(m, small());
  CHECK(validate(t));
  CHECK(t.size() == 2);
  CHECK(find_shift_isomorphism(coker_module(t), m, small()));

  // Round trip through the catalog.
  auto cat = ade_catalog("A", 3, 1, 5);
  Bounds b = for_catalog(cat);
  for (const auto& e : cat.entries) {
    auto M = coker_module(e);
    auto back = from_resolution_tail(M, b);
    CHECK(validate(back));
    auto s = find_shift_isomorphism(coker_module(back), M, b);
    REQUIRE(s);
    CHECK(*s == 0);
  }
  CHECK_THROWS_AS(hypersurface_of(ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"})), InputError);
}
