#include <random>

#include "doctest.h"
#include "mcm/ring.hpp"

using namespace mcm;

namespace {

std::shared_ptr<QuotientRing> ring(std::uint32_t p, std::vector<std::string> vars, std::vector<int> w,
                                   std::vector<std::string> rels) {
  return QuotientRing::make(PrimeField(p), std::move(vars), std::move(w), rels);
}

// Naive product of representatives in S, then reduction.
RingElement naive_product(const QuotientRing& A, const RingElement& a, const RingElement& b) {
  const auto& S = A.ambient();
  auto ea = A.degree_basis(a.degree), eb = A.degree_basis(b.degree);
  Polynomial prod;
  for (std::size_t i = 0; i < ea.size(); ++i)
    for (std::size_t j = 0; j < eb.size(); ++j) {
      Exponent e(S.num_vars());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[i][k] + eb[j][k];
      prod[e] += static_cast<std::int64_t>(a.coords[i]) * b.coords[j];
    }
  auto r = A.element(prod);
  if (r.coords.empty()) r = A.zero(a.degree + b.degree);
  return r;
}

}  // namespace

TEST_CASE("degree bases") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto b1 = A->degree_basis(1);
  CHECK(b1.size() == 2);
  CHECK(A->ambient().monomial_string(b1[0]) == "x");
  CHECK(A->ambient().monomial_string(b1[1]) == "y");
  CHECK(A->dim(3) == 2);
  for (int d = 1; d < 10; ++d) CHECK(A->dim(d) == 2);

  auto C = ring(7, {"x", "y"}, {3, 2}, {"x^2+y^3"});
  CHECK(C->dim(6) == 1);
  CHECK(C->dim(1) == 0);
  CHECK(C->dim(5) == 1);
}

TEST_CASE("multiplication examples") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto x = A->variable(0);
  CHECK(A->multiply(A->one(), x).coords == x.coords);
  CHECK(A->to_string(A->multiply(x, x)) == "-y^2");
  CHECK(A->multiply(x, x).coords == A->element("-y^2").coords);

  auto B = ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"});
  auto y = B->variable(1);
  auto y3 = B->multiply(B->multiply(y, y), y);
  CHECK(y3.is_zero());
  CHECK(B->multiply(y3, y).is_zero());
}

TEST_CASE("Hilbert function examples") {
  auto B = ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"});
  CHECK(B->dim(0) == 1);
  CHECK(B->dim(1) == 2);
  CHECK(B->dim(2) == 1);
  CHECK(B->dim(3) == 0);
  CHECK(B->top_degree(24) == 2);

  auto C = ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x^3+y^3+z^3"});
  CHECK(C->dim(0) == 1);
  CHECK(C->dim(3) == 9);
  CHECK(C->top_degree(24) == -1);
}

TEST_CASE("complete-intersection Hilbert series") {
  CHECK(hilbert_matches_complete_intersection(*ring(7, {"x", "y"}, {1, 1}, {"x^2", "y^2"}), 12));
  CHECK(hilbert_matches_complete_intersection(*ring(5, {"x", "y"}, {9, 2}, {"x^2+y^9"}), 40));
  CHECK(hilbert_matches_complete_intersection(*ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x^3+y^3+z^3"}), 12));
  // xy, x^2 is not a regular sequence.
  CHECK_FALSE(hilbert_matches_complete_intersection(*ring(7, {"x", "y"}, {1, 1}, {"x*y", "x^2"}), 8));
}

TEST_CASE("multiplication agrees with naive polynomial products") {
  std::mt19937_64 rng(3);
  std::vector<std::shared_ptr<QuotientRing>> rings{
      ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"}),
      ring(5, {"x", "y"}, {5, 2}, {"x^2+y^5"}),
      ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x^3+y^3+z^3"}),
      ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x*y", "x*z", "y*z", "x^2-y^2", "x^2-z^2"}),
  };
  for (const auto& A : rings) {
    const auto& f = A->field();
    for (int t = 0; t < 30; ++t) {
      int da = static_cast<int>(rng() % 6), db = static_cast<int>(rng() % 6);
      auto a = A->zero(da), b = A->zero(db);
      for (auto& c : a.coords) c = static_cast<std::uint32_t>(rng() % f.characteristic());
      for (auto& c : b.coords) c = static_cast<std::uint32_t>(rng() % f.characteristic());
      auto ab = A->multiply(a, b);
      CHECK(ab.coords == naive_product(*A, a, b).coords);
      CHECK(ab.coords == A->multiply(b, a).coords);
      // Reducing an already reduced element changes nothing.
      auto lifted = A->lift_to_ambient(ab.degree, ab.coords);
      CHECK(A->reduce_ambient(ab.degree, lifted) == ab.coords);
    }
  }
}

TEST_CASE("associativity on random elements") {
  std::mt19937_64 rng(5);
  auto A = ring(7, {"x", "y", "z"}, {1, 1, 1}, {"x^3+y^3+z^3"});
  for (int t = 0; t < 20; ++t) {
    RingElement e[3];
    for (auto& x : e) {
      x = A->zero(static_cast<int>(rng() % 4));
      for (auto& c : x.coords) c = static_cast<std::uint32_t>(rng() % 7);
    }
    CHECK(A->multiply(A->multiply(e[0], e[1]), e[2]).coords ==
          A->multiply(e[0], A->multiply(e[1], e[2])).coords);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(ring(7, {"x", "y"}, {1, 1}, {"x^2+y"}), InputError);
  CHECK_THROWS_AS(ring(7, {"x", "x"}, {1, 1}, {}), InputError);
  CHECK_THROWS_AS(ring(7, {"x", "y"}, {1, 0}, {}), InputError);
  CHECK_THROWS_AS(ring(7, {"x", "y"}, {1, 1}, {"x^2+q"}), InputError);
  CHECK_THROWS_AS(ring(7, {"x"}, {1}, {"3"}), InputError);
  auto A = ring(7, {"x", "y"}, {1, 1}, {});
  auto p = A->ambient().parse("3x^2*y - 2*x y^2 + 7x^3");
  CHECK(p.size() == 3);
  CHECK(p.at({2, 1}) == 3);
  CHECK(p.at({1, 2}) == -2);
  // The coefficient 7 vanishes in GF(7).
  auto e = A->element(p);
  CHECK(A->to_string(e) == "3*x^2*y - 2*x*y^2");
}

TEST_CASE("mixed-ring operands are rejected") {
  auto A = ring(7, {"x", "y"}, {1, 1}, {"x^2+y^2"});
  auto B = ring(7, {"x", "y"}, {1, 1}, {"x^2-y^2"});
  CHECK_THROWS_AS(A->multiply(A->variable(0), B->variable(0)), UsageError);
}
