#include <random>

#include "doctest.h"
#include "mcm/linalg.hpp"

using namespace mcm;

namespace {

Matrix random_matrix(const PrimeField& f, std::size_t r, std::size_t c, std::mt19937_64& rng,
                     int zero_bias = 0) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f.characteristic() - 1 + zero_bias);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      auto x = dist(rng);
      m(i, j) = x >= f.characteristic() ? 0 : x;
    }
  return m;
}

}  // namespace

TEST_CASE("rref of identity, rank-one and zero matrices over GF(5)") {
  PrimeField f(5);
  auto e = rref(Matrix::identity(f, 3));
  CHECK(e.rank() == 3);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1, 2});

  auto r1 = rref(Matrix::from_ints(f, {{1, 2}, {2, 4}}));
  CHECK(r1.rank() == 1);
  CHECK(r1.pivots == std::vector<std::size_t>{0});

  auto z = rref(Matrix(f, 2, 3));
  CHECK(z.rank() == 0);
  CHECK(z.pivots.empty());
}

TEST_CASE("kernel basis examples") {
  PrimeField f(5);
  CHECK(kernel_basis(Matrix::identity(f, 2)).cols() == 0);

  auto m = Matrix::from_ints(f, {{1, 2}, {2, 4}});
  auto k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  // Proportional to (3, 1).
  auto inv = f.inv(k(1, 0));
  CHECK(f.mul(k(0, 0), inv) == 3);
  CHECK((m * k).is_zero());

  auto z = kernel_basis(Matrix(f, 1, 2));
  CHECK(z.cols() == 2);
  CHECK(rank(z) == 2);
}

TEST_CASE("solve examples") {
  PrimeField f(5);
  auto rhs = Matrix::from_ints(f, {{1, 4}, {3, 0}});
  auto x = solve(Matrix::identity(f, 2), rhs);
  REQUIRE(x);
  CHECK(*x == rhs);

  auto y = solve(Matrix::from_ints(f, {{2}}), Matrix::from_ints(f, {{1}}));
  REQUIRE(y);
  CHECK((*y)(0, 0) == 3);

  CHECK_FALSE(solve(Matrix::from_ints(f, {{0}}), Matrix::from_ints(f, {{1}})));
  CHECK_THROWS_AS(solve(Matrix::identity(f, 2), Matrix(f, 3, 1)), UsageError);
}

TEST_CASE("rank equals rank of the transpose and rank-nullity on random matrices") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      auto m = random_matrix(f, r, c, rng, static_cast<int>(p));
      auto rk = rank(m);
      CHECK(rk == rank(transpose(m)));
      auto k = kernel_basis(m);
      CHECK(c == rk + k.cols());
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
    }
  }
}

TEST_CASE("solve then multiply reproduces the right-hand side") {
  std::mt19937_64 rng(11);
  PrimeField f(7);
  for (int t = 0; t < 50; ++t) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(f, r, c, rng, 5);
    auto x0 = random_matrix(f, c, 2, rng);
    auto b = m * x0;
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m * *x == b);
  }
}

TEST_CASE("rational arithmetic is exact") {
  RationalField q;
  auto m = QMatrix::from_ints(q, {{1, 2}, {3, 4}});
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == QMatrix::identity(q, 2));
  CHECK((*inv)(0, 0) == RationalField::Element(-2));
  CHECK((*inv)(1, 0) == RationalField::Element(3) / 2);
  auto sing = QMatrix::from_ints(q, {{1, 2}, {2, 4}});
  CHECK(rank(sing) == 1);
  auto k = kernel_basis(sing);
  CHECK((sing * k).is_zero());
}

TEST_CASE("echelon basis gives canonical representatives") {
  PrimeField f(7);
  EchelonBasis<PrimeField> e(f, 3);
  CHECK(e.insert({1, 2, 3}));
  CHECK(e.insert({0, 1, 1}));
  CHECK_FALSE(e.insert({1, 3, 4}));
  Vec a{5, 5, 5}, b{5 + 1, 5 + 2, 5 + 3};
  for (auto& x : b) x %= 7;
  e.reduce(a);
  e.reduce(b);
  CHECK(a == b);
}

TEST_CASE("invalid characteristic is rejected") {
  CHECK_THROWS_AS(PrimeField(4), InputError);
  CHECK_THROWS_AS(PrimeField(1), InputError);
}
