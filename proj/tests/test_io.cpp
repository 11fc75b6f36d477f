#include "doctest.h"
#include "helpers.hpp"
#include "mcm/io.hpp"
#include "mcm/verify.hpp"

using namespace mcm;
using namespace testing_helpers;

TEST_CASE("ring JSON round trip") {
  auto j = parse_json(R"({"char": 7, "vars": ["x","y"], "weights": [3,2], "relations": ["x^2+y^3"]})", "t");
  auto A = ring_from_json(j);
  CHECK(A->field().characteristic() == 7);
  CHECK(A->weights() == std::vector<int>{3, 2});
  auto back = ring_to_json(*A);
  CHECK(back["relations"][0] == "x^2 + y^3");
  auto B = ring_from_json(back);
  for (int d = 0; d <= 12; ++d) CHECK(A->dim(d) == B->dim(d));
  CHECK(ring_from_json(j, 5)->field().characteristic() == 5);
  // Weights default to 1.
  auto C = ring_from_json(parse_json(R"({"char": 5, "vars": ["x","y"]})", "t"));
  CHECK(C->dim(3) == 4);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_WITH_AS(parse_json("{\n  \"char\": 7,\n  oops\n}", "r.json"), doctest::Contains("r.json:3:3"),
                       InputError);
  CHECK_THROWS_AS(ring_from_json(parse_json(R"({"vars": ["x"]})", "t")), InputError);
  CHECK_THROWS_AS(ring_from_json(parse_json(R"({"char": 6, "vars": ["x"]})", "t")), InputError);
  CHECK_THROWS_AS(ring_from_json(parse_json(R"({"char": 7, "vars": ["x"], "weights": [1, 2]})", "t")),
                  InputError);
  CHECK_THROWS_AS(ring_from_json(parse_json(R"({"char": 7, "vars": ["x"], "relations": ["x^"]})", "t")),
                  InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("module JSON") {
  auto j = parse_json(R"({"ring": {"char": 7, "vars": ["x","y"], "weights": [3,2], "relations": ["x^2+y^3"]},
                          "gen_degs": [3, 2], "rel_degs": [5, 6],
                          "presentation": [["y", "x"], ["-x", "y^2"]]})",
                      "t");
  auto m = module_from_json(j, ".");
  CHECK(m.num_generators() == 2);
  CHECK(m.dim(2) == 1);
  CHECK(m.dim(3) == 1);
  auto again = module_over(m.ring(), module_to_json(m));
  CHECK(is_isomorphic(m, again, small()));
  // Entry degrees must match the declared degrees.
  j["rel_degs"] = {5, 7};
  CHECK_THROWS_AS(module_from_json(j, "."), InputError);
  j["rel_degs"] = {5};
  CHECK_THROWS_AS(module_from_json(j, "."), InputError);
  // Zero entries take the degree of their slot.
  auto z = parse_json(R"({"ring": {"char": 7, "vars": ["x","y"], "relations": []},
                          "gen_degs": [0, 0], "rel_degs": [1], "presentation": [["x"], ["0"]]})",
                      "t");
  auto mz = module_from_json(z, ".");
  CHECK(mz.dim(0) == 2);
  CHECK(mz.dim(1) == 3);
}

TEST_CASE("matrix factorization JSON") {
  auto j = parse_json(R"({"ring": {"char": 7, "vars": ["x","y"], "weights": [3,2], "relations": []},
                          "f": "x^2+y^3", "phi": [["x","y"],["-y^2","x"]], "psi": [["x","-y"],["y^2","x"]]})",
                      "t");
  auto mf = mf_from_json(j, ".");
  CHECK(validate(mf));
  auto round = mf_from_json(mf_to_json(mf), ".");
  CHECK(validate(round));
  CHECK(mf_to_json(round) == mf_to_json(mf));
  j["ring"]["relations"] = {"x^2"};
  CHECK_THROWS_AS(mf_from_json(j, "."), InputError);
  j["ring"]["relations"] = {"x^2+y^3"};
  CHECK_NOTHROW(mf_from_json(j, "."));
}

TEST_CASE("catalog references") {
  auto c = catalog_from_ref("ade:A3:dim1");
  CHECK(c.index == 3);
  CHECK(c.dim == 1);
  CHECK(c.hs.poly->field().characteristic() == 5);
  CHECK(catalog_from_ref("ade:A4:dim1").hs.poly->field().characteristic() == 7);
  CHECK(catalog_from_ref("ade:A5:dim1:p13").hs.poly->field().characteristic() == 13);
  CHECK(catalog_from_ref("ade:A2:dim1", 11).hs.poly->field().characteristic() == 11);
  for (const char* bad : {"ade:A3", "A3:dim1", "ade:A:dim1", "ade:A3:dimx", "ade:A3:dim1:13", "ade:A3x:dim1"})
    CHECK_THROWS_AS(catalog_from_ref(bad), InputError);
  CHECK_THROWS_AS(catalog_from_ref("ade:A3:dim1:p7"), InputError);
}

TEST_CASE("verification suites") {
  auto cat = catalog_from_ref("ade:A2:dim1");
  Bounds b;
  b.degree_cap = 12 * cat.hs.degree;
  auto r = run_suite("all", cat, b);
  CHECK(r.size() >= 10);
  CHECK(overall_status(r) == "pass");
  CHECK_THROWS_AS(run_suite("nope", cat, b), InputError);
  CHECK(overall_status({{"a", "pass", ""}, {"b", "inconclusive", ""}}) == "inconclusive");
  CHECK(overall_status({{"a", "fail", ""}, {"b", "inconclusive", ""}}) == "fail");
  // A cap too small for the period search is reported, not guessed.
  Bounds shallow;
  shallow.degree_cap = cat.recommended_degree_cap;
  auto p = run_suite("periodicity", cat, shallow);
  CHECK(p[0].status != "fail");
}
