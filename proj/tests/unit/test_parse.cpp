#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "gridres/parse.hpp"

using namespace gridres;
using gridres::testing::Rng;

namespace {
Field Q = Field::rationals();
}

TEST_CASE("parse examples") {
  auto f = parse_poly("3*x^2*y + x*y - 2", 2, Q);
  CHECK(f.terms().size() == 3);
  CHECK(f.coefficient({2, 1}) == Q.from_int(3));
  CHECK(f.coefficient({0, 0}) == Q.from_int(-2));
  CHECK(f.to_string() == "3*x^2*y + x*y - 2");

  auto l = parse_poly("z1^-1", 1, Q);
  CHECK(l.is_laurent());
  CHECK(l.coefficient({-1}) == Q.one());

  try {
    parse_poly("x**", 2, Q);
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
}

TEST_CASE("parse details") {
  CHECK(parse_poly("-x + 1", 1, Q) == parse_poly("1 - z", 1, Q));
  CHECK(parse_poly("(x+y)^2", 2, Q) == parse_poly("x^2 + 2*x*y + y^2", 2, Q));
  CHECK(parse_poly("1/2*z1*z4^2", 4, Q).coefficient({1, 0, 0, 2}) == Q.parse("1/2"));
  CHECK(parse_poly("x/3", 1, Q).coefficient({1}) == Q.parse("1/3"));
  CHECK(parse_poly("(2*x*y)^-2", 2, Q).coefficient({-2, -2}) == Q.parse("1/4"));
  CHECK(parse_poly("z1 + z2 + z3", 3, Q) == parse_poly("x + y + z", 3, Q));
  Field f7 = Field::prime(7);
  CHECK(parse_poly("10*x", 1, f7).coefficient({1}) == f7.from_int(3));
  CHECK(parse_poly("x/3", 1, f7).coefficient({1}) == f7.from_int(5));
  CHECK(parse_poly("123456789012345678901234567890", 1, Q).coefficient({0}).to_string() ==
        "123456789012345678901234567890");
  std::vector<std::string> names{"a", "b"};
  CHECK(parse_poly("a*b", 2, Q, names).coefficient({1, 1}) == Q.one());

  CHECK_THROWS_AS(parse_poly("w", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("x/y", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("x/0", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("(x+1)^-1", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("x^99999999999", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("(x", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("x y", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("z", 2, Q), ParseError);
  CHECK_THROWS_AS(parse_poly("((x^4096)^4096)^4096", 1, Q), Error);
}

TEST_CASE("property: print then parse round trips") {
  Rng rng(19);
  for (const Field& f : {Q, Field::prime(101)}) {
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t n = 1 + trial % 5;
      auto p = gridres::testing::random_poly_total_degree(f, n, 4, 6, rng);
      if (trial % 3 == 0) p.add_term(Monomial(n, -1), gridres::testing::random_nonzero(f, rng));
      CHECK(parse_poly(p.to_string(), n, f) == p);
    }
  }
}

TEST_CASE("property: parsed evaluation agrees with arithmetic") {
  Rng rng(23);
  Field f = Field::prime(10007);
  for (int trial = 0; trial < 100; ++trial) {
    auto pt = gridres::testing::random_point(f, 2, rng);
    auto a = pt[0], b = pt[1];
    auto p = parse_poly("(x - 2*y)^3 * (x + 5) - 7*y", 2, f);
    CHECK(p.evaluate(pt) == (a - f.from_int(2) * b).pow(3) * (a + f.from_int(5)) - f.from_int(7) * b);
  }
}
