#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "gridres/poly.hpp"

using namespace gridres;

namespace {

Field Q = Field::rationals();

Polynomial x2() { return Polynomial::variable(Q, 2, 0); }
Polynomial y2() { return Polynomial::variable(Q, 2, 1); }
Polynomial c2(int v) { return Polynomial::constant(Q, 2, Q.from_int(v)); }

// 3x^2y + xy - 2
Polynomial sample() { return c2(3) * x2() * x2() * y2() + x2() * y2() - c2(2); }

}  // namespace

TEST_CASE("ring operations") {
  auto x = x2(), y = y2();
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(sample() + Polynomial(Q, 2) == sample());
  Field f2 = Field::prime(2);
  auto x1 = Polynomial::variable(f2, 1, 0);
  auto one = Polynomial::constant(f2, 1, f2.one());
  CHECK((x1 + one) * (x1 + one) == x1 * x1 + one);
  CHECK((x - x).is_zero());
  CHECK_THROWS_AS(x + Polynomial::variable(Q, 3, 0), Error);
  CHECK_THROWS_AS(x + Polynomial::variable(Field::prime(5), 2, 0), Error);
}

TEST_CASE("evaluation") {
  auto f = x2() * x2() * y2();
  Point p{Q.from_int(2), Q.from_int(3)};
  CHECK(poly_eval(f, p) == Q.from_int(12));
  Point q{Q.from_int(2), Q.from_int(1)};
  CHECK(poly_eval(sample(), q) == Q.from_int(12));

  auto inv_x = Polynomial::term(Q, {-1}, Q.one());
  Point zero{Q.zero()};
  try {
    (void)poly_eval(inv_x, zero);
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::division_by_zero);
  }
  Point two{Q.from_int(2)};
  CHECK(poly_eval(inv_x, two) == Q.parse("1/2"));
  CHECK_THROWS(poly_eval(f, two));
}

TEST_CASE("coefficient_of and degree") {
  auto f = sample();
  CHECK(coefficient_of(f, {2, 1}) == Q.from_int(3));
  CHECK(coefficient_of(f, {5, 5}) == Q.zero());
  auto g = x2() * x2() * x2() - y2() * y2() * y2();
  CHECK(coefficient_of(g, {3, 0}) == Q.one());
  CHECK(total_degree(f) == 3);
  CHECK(total_degree(Polynomial(Q, 2)) == -1);
  CHECK_THROWS(total_degree(Polynomial::term(Q, {-1}, Q.one())));
}

TEST_CASE("partial derivatives") {
  auto x = x2(), y = y2();
  CHECK(partial_derivative(x * x * y, 0) == c2(2) * x * y);
  CHECK(partial_derivative(x * x, 1).is_zero());
  Field f2 = Field::prime(2);
  auto t = Polynomial::variable(f2, 1, 0);
  CHECK(partial_derivative(t * t, 0).is_zero());
  CHECK_THROWS(partial_derivative(x, 2));
  // Laurent terms differentiate formally
  auto inv = Polynomial::term(Q, {-1}, Q.one());
  CHECK(partial_derivative(inv, 0) == Polynomial::term(Q, {-2}, Q.from_int(-1)));
}

TEST_CASE("vanishing polynomial from nodes") {
  std::vector<FieldElement> nodes{Q.zero(), Q.one()};
  auto x = Polynomial::variable(Q, 1, 0);
  CHECK(vanishing_poly_from_nodes(Q, nodes) == x * x - x);

  Field f7 = Field::prime(7);
  std::vector<FieldElement> cube{f7.from_int(1), f7.from_int(2), f7.from_int(4)};
  auto t = Polynomial::variable(f7, 1, 0);
  CHECK(vanishing_poly_from_nodes(f7, cube) == t * t * t - Polynomial::constant(f7, 1, f7.one()));

  std::vector<FieldElement> dup{Q.zero(), Q.zero()};
  try {
    (void)vanishing_poly_from_nodes(Q, dup);
    FAIL("expected duplicate rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::duplicate_node);
  }
}

TEST_CASE("vanishing polynomial vanishes exactly on its nodes (exhaustive, p <= 31)") {
  testing::Rng rng(3);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    Field f = Field::prime(p);
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<std::size_t> k(1, p);
      auto nodes = testing::random_nodes(f, k(rng), rng);
      auto phi = vanishing_poly_from_nodes(f, nodes);
      REQUIRE(phi.total_degree() == static_cast<std::int64_t>(nodes.size()));
      REQUIRE(phi.coefficient({static_cast<Exponent>(nodes.size())}).is_one());
      for (std::uint64_t a = 0; a < p; ++a) {
        Point pt{f.from_int(static_cast<std::int64_t>(a))};
        bool is_node = std::find(nodes.begin(), nodes.end(), pt[0]) != nodes.end();
        REQUIRE(phi.evaluate(pt).is_zero() == is_node);
      }
    }
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  testing::Rng rng(5);
  for (Field f : {Field::prime(101), Field::rationals()}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t n = 1 + trial % 4;
      std::vector<int> bounds(n, 3);
      auto a = testing::random_poly(f, bounds, 5, rng);
      auto b = testing::random_poly(f, bounds, 5, rng);
      auto pt = testing::random_point(f, n, rng);
      REQUIRE((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
      REQUIRE((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
      REQUIRE((a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt));
    }
  }
}

TEST_CASE("term map round trip and canonical storage") {
  testing::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<Monomial, FieldElement>> terms;
    std::map<Monomial, FieldElement> expected;
    for (int t = 0; t < 6; ++t) {
      Monomial m{static_cast<Exponent>(rng() % 4), static_cast<Exponent>(rng() % 4) - 1};
      if (expected.count(m)) continue;
      auto c = testing::random_nonzero(Q, rng);
      terms.emplace_back(m, c);
      expected[m] = c;
    }
    auto f = Polynomial::from_terms(Q, 2, terms);
    for (const auto& [m, c] : expected) REQUIRE(coefficient_of(f, m) == c);
    REQUIRE(f.size() == expected.size());
    // insertion order does not matter
    std::reverse(terms.begin(), terms.end());
    REQUIRE(Polynomial::from_terms(Q, 2, terms) == f);
  }
  // cancellation leaves no zero entry behind
  auto g = x2() + c2(1);
  g -= c2(1);
  CHECK(g.size() == 1);
  CHECK(g == x2());
}

TEST_CASE("grlex ordering and printing") {
  CHECK(sample().to_string() == "3*x^2*y + x*y - 2");
  CHECK(Polynomial::term(Q, {-1}, Q.one()).to_string() == "x^-1");
  CHECK(Polynomial(Q, 2).to_string() == "0");
  CHECK((c2(1) - x2()).to_string() == "-x + 1");
  Field f7 = Field::prime(7);
  CHECK(Polynomial::constant(f7, 1, f7.from_int(-1)).to_string() == "6");
  CHECK(Polynomial::term(Q, {1, 0, 0, 2}, Q.parse("1/2")).to_string() == "1/2*z1*z4^2");
}

TEST_CASE("translation preserves values") {
  testing::Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = testing::random_poly(Q, {3, 2}, 5, rng);
    auto s = testing::random_point(Q, 2, rng);
    auto g = f.translated(s);
    auto pt = testing::random_point(Q, 2, rng);
    Point shifted{pt[0] + s[0], pt[1] + s[1]};
    REQUIRE(g.evaluate(pt) == f.evaluate(shifted));
  }
}

TEST_CASE("exponent overflow is detected") {
  auto big = Polynomial::term(Q, {INT32_MAX}, Q.one());
  auto x = Polynomial::variable(Q, 1, 0);
  CHECK_THROWS(big * x);
}
