#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "gridres/cayley_bacharach.hpp"

using namespace gridres;
using gridres::testing::Rng;

namespace {

Field Q = Field::rationals();

std::vector<FieldElement> ints(const Field& f, std::initializer_list<int> v) {
  std::vector<FieldElement> out;
  for (int a : v) out.push_back(f.from_int(a));
  return out;
}

Polynomial poly(const Field& f, std::size_t n, std::initializer_list<std::pair<Monomial, int>> terms) {
  Polynomial p(f, n);
  for (const auto& [m, c] : terms) p.add_term(m, f.from_int(c));
  return p;
}

Point pt(const Field& f, std::initializer_list<int> v) { return ints(f, v); }

SeparableSystem square3() { return SeparableSystem(GridSystem(Q, {ints(Q, {0, 1, 2}), ints(Q, {0, 1, 2})})); }

// Random grid with sizes in [1, kmax] per axis, at least one axis of size >= 2.
GridSystem random_grid(const Field& f, std::size_t n, int kmax, Rng& rng) {
  std::uniform_int_distribution<int> k(1, kmax);
  std::vector<std::vector<FieldElement>> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(gridres::testing::random_nodes(f, k(rng), rng));
  if (std::all_of(nodes.begin(), nodes.end(), [](const auto& x) { return x.size() == 1; })) {
    nodes[0] = gridres::testing::random_nodes(f, 2, rng);
  }
  return GridSystem(f, nodes);
}

}  // namespace

TEST_CASE("cb coefficients on the 3x3 grid") {
  auto rel = cb_coefficients(square3());
  CHECK(rel.points.size() == 9);
  CHECK(rel.coefficients[rel.index_of(pt(Q, {1, 1}))] == Q.one());
  CHECK(rel.coefficients[rel.index_of(pt(Q, {0, 0}))] == Q.parse("1/4"));
  CHECK(rel.degree_bound() == 3);
}

TEST_CASE("cb coefficients in one variable") {
  auto rel = cb_coefficients(SeparableSystem(GridSystem(Q, {ints(Q, {0, 1})})));
  CHECK(rel.coefficients[rel.index_of(pt(Q, {0}))] == Q.from_int(-1));
  CHECK(rel.coefficients[rel.index_of(pt(Q, {1}))] == Q.one());
}

TEST_CASE("repeated roots are rejected") {
  CHECK_THROWS_AS(SeparableSystem(GridSystem(Q, {ints(Q, {0, 0, 1})})), Error);
}

TEST_CASE("separable system polynomials") {
  auto sys = square3();
  CHECK(sys.univariate(0).to_string() == "x^3 - 3*x^2 + 2*x");
  CHECK(sys.embedded(1).to_string() == "y^3 - 3*y^2 + 2*y");
}

TEST_CASE("verify_cb examples") {
  auto rel = cb_coefficients(square3());
  auto r = verify_cb(poly(Q, 2, {{{1, 0}, 1}, {{0, 1}, 1}}), rel);
  CHECK(r.residual.is_zero());
  CHECK(r.within_bound());
  auto probe = verify_cb(poly(Q, 2, {{{3, 3}, 1}}), rel);
  CHECK(probe.residual == Q.from_int(9));
  CHECK_FALSE(probe.within_bound());
  CHECK(probe.consistent());
  CHECK(verify_cb(Polynomial::constant(Q, 2, Q.one()), rel).residual.is_zero());
}

TEST_CASE("forced value examples") {
  auto rel = cb_coefficients(square3());
  std::map<Point, FieldElement, PointLess> zeros, sums;
  for (const auto& p : rel.points) {
    if (p == pt(Q, {2, 2})) continue;
    zeros.emplace(p, Q.zero());
    sums.emplace(p, p[0] + p[1]);
  }
  CHECK(forced_value(zeros, rel, pt(Q, {2, 2})).is_zero());
  CHECK(forced_value(sums, rel, pt(Q, {2, 2})) == Q.from_int(4));

  auto rel1 = cb_coefficients(SeparableSystem(GridSystem(Q, {ints(Q, {0, 1})})));
  std::map<Point, FieldElement, PointLess> one{{pt(Q, {0}), Q.from_int(5)}};
  CHECK(forced_value(one, rel1, pt(Q, {1})) == Q.from_int(5));
}

TEST_CASE("forced value rejects bad point sets") {
  auto rel = cb_coefficients(square3());
  std::map<Point, FieldElement, PointLess> vals;
  for (const auto& p : rel.points) vals.emplace(p, Q.zero());
  CHECK_THROWS_AS(forced_value(vals, rel, pt(Q, {2, 2})), Error);  // target included
  vals.erase(pt(Q, {2, 2}));
  vals.erase(pt(Q, {0, 0}));
  CHECK_THROWS_AS(forced_value(vals, rel, pt(Q, {2, 2})), Error);  // missing
  vals.emplace(pt(Q, {0, 0}), Q.zero());
  vals.emplace(pt(Q, {7, 7}), Q.zero());
  CHECK_THROWS_AS(forced_value(vals, rel, pt(Q, {2, 2})), Error);  // extra
  CHECK_THROWS_AS(forced_value(vals, rel, pt(Q, {5, 5})), Error);  // off grid
}

TEST_CASE("property: residual vanishes below the bound, coefficients nonzero") {
  Rng rng(11);
  for (const Field& f : {Q, Field::prime(101), Field::prime(10007)}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t n = 2 + trial % 2;
      GridSystem grid = random_grid(f, n, 4, rng);
      auto rel = cb_coefficients(SeparableSystem(grid));
      for (const auto& a : rel.coefficients) CHECK_FALSE(a.is_zero());
      std::int64_t bound = rel.degree_bound();
      if (bound < 0) continue;
      auto g = gridres::testing::random_poly_total_degree(f, n, static_cast<int>(bound), 8, rng);
      auto r = verify_cb(g, rel);
      CHECK(r.residual.is_zero());

      // forced value recovers the dropped point
      std::size_t t = trial % rel.points.size();
      std::map<Point, FieldElement, PointLess> vals;
      for (std::size_t i = 0; i < rel.points.size(); ++i) {
        if (i != t) vals.emplace(rel.points[i], g.evaluate(rel.points[i]));
      }
      CHECK(forced_value(vals, rel, rel.points[t]) == g.evaluate(rel.points[t]));
    }
  }
}

TEST_CASE("property: forced value is linear") {
  Rng rng(5);
  Field f = Field::prime(97);
  auto rel = cb_coefficients(SeparableSystem(GridSystem(f, {ints(f, {1, 3, 5}), ints(f, {2, 4})})));
  const Point target = rel.points.back();
  for (int trial = 0; trial < 20; ++trial) {
    std::map<Point, FieldElement, PointLess> a, b, comb;
    FieldElement s = gridres::testing::random_element(f, rng);
    for (const auto& p : rel.points) {
      if (p == target) continue;
      auto va = gridres::testing::random_element(f, rng), vb = gridres::testing::random_element(f, rng);
      a.emplace(p, va);
      b.emplace(p, vb);
      comb.emplace(p, va + s * vb);
    }
    CHECK(forced_value(comb, rel, target) == forced_value(a, rel, target) + s * forced_value(b, rel, target));
  }
}

TEST_CASE("cover size examples") {
  GridSystem g32(Q, {ints(Q, {0, 1, 2}), ints(Q, {0, 1})});
  auto c = min_cover_size(g32, pt(Q, {0, 0}));
  CHECK(c.min_lines == 3);
  CHECK(c.bound == 3);
  CHECK(c.holds());
  CHECK(c.cover.lines.size() == 3);
  for (const auto& l : c.cover.lines) CHECK_FALSE(l.contains(ProjPoint::affine(Q.zero(), Q.zero())));

  CHECK(min_cover_size(GridSystem(Q, {ints(Q, {0, 1}), ints(Q, {0, 1})}), pt(Q, {0, 0})).min_lines == 2);
  CHECK(min_cover_size(GridSystem(Q, {ints(Q, {0}), ints(Q, {0})}), pt(Q, {0, 0})).min_lines == 0);
  CHECK_THROWS_AS(min_cover_size(g32, pt(Q, {5, 5})), Error);
  CHECK_THROWS_AS(min_cover_size(GridSystem(Q, {ints(Q, {0, 1})}), pt(Q, {0})), Error);
}

TEST_CASE("property: cover bound over small grids") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    GridSystem grid = random_grid(Q, 2, 3, rng);
    for (const auto& x : grid.nodes(0)) {
      for (const auto& y : grid.nodes(1)) {
        auto c = min_cover_size(grid, Point{x, y});
        CHECK(c.holds());
        // every grid point except the excluded one lies on a chosen line
        for (const auto& a : grid.nodes(0)) {
          for (const auto& b : grid.nodes(1)) {
            if (a == x && b == y) continue;
            auto p = ProjPoint::affine(a, b);
            CHECK(std::any_of(c.cover.lines.begin(), c.cover.lines.end(), [&](const ProjLine& l) { return l.contains(p); }));
          }
        }
        for (const auto& l : c.cover.lines) {
          CHECK_FALSE(l.contains(ProjPoint::affine(x, y)));
          CHECK_FALSE(l.is_at_infinity());
        }
      }
    }
  }
}

TEST_CASE("cover budget") {
  GridSystem g(Q, {ints(Q, {0, 1, 2, 3}), ints(Q, {0, 1, 2, 3})});
  CHECK_THROWS_AS(min_cover_size(g, pt(Q, {0, 0}), 3), Error);
}

TEST_CASE("hypersurface worked example over F_5") {
  Field f5 = Field::prime(5);
  auto x = Polynomial::variable(f5, 2, 0), y = Polynomial::variable(f5, 2, 1);
  auto one = Polynomial::constant(f5, 2, f5.one());
  HypersurfaceSystem sys({x * x - one, y * y - x});
  CHECK(sys.expected_solutions() == 4);
  std::vector<Point> want{pt(f5, {1, 1}), pt(f5, {1, 4}), pt(f5, {4, 2}), pt(f5, {4, 3})};
  CHECK(sys.solutions() == want);
  auto v = verify_hypersurface_theorem(sys, x * y);
  CHECK(v.status == HypersurfaceVerdict::Status::witness_found);
  REQUIRE(v.witness);
  CHECK(*v.witness == pt(f5, {1, 1}));
  CHECK(v.values == ints(f5, {1, 4, 3, 2}));
  CHECK(v.degree_bound == 2);
}

TEST_CASE("hypersurface shape and field checks") {
  Field f5 = Field::prime(5);
  auto x = Polynomial::variable(f5, 2, 0), y = Polynomial::variable(f5, 2, 1);
  auto one = Polynomial::constant(f5, 2, f5.one());
  CHECK_THROWS_AS(HypersurfaceSystem({x * y - one, y * y - x}), Error);
  CHECK_THROWS_AS(HypersurfaceSystem({x * x + y * y, y * y - x}), Error);
  CHECK_THROWS_AS(HypersurfaceSystem({(x * x).scaled(f5.from_int(2)), y * y}), Error);
  auto qx = Polynomial::variable(Q, 1, 0);
  CHECK_THROWS_AS(HypersurfaceSystem({qx}), Error);
  Field big = Field::prime(10007);
  auto bx = Polynomial::variable(big, 2, 0), by = Polynomial::variable(big, 2, 1);
  CHECK_THROWS_AS(HypersurfaceSystem({bx, by}), Error);
}

TEST_CASE("hypersurface hypothesis unmet is reported") {
  Field f5 = Field::prime(5);
  auto x = Polynomial::variable(f5, 1, 0);
  auto two = Polynomial::constant(f5, 1, f5.from_int(2));
  HypersurfaceSystem sys({x * x - two});  // 2 is not a square mod 5
  auto v = verify_hypersurface_theorem(sys, x);
  CHECK(v.status == HypersurfaceVerdict::Status::hypothesis_unmet);
  CHECK(v.solutions.empty());
}

TEST_CASE("property: separable systems always give a witness") {
  Rng rng(17);
  Field f7 = Field::prime(7);
  for (int trial = 0; trial < 40; ++trial) {
    GridSystem grid = random_grid(f7, 2, 3, rng);
    SeparableSystem sep(grid);
    HypersurfaceSystem sys({sep.embedded(0), sep.embedded(1)});
    CHECK(sys.solutions().size() == grid.num_points());
    auto target = grid.target_exponent();
    auto f = gridres::testing::random_poly(f7, {target[0], target[1]}, 4, rng);
    f.add_term(target, f7.one());
    auto v = verify_hypersurface_theorem(sys, f);
    if (f.coefficient(target).is_zero()) continue;
    CHECK(v.status == HypersurfaceVerdict::Status::witness_found);
  }
}

TEST_CASE("property: randomized shape-conforming systems have no counterexample") {
  Rng rng(23);
  int applicable = 0;
  for (const Field& f : {Field::prime(5), Field::prime(7)}) {
    for (int trial = 0; trial < 150; ++trial) {
      std::size_t n = 2;
      std::vector<Polynomial> g;
      std::uniform_int_distribution<int> kd(1, 3);
      for (std::size_t i = 0; i < n; ++i) {
        int k = kd(rng);
        Monomial lead(n, 0);
        lead[i] = k;
        auto gi = Polynomial::term(f, lead, f.one());
        if (k > 1) gi = gi + gridres::testing::random_poly_total_degree(f, n, k - 1, 4, rng);
        else gi = gi + Polynomial::constant(f, n, gridres::testing::random_element(f, rng));
        g.push_back(gi);
      }
      HypersurfaceSystem sys(g);
      if (sys.solutions().size() != sys.expected_solutions()) continue;
      std::int64_t bound = 0;
      for (auto k : sys.degrees()) bound += k - 1;
      auto h = gridres::testing::random_poly_total_degree(f, n, static_cast<int>(bound), 5, rng);
      Monomial target;
      for (auto k : sys.degrees()) target.push_back(static_cast<Exponent>(k - 1));
      h.add_term(target, f.one());
      auto v = verify_hypersurface_theorem(sys, h);
      if (v.target_coefficient.is_zero()) continue;
      ++applicable;
      CHECK(v.status == HypersurfaceVerdict::Status::witness_found);
    }
  }
  CHECK(applicable > 20);
}
