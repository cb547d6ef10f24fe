#include "gridres/lines.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace gridres {

namespace {

using Bits = boost::dynamic_bitset<>;

void require_distinct(const std::vector<ProjLine>& lines, const char* family) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (lines[i] == lines[j]) {
        throw Error(ErrorCode::duplicate_node, std::string(family) + " line " + lines[i].to_string() + " repeats");
      }
    }
  }
}

Point coords(const ProjPoint& p) { return {p[0], p[1], p[2]}; }

bool contains_line(const std::vector<ProjLine>& lines, const ProjLine& l) {
  return std::find(lines.begin(), lines.end(), l) != lines.end();
}

// Probe points for fixing a scalar: all of PG(2,p), or small ones over Q.
std::vector<ProjPoint> probe_points(const Field& f) {
  if (f.is_prime()) return all_points(f);
  std::vector<ProjPoint> out;
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) out.push_back(ProjPoint::affine(f.from_int(a), f.from_int(b)));
  }
  for (int a = -3; a <= 3; ++a) out.emplace_back(f.one(), f.from_int(a), f.zero());
  return out;
}

// Kernel vector of the 3 coefficient columns, if the kernel is nonzero.
std::optional<std::array<FieldElement, 3>> dependence_kernel(const Field& field, const Polynomial& r,
                                                              const Polynomial& b, const Polynomial& g) {
  std::set<Monomial> support;
  for (const auto* p : {&r, &b, &g}) {
    for (const auto& [m, c] : p->terms()) support.insert(m);
  }
  // rows: monomials; columns: R, B, -G
  std::vector<std::array<FieldElement, 3>> rows;
  for (const auto& m : support) rows.push_back({r.coefficient(m), b.coefficient(m), -g.coefficient(m)});
  std::vector<int> pivot_of_col(3, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < 3 && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    FieldElement inv = rows[rank][c].inverse();
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c].is_zero()) continue;
      FieldElement f = rows[i][c];
      for (std::size_t j = 0; j < 3; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivot_of_col[c] = static_cast<int>(rank++);
  }
  for (std::size_t free = 0; free < 3; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::array<FieldElement, 3> k{field.zero(), field.zero(), field.zero()};
    k[free] = field.one();
    for (std::size_t c = 0; c < 3; ++c) {
      if (pivot_of_col[c] >= 0) k[c] = -rows[pivot_of_col[c]][free];
    }
    return k;
  }
  return std::nullopt;
}

bool is_subgroup(const std::vector<FieldElement>& s) {
  std::set<FieldElement, CanonicalLess> set(s.begin(), s.end());
  for (const auto& a : s) {
    if (a.is_zero()) return false;
    for (const auto& b : s) {
      if (!set.count(a * b)) return false;
    }
  }
  return true;
}

// Shift to mass center zero, then divide by the smallest nonzero element.
std::vector<FieldElement> center_and_scale(std::vector<FieldElement> s) {
  const Field& f = s.front().field();
  FieldElement mean = f.zero();
  for (const auto& x : s) mean += x;
  mean /= f.from_int(static_cast<std::int64_t>(s.size()));
  for (auto& x : s) x -= mean;
  std::sort(s.begin(), s.end(), CanonicalLess{});
  auto it = std::find_if(s.begin(), s.end(), [](const FieldElement& x) { return !x.is_zero(); });
  if (it == s.end()) throw Error(ErrorCode::precondition, "lines of a family coincide after centering");
  FieldElement scale = *it;
  for (auto& x : s) x /= scale;
  std::sort(s.begin(), s.end(), CanonicalLess{});
  return s;
}

std::string join_problems(const std::vector<std::string>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : "; ") + p;
  return s;
}

}  // namespace

std::vector<GridPoint> grid_intersections(const std::vector<ProjLine>& red, const std::vector<ProjLine>& blue) {
  if (red.empty() || blue.empty()) throw Error(ErrorCode::invalid_input, "red and blue families must be nonempty");
  require_distinct(red, "red");
  require_distinct(blue, "blue");
  for (const auto& l : blue) {
    if (!(l.field() == red.front().field())) throw Error(ErrorCode::field_mismatch, "line families over different fields");
    if (contains_line(red, l)) throw Error(ErrorCode::invalid_input, "line " + l.to_string() + " is both red and blue");
  }
  std::vector<GridPoint> out;
  std::map<ProjPoint, std::pair<std::size_t, std::size_t>, ProjPointLess> seen;
  for (std::size_t i = 0; i < red.size(); ++i) {
    for (std::size_t j = 0; j < blue.size(); ++j) {
      ProjPoint p = meet(red[i], blue[j]);
      auto [it, fresh] = seen.emplace(p, std::make_pair(i, j));
      if (!fresh) {
        throw Error(ErrorCode::invalid_input,
                    "red " + std::to_string(i + 1) + " and blue " + std::to_string(j + 1) + " meet at " +
                        p.to_string() + ", as do red " + std::to_string(it->second.first + 1) + " and blue " +
                        std::to_string(it->second.second + 1) + " (not transversal)");
      }
      out.push_back({p, i, j});
    }
  }
  return out;
}

std::optional<ProjPoint> concurrency_point(const std::vector<ProjLine>& lines) {
  if (lines.size() < 2) throw Error(ErrorCode::invalid_input, "concurrency needs at least two lines");
  auto other = std::find_if(lines.begin(), lines.end(), [&](const ProjLine& l) { return !(l == lines.front()); });
  if (other == lines.end()) throw Error(ErrorCode::invalid_input, "concurrency needs two distinct lines");
  ProjPoint p = meet(lines.front(), *other);
  for (const auto& l : lines) {
    if (!l.contains(p)) return std::nullopt;
  }
  return p;
}

GreenCoverCheck validate_green_cover(const LineConfiguration& config) {
  GreenCoverCheck out;
  out.grid = grid_intersections(config.red, config.blue);
  const std::size_t n = config.red.size();
  if (config.blue.size() != n || config.green.size() != n) {
    out.problems.push_back("expected " + std::to_string(n) + " lines of each color, got " +
                           std::to_string(config.red.size()) + " red, " + std::to_string(config.blue.size()) +
                           " blue, " + std::to_string(config.green.size()) + " green");
  }
  for (std::size_t i = 0; i < config.green.size(); ++i) {
    const ProjLine& g = config.green[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (config.green[j] == g) out.problems.push_back("green line " + g.to_string() + " repeats");
    }
    if (contains_line(config.red, g)) out.problems.push_back("green line " + g.to_string() + " is also red");
    if (contains_line(config.blue, g)) out.problems.push_back("green line " + g.to_string() + " is also blue");
  }
  std::vector<std::size_t> hits(out.grid.size(), 0);
  for (const auto& g : config.green) {
    std::vector<std::size_t> on;
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
      if (g.contains(out.grid[k].point)) {
        on.push_back(k);
        ++hits[k];
      }
    }
    out.points_on.push_back(std::move(on));
  }
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    if (hits[k] == 0) out.problems.push_back("grid point " + out.grid[k].point.to_string() + " is not covered");
  }
  out.partition = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; });
  out.valid = out.problems.empty();
  return out;
}

std::vector<std::vector<ProjLine>> search_green_covers(const std::vector<ProjLine>& red,
                                                       const std::vector<ProjLine>& blue,
                                                       const GreenSearchOptions& options) {
  auto grid = grid_intersections(red, blue);
  const Field& field = red.front().field();
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "green cover search needs a prime field");
  const std::size_t n = red.size();
  if (blue.size() != n) throw Error(ErrorCode::invalid_input, "green cover search needs as many blue lines as red");

  std::vector<ProjLine> cands;
  std::vector<Bits> cover;
  for (const auto& l : all_lines(field)) {
    if (contains_line(red, l) || contains_line(blue, l)) continue;
    Bits b(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (l.contains(grid[k].point)) b.set(k);
    }
    std::size_t c = b.count();
    if (options.prune ? c != n : c == 0) continue;
    cands.push_back(l);
    cover.push_back(std::move(b));
  }
  std::vector<std::vector<std::size_t>> through(grid.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    for (std::size_t k = cover[c].find_first(); k != Bits::npos; k = cover[c].find_next(k)) through[k].push_back(c);
  }

  std::set<std::vector<std::size_t>> found;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> chosen;
  Bits all(grid.size());
  all.set();
  auto dfs = [&](auto& self, const Bits& uncovered) -> void {
    if (++nodes > options.node_budget) {
      throw Error(ErrorCode::budget_exceeded,
                  "green cover search exceeded " + std::to_string(options.node_budget) + " nodes");
    }
    if (uncovered.none()) {
      if (chosen.size() == n) {
        auto s = chosen;
        std::sort(s.begin(), s.end());
        found.insert(std::move(s));
      }
      return;
    }
    if (chosen.size() == n) return;
    const std::size_t pivot = uncovered.find_first();
    for (std::size_t c : through[pivot]) {
      if (options.prune) {
        if ((cover[c] & uncovered) != cover[c]) continue;  // partition: no overlaps
      } else if (std::find(chosen.begin(), chosen.end(), c) != chosen.end()) {
        continue;
      }
      chosen.push_back(c);
      self(self, uncovered - cover[c]);
      chosen.pop_back();
    }
  };
  dfs(dfs, all);

  // candidate indices follow the canonical line order, so sorted index sets
  // give canonically ordered families
  std::vector<std::vector<ProjLine>> out;
  for (const auto& s : found) {
    std::vector<ProjLine> fam;
    for (auto c : s) fam.push_back(cands[c]);
    out.push_back(std::move(fam));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ProjLineLess{});
  });
  return out;
}

Polynomial product_form(const Field& field, const std::vector<ProjLine>& lines) {
  Polynomial out = Polynomial::constant(field, 3, field.one());
  for (const auto& l : lines) {
    Polynomial lin(field, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      Monomial m(3, 0);
      m[i] = 1;
      lin.add_term(m, l[i]);
    }
    out = out * lin;
  }
  return out;
}

ProductDependence verify_product_dependence(const LineConfiguration& config) {
  auto check = validate_green_cover(config);
  if (!check.valid) throw Error(ErrorCode::precondition, "not a valid green cover: " + join_problems(check.problems));
  // a lone green line is concurrent through any of its points
  auto center = config.green.size() == 1 ? std::optional<ProjPoint>(check.grid.front().point)
                                          : concurrency_point(config.green);
  if (!center) throw Error(ErrorCode::precondition, "green lines are not concurrent");
  const Field& f = config.field;
  Polynomial r = product_form(f, config.red), b = product_form(f, config.blue), g = product_form(f, config.green);

  FieldElement alpha = b.evaluate(coords(*center));
  FieldElement beta = -r.evaluate(coords(*center));
  std::optional<ProjPoint> probe;
  for (const auto& p : probe_points(f)) {
    if (!(p == *center) && !g.evaluate(coords(p)).is_zero()) {
      probe = p;
      break;
    }
  }
  if (!probe) throw Error(ErrorCode::verification_failed, "no probe point off the green lines");
  FieldElement gamma = f.zero();
  if (alpha.is_zero() && beta.is_zero()) {
    // center lies on a red and a blue line; fall back to the coefficient kernel
    if (auto k = dependence_kernel(f, r, b, g)) {
      alpha = (*k)[0];
      beta = (*k)[1];
      gamma = (*k)[2];
    }
  } else {
    gamma = (alpha * r.evaluate(coords(*probe)) + beta * b.evaluate(coords(*probe))) / g.evaluate(coords(*probe));
  }
  if (!alpha.is_zero()) {
    FieldElement s = alpha.inverse();
    alpha *= s;
    beta *= s;
    gamma *= s;
  }
  bool nonzero = !alpha.is_zero() && !beta.is_zero() && !gamma.is_zero();
  bool identity = r.scaled(alpha) + b.scaled(beta) == g.scaled(gamma);
  return {alpha, beta, gamma, *center, *probe, nonzero && identity};
}

std::vector<FieldElement> roots_of_unity(const Field& field, std::size_t n) {
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "roots of unity construction needs a prime field");
  const std::uint64_t p = field.modulus();
  if (n == 0 || (p - 1) % n != 0) {
    throw Error(ErrorCode::invalid_input, std::to_string(n) + " does not divide p-1 = " + std::to_string(p - 1));
  }
  std::vector<FieldElement> u;
  for (std::uint64_t a = 1; a < p; ++a) {
    FieldElement x = field.from_int(static_cast<std::int64_t>(a));
    if (x.pow(static_cast<std::int64_t>(n)).is_one()) u.push_back(x);
  }
  return u;
}

LineConfiguration roots_of_unity_config(const Field& field, std::size_t n) {
  LineConfiguration c{field, {}, {}, {}};
  const FieldElement zero = field.zero(), one = field.one();
  for (const auto& u : roots_of_unity(field, n)) {
    c.red.emplace_back(zero, one, -u);
    c.blue.emplace_back(one, -u, zero);
    c.green.emplace_back(one, zero, -u);
  }
  return c;
}

LineConfiguration slope_config(const Field& field, const FieldElement& slope) {
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "slope construction needs a prime field");
  if (slope.is_zero()) throw Error(ErrorCode::invalid_input, "slope must be nonzero");
  LineConfiguration c{field, {}, {}, {}};
  const FieldElement zero = field.zero(), one = field.one();
  for (std::uint64_t a = 0; a < field.modulus(); ++a) {
    FieldElement x = field.from_int(static_cast<std::int64_t>(a));
    c.red.emplace_back(one, zero, -x);
    c.blue.emplace_back(zero, one, -x);
    c.green.emplace_back(slope, -one, x);
  }
  return c;
}

LineConfiguration transform(const LineConfiguration& config, const Matrix3& m) {
  LineConfiguration out{config.field, {}, {}, {}};
  for (const auto& l : config.red) out.red.push_back(transform_line(m, l));
  for (const auto& l : config.blue) out.blue.push_back(transform_line(m, l));
  for (const auto& l : config.green) out.green.push_back(transform_line(m, l));
  return out;
}

BiconcurrentNormal normalize_biconcurrent(const LineConfiguration& config) {
  const Field& f = config.field;
  const std::size_t n = config.red.size();
  if (n < 2) throw Error(ErrorCode::precondition, "normalization needs n >= 2");
  if (f.is_prime() && n % f.modulus() == 0) {
    throw Error(ErrorCode::precondition, "characteristic " + std::to_string(f.modulus()) + " divides n = " +
                                             std::to_string(n));
  }
  auto check = validate_green_cover(config);
  if (!check.valid) throw Error(ErrorCode::precondition, "not a valid green cover: " + join_problems(check.problems));
  auto pr = concurrency_point(config.red);
  if (!pr) throw Error(ErrorCode::precondition, "red lines are not concurrent");
  auto pg = concurrency_point(config.green);
  if (!pg) throw Error(ErrorCode::precondition, "green lines are not concurrent");
  if (*pr == *pg) throw Error(ErrorCode::precondition, "red and green lines share their center");

  Matrix3 m;
  bool placed = false;
  for (const auto& gp : check.grid) {
    for (std::size_t i = 0; i < 3; ++i) {
      m[i][0] = (*pg)[i];
      m[i][1] = (*pr)[i];
      m[i][2] = gp.point[i];
    }
    if (!determinant(m).is_zero()) {
      placed = true;
      break;
    }
  }
  if (!placed) throw Error(ErrorCode::precondition, "every grid point is collinear with the two centers");
  BiconcurrentNormal out;
  out.map = inverse(m);
  out.normalized = transform(config, out.map);

  for (const auto& l : out.normalized.red) {
    if (!l[1].is_zero() || l.is_at_infinity()) throw Error(ErrorCode::verification_failed, "red image is not vertical");
    out.u.push_back(-l[2]);
  }
  for (const auto& l : out.normalized.green) {
    if (!l[0].is_zero() || l.is_at_infinity()) {
      throw Error(ErrorCode::verification_failed, "green image is not horizontal");
    }
    out.v.push_back(-l[2]);
  }
  out.u = center_and_scale(out.u);
  out.v = center_and_scale(out.v);
  out.u_subgroup = is_subgroup(out.u);
  out.v_equals_u = out.u == out.v;
  return out;
}

Problem1Bound check_problem1_bound(const std::vector<ProjLine>& red, const std::vector<ProjLine>& blue,
                                   const ProjPoint& excluded, std::uint64_t node_budget) {
  auto grid = grid_intersections(red, blue);
  std::vector<ProjPoint> rest;
  bool found = false;
  for (const auto& g : grid) {
    if (g.point == excluded) found = true;
    else rest.push_back(g.point);
  }
  if (!found) throw Error(ErrorCode::invalid_input, "excluded point " + excluded.to_string() + " is not a grid point");
  LineCoverOptions opts;
  opts.node_budget = node_budget;
  LineCover cover = min_line_cover(rest, excluded, opts);
  std::int64_t bound = static_cast<std::int64_t>(red.size() + blue.size()) - 2;
  return {cover.size, bound, std::move(cover)};
}

}  // namespace gridres
