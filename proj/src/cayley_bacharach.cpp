#include "gridres/cayley_bacharach.hpp"

#include <algorithm>
#include <set>

namespace gridres {

SeparableSystem::SeparableSystem(GridSystem grid) : grid_(std::move(grid)) {
  for (std::size_t i = 0; i < grid_.dimension(); ++i) {
    g_.push_back(vanishing_poly_from_nodes(grid_.field(), grid_.nodes(i)));
  }
}

Polynomial SeparableSystem::embedded(std::size_t i) const {
  Polynomial out(field(), dimension());
  for (const auto& [m, c] : g_.at(i).terms()) {
    Monomial e(dimension(), 0);
    e[i] = m[0];
    out.add_term(e, c);
  }
  return out;
}

std::int64_t CbRelation::degree_bound() const {
  std::int64_t s = 0;
  for (std::size_t k : sizes) s += static_cast<std::int64_t>(k);
  return s - static_cast<std::int64_t>(sizes.size()) - 1;
}

std::size_t CbRelation::index_of(const Point& p) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == p) return i;
  }
  throw Error(ErrorCode::invalid_input, "point " + point_to_string(p) + " is not on the grid");
}

CbRelation cb_coefficients(const SeparableSystem& sys) {
  const GridSystem& grid = sys.grid();
  std::vector<std::vector<FieldElement>> weights;
  for (std::size_t i = 0; i < grid.dimension(); ++i) weights.push_back(grid_weights(grid.field(), grid.nodes(i)));
  CbRelation rel{grid.field(), grid.sizes(), {}, {}};
  for_each_index(rel.sizes, [&](std::span<const std::size_t> idx) {
    FieldElement a = grid.field().one();
    for (std::size_t i = 0; i < idx.size(); ++i) a *= weights[i][idx[i]];
    rel.points.push_back(grid.point(idx));
    rel.coefficients.push_back(a);
  });
  return rel;
}

CbResidual verify_cb(const Polynomial& f, const CbRelation& rel) {
  if (!(f.field() == rel.field) || f.num_vars() != rel.sizes.size()) {
    throw Error(ErrorCode::field_mismatch, "polynomial does not match the relation's field or dimension");
  }
  FieldElement r = rel.field.zero();
  for (std::size_t i = 0; i < rel.points.size(); ++i) r += rel.coefficients[i] * f.evaluate(rel.points[i]);
  return {r, f.total_degree(), rel.degree_bound()};
}

FieldElement forced_value(const std::map<Point, FieldElement, PointLess>& values, const CbRelation& rel,
                          const Point& target) {
  const std::size_t t = rel.index_of(target);
  if (values.count(target)) throw Error(ErrorCode::invalid_input, "values must not include the target point");
  FieldElement s = rel.field.zero();
  for (std::size_t i = 0; i < rel.points.size(); ++i) {
    if (i == t) continue;
    auto it = values.find(rel.points[i]);
    if (it == values.end()) throw Error(ErrorCode::invalid_input, "missing value at " + point_to_string(rel.points[i]));
    s += rel.coefficients[i] * it->second;
  }
  if (values.size() != rel.points.size() - 1) {
    throw Error(ErrorCode::invalid_input, "values given at points outside the grid");
  }
  return -(s / rel.coefficients[t]);
}

CoverBound min_cover_size(const GridSystem& grid, const Point& excluded, std::uint64_t node_budget) {
  if (grid.dimension() != 2) throw Error(ErrorCode::invalid_input, "cover search is planar only");
  if (excluded.size() != 2) throw Error(ErrorCode::invalid_input, "excluded point must have two coordinates");
  std::vector<ProjPoint> pts;
  bool found = false;
  for (const auto& x : grid.nodes(0)) {
    for (const auto& y : grid.nodes(1)) {
      if (x == excluded[0] && y == excluded[1]) {
        found = true;
        continue;
      }
      pts.push_back(ProjPoint::affine(x, y));
    }
  }
  if (!found) throw Error(ErrorCode::invalid_input, "excluded point " + point_to_string(excluded) + " is not on the grid");
  LineCoverOptions opts;
  opts.allow_line_at_infinity = false;
  opts.node_budget = node_budget;
  LineCover cover = min_line_cover(pts, ProjPoint::affine(excluded[0], excluded[1]), opts);
  std::int64_t bound = static_cast<std::int64_t>(grid.nodes(0).size() + grid.nodes(1).size()) - 2;
  return {cover.size, bound, std::move(cover)};
}

HypersurfaceSystem::HypersurfaceSystem(std::vector<Polynomial> g) : g_(std::move(g)) {
  if (g_.empty()) throw Error(ErrorCode::invalid_input, "hypersurface system needs at least one equation");
  const Field field = g_.front().field();
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "hypersurface enumeration needs a prime field");
  const std::size_t n = g_.size();
  double points = 1;
  for (std::size_t i = 0; i < n; ++i) points *= field.modulus();
  if (points > 1e7) throw Error(ErrorCode::invalid_input, "p^n exceeds the enumeration limit of 10^7");
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial& gi = g_[i];
    if (!(gi.field() == field) || gi.num_vars() != n) {
      throw Error(ErrorCode::field_mismatch, "equation " + std::to_string(i + 1) + " has the wrong field or arity");
    }
    if (gi.is_laurent()) throw Error(ErrorCode::invalid_input, "equations must be polynomials");
    std::int64_t k = gi.total_degree();
    Monomial lead(n, 0);
    lead[i] = static_cast<Exponent>(std::max<std::int64_t>(k, 0));
    if (k < 1 || !(gi.homogeneous_part(k) == Polynomial::term(field, lead, field.one()))) {
      throw Error(ErrorCode::precondition, "equation " + std::to_string(i + 1) +
                                               " is not of the form z_i^k + terms of lower degree");
    }
    k_.push_back(k);
  }
}

std::uint64_t HypersurfaceSystem::expected_solutions() const {
  std::uint64_t k = 1;
  for (auto d : k_) k *= static_cast<std::uint64_t>(d);
  return k;
}

namespace {

// Word-arithmetic evaluator over F_p with per-variable power tables.
class PrimeEvaluator {
 public:
  explicit PrimeEvaluator(const Polynomial& f) : p_(f.field().modulus()), n_(f.num_vars()) {
    Exponent top = 0;
    for (const auto& [m, c] : f.terms()) {
      terms_.push_back({c.residue(), m});
      for (Exponent e : m) top = std::max(top, e);
    }
    powers_.assign(p_, std::vector<std::uint64_t>(static_cast<std::size_t>(top) + 1, 0));
    for (std::uint64_t a = 0; a < p_; ++a) {
      std::uint64_t v = 1;
      for (Exponent e = 0; e <= top; ++e) {
        powers_[a][e] = v;
        v = v * a % p_;
      }
    }
  }

  std::uint64_t operator()(std::span<const std::uint64_t> x) const {
    std::uint64_t sum = 0;
    for (const auto& [c, m] : terms_) {
      std::uint64_t v = c;
      for (std::size_t i = 0; i < n_; ++i) v = v * powers_[x[i]][m[i]] % p_;
      sum += v;
    }
    return sum % p_;
  }

 private:
  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::pair<std::uint64_t, Monomial>> terms_;
  std::vector<std::vector<std::uint64_t>> powers_;
};

}  // namespace

const std::vector<Point>& HypersurfaceSystem::solutions() const {
  if (solutions_) return *solutions_;
  const Field f = field();
  const std::size_t n = dimension();
  std::vector<PrimeEvaluator> evals;
  for (const auto& gi : g_) evals.emplace_back(gi);
  std::vector<Point> out;
  std::vector<std::size_t> sizes(n, f.modulus());
  std::vector<std::uint64_t> x(n);
  for_each_index(sizes, [&](std::span<const std::size_t> idx) {
    std::copy(idx.begin(), idx.end(), x.begin());
    for (const auto& e : evals) {
      if (e(x) != 0) return;
    }
    Point p;
    for (auto v : x) p.push_back(f.from_int(static_cast<std::int64_t>(v)));
    out.push_back(std::move(p));
  });
  solutions_ = std::move(out);
  return *solutions_;
}

const char* to_string(HypersurfaceVerdict::Status s) {
  switch (s) {
    case HypersurfaceVerdict::Status::witness_found: return "witness_found";
    case HypersurfaceVerdict::Status::counterexample: return "counterexample";
    case HypersurfaceVerdict::Status::hypothesis_unmet: return "hypothesis_unmet";
    case HypersurfaceVerdict::Status::not_applicable: return "not_applicable";
  }
  return "unknown";
}

HypersurfaceVerdict verify_hypersurface_theorem(const HypersurfaceSystem& sys, const Polynomial& f) {
  if (!(f.field() == sys.field()) || f.num_vars() != sys.dimension()) {
    throw Error(ErrorCode::field_mismatch, "polynomial does not match the system's field or dimension");
  }
  HypersurfaceVerdict v{HypersurfaceVerdict::Status::not_applicable, sys.solutions(), sys.expected_solutions(),
                        f.total_degree(), 0, sys.field().zero(), {}, std::nullopt};
  Monomial target;
  for (auto k : sys.degrees()) {
    v.degree_bound += k - 1;
    target.push_back(static_cast<Exponent>(k - 1));
  }
  v.target_coefficient = f.coefficient(target);
  for (const auto& x : v.solutions) v.values.push_back(f.evaluate(x));

  if (v.solutions.size() != v.expected) {
    v.status = HypersurfaceVerdict::Status::hypothesis_unmet;
    return v;
  }
  if (v.degree > v.degree_bound || v.target_coefficient.is_zero()) return v;
  for (std::size_t i = 0; i < v.solutions.size(); ++i) {
    if (!v.values[i].is_zero()) {
      v.witness = v.solutions[i];
      v.status = HypersurfaceVerdict::Status::witness_found;
      return v;
    }
  }
  v.status = HypersurfaceVerdict::Status::counterexample;
  return v;
}

}  // namespace gridres
