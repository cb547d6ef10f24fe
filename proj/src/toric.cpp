#include "gridres/toric.hpp"

#include <algorithm>
#include <set>

#include "gridres/error.hpp"

namespace gridres {

namespace {

Monomial to_monomial(const IntVec& v) {
  Monomial m;
  for (auto x : v) {
    if (x < INT32_MIN || x > INT32_MAX) throw Error(ErrorCode::invalid_input, "exponent out of range");
    m.push_back(static_cast<Exponent>(x));
  }
  return m;
}

void check_numerator(const NewtonSystem& sys, const Polynomial& f) {
  if (!(f.field() == sys.field()) || f.num_vars() != sys.dimension()) {
    throw Error(ErrorCode::field_mismatch, "numerator does not match the system's field or arity");
  }
  if (f.is_zero()) throw Error(ErrorCode::invalid_input, "numerator is the zero polynomial");
}

Polynomial truncate_below(const Polynomial& p, const IntVec& u, std::int64_t floor) {
  Polynomial out(p.field(), p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    if (dot(u, to_intvec(m)) >= floor) out.add_term(m, c);
  }
  return out;
}

FieldElement determinant(std::vector<std::vector<FieldElement>> a, const Field& field) {
  const std::size_t n = a.size();
  FieldElement det = field.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return field.zero();
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    FieldElement inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      FieldElement f = a[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

IntVec ones(std::size_t n) { return IntVec(n, 1); }

}  // namespace

NewtonSystem::NewtonSystem(std::vector<Polynomial> g) : g_(std::move(g)) {
  if (g_.empty()) throw Error(ErrorCode::invalid_input, "Newton system needs at least one polynomial");
  const std::size_t n = g_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g_[i].field() == g_[0].field()) || g_[i].num_vars() != n) {
      throw Error(ErrorCode::field_mismatch, "system needs n polynomials in n variables over one field");
    }
    parts_.push_back(newton_polytope(g_[i]));
  }
  sum_ = parts_[0];
  for (std::size_t i = 1; i < n; ++i) sum_ = minkowski_sum(sum_, parts_[i]);
}

UnfoldedResult is_unfolded(const NewtonSystem& sys) {
  const std::size_t n = sys.dimension();
  if (n > 3) throw Error(ErrorCode::invalid_input, "unfolded check is implemented for n <= 3 only");
  // thicken N along its normal space so every cone of its fan shows up as a
  // face of a full-dimensional polytope
  LatticePolytope full = sys.sum();
  for (const auto& w : sys.sum().normal_space()) full = minkowski_sum(full, segment(w));

  std::set<std::vector<std::size_t>> faces;
  for (const auto& f : full.facets()) faces.insert(f.vertices);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<std::size_t>> current(faces.begin(), faces.end());
    for (std::size_t a = 0; a < current.size(); ++a) {
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        std::vector<std::size_t> meet;
        std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(), current[b].end(),
                              std::back_inserter(meet));
        if (!meet.empty() && faces.insert(meet).second) grew = true;
      }
    }
  }

  UnfoldedResult out{true, std::nullopt, 0};
  for (const auto& face : faces) {
    IntVec u(n, 0);
    for (const auto& f : full.facets()) {
      if (std::includes(f.vertices.begin(), f.vertices.end(), face.begin(), face.end())) u = u + f.normal;
    }
    u = primitive(u);
    ++out.directions_checked;
    bool ok = std::any_of(sys.parts().begin(), sys.parts().end(),
                          [&](const LatticePolytope& p) { return face_in_direction(p, u).is_point(); });
    if (!ok) {
      out.unfolded = false;
      if (!out.witness || *out.witness < u) out.witness = u;
    }
  }
  return out;
}

VertexSplit vertex_split(const NewtonSystem& sys, const Polynomial& f) {
  check_numerator(sys, f);
  const std::size_t n = sys.dimension();
  const LatticePolytope& big = sys.sum();
  const LatticePolytope nf = newton_polytope(f);
  const IntVec e = ones(n);
  VertexSplit out;
  for (const auto& v : big.vertices()) {
    std::vector<LinearConstraint> base;
    for (const auto& w : big.vertices()) {
      if (w != v) base.push_back({w - v, true});
    }
    for (const auto& m : nf.vertices()) base.push_back({m + e - v, false});
    std::optional<IntVec> u;
    if (big.is_point()) {
      // any nonzero direction isolates v; try the coordinate half-spaces
      for (std::size_t k = 0; k < n && !u; ++k) {
        for (int s : {1, -1}) {
          auto cs = base;
          IntVec a(n, 0);
          a[k] = -s;
          cs.push_back({a, true});
          u = solve_homogeneous(cs, n);
          if (u) break;
        }
      }
    } else {
      u = solve_homogeneous(base, n);
    }
    if (!u) {
      throw Error(ErrorCode::precondition,
                  "no outer support half-space at vertex " + to_string(v) + " keeps N(f)+e on its side");
    }
    out.direction.emplace(v, *u);
    (nf.contains(v - e) ? out.zero : out.plus).push_back(v);
  }
  return out;
}

FieldElement vertex_residue(const NewtonSystem& sys, const Polynomial& f, const IntVec& v, const IntVec& u) {
  check_numerator(sys, f);
  const std::size_t n = sys.dimension();
  const Field& field = sys.field();
  if (v.size() != n || u.size() != n) throw Error(ErrorCode::invalid_input, "vertex or direction has the wrong length");
  if (std::all_of(u.begin(), u.end(), [](auto x) { return x == 0; })) {
    throw Error(ErrorCode::invalid_input, "zero support direction");
  }
  if (!sys.sum().has_vertex(v)) throw Error(ErrorCode::invalid_input, to_string(v) + " is not a vertex of N");

  IntVec total(n, 0);
  FieldElement lead = field.one();
  std::vector<Polynomial> h;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePolytope face = face_in_direction(sys.parts()[i], u);
    if (!face.is_point()) {
      throw Error(ErrorCode::precondition, "direction " + to_string(u) + " does not single out a vertex of N(g_" +
                                               std::to_string(i + 1) + ")");
    }
    const IntVec& vi = face.vertices()[0];
    total = total + vi;
    FieldElement c = sys.equations()[i].coefficient(to_monomial(vi));
    lead *= c;
    Polynomial hi(field, n);
    for (const auto& [m, coef] : sys.equations()[i].terms()) {
      IntVec d = to_intvec(m) - vi;
      if (std::any_of(d.begin(), d.end(), [](auto x) { return x != 0; })) hi.add_term(to_monomial(d), coef / c);
    }
    h.push_back(std::move(hi));
  }
  if (total != v) {
    throw Error(ErrorCode::precondition, "direction " + to_string(u) + " supports " + to_string(total) +
                                             ", not " + to_string(v));
  }

  // f z^{e-v}
  const IntVec shift = ones(n) - v;
  Polynomial fp(field, n);
  std::int64_t order = 0;
  for (const auto& [m, c] : f.terms()) {
    IntVec d = to_intvec(m) + shift;
    order = std::max(order, dot(u, d));
    fp.add_term(to_monomial(d), c);
  }
  // series terms below weight -order cannot meet a monomial of fp at zero
  Polynomial series = Polynomial::constant(field, n, field.one());
  for (const auto& hi : h) {
    Polynomial inv = Polynomial::constant(field, n, field.one());
    Polynomial term = inv;
    Polynomial step = -hi;
    while (true) {
      term = truncate_below(term * step, u, -order);
      if (term.is_zero()) break;
      inv = inv + term;
    }
    series = truncate_below(series * inv, u, -order);
  }
  FieldElement ct = field.zero();
  for (const auto& [m, c] : fp.terms()) {
    Monomial neg;
    for (auto x : m) neg.push_back(-x);
    ct += c * series.coefficient(neg);
  }
  return ct / lead;
}

FieldElement residue_sum_over_zeros(const NewtonSystem& sys, const Polynomial& f, const std::vector<Point>& zeros) {
  if (!(f.field() == sys.field()) || f.num_vars() != sys.dimension()) {
    throw Error(ErrorCode::field_mismatch, "numerator does not match the system's field or arity");
  }
  const std::size_t n = sys.dimension();
  const Field& field = sys.field();
  std::vector<std::vector<Polynomial>> jac(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partial_derivative(sys.equations()[i], j));
  }
  std::set<Point, PointLess> seen;
  FieldElement sum = field.zero();
  for (const auto& z : zeros) {
    if (z.size() != n) throw Error(ErrorCode::invalid_input, "zero " + point_to_string(z) + " has the wrong length");
    for (const auto& c : z) {
      if (!(c.field() == field)) throw Error(ErrorCode::field_mismatch, "zero given over another field");
      if (c.is_zero()) throw Error(ErrorCode::invalid_input, "zero " + point_to_string(z) + " is not in the torus");
    }
    if (!seen.insert(z).second) throw Error(ErrorCode::duplicate_node, "zero " + point_to_string(z) + " listed twice");
    for (std::size_t i = 0; i < n; ++i) {
      if (!sys.equations()[i].evaluate(z).is_zero()) {
        throw Error(ErrorCode::invalid_input, point_to_string(z) + " is not a zero of g_" + std::to_string(i + 1));
      }
    }
    std::vector<std::vector<FieldElement>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i].push_back(jac[i][j].evaluate(z));
    }
    FieldElement det = determinant(std::move(a), field);
    if (det.is_zero()) throw Error(ErrorCode::precondition, "singular Jacobian at " + point_to_string(z));
    sum += f.evaluate(z) / det;
  }
  return sum;
}

VertexCoefficients solve_vertex_coefficients(const NewtonSystem& sys, const std::vector<Point>& zeros,
                                             const std::vector<Polynomial>& samples) {
  if (samples.empty()) throw Error(ErrorCode::precondition, "underdetermined: no sample numerators (rank 0)");
  auto unfolded = is_unfolded(sys);
  if (!unfolded.unfolded) {
    throw Error(ErrorCode::precondition, "system is not unfolded (direction " + to_string(*unfolded.witness) + ")");
  }
  const std::size_t n = sys.dimension();
  const Field& field = sys.field();
  VertexCoefficients out;
  out.vertices = sys.sum().vertices();
  const std::size_t nv = out.vertices.size();
  const FieldElement sign = (n % 2 == 0) ? field.one() : -field.one();

  std::vector<std::vector<FieldElement>> m;
  for (const auto& s : samples) {
    VertexSplit split = vertex_split(sys, s);
    std::vector<FieldElement> res;
    for (const auto& v : out.vertices) res.push_back(vertex_residue(sys, s, v, split.direction.at(v)));
    FieldElement lhs = residue_sum_over_zeros(sys, s, zeros);
    std::vector<FieldElement> row;
    for (const auto& r : res) row.push_back(sign * r);
    row.push_back(lhs);
    m.push_back(std::move(row));
    out.residues.push_back(std::move(res));
    out.sums.push_back(lhs);
    out.splits.push_back(std::move(split));
  }

  // reduced row echelon form of [R | lhs]
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nv && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    FieldElement inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement f = m[i][c];
      for (std::size_t j = 0; j <= nv; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  out.rank = pivots.size();
  for (std::size_t i = out.rank; i < m.size(); ++i) {
    if (!m[i][nv].is_zero()) {
      throw Error(ErrorCode::verification_failed,
                  "inconsistent system for k_v: residual " + m[i][nv].to_string() + " (rank " +
                      std::to_string(out.rank) + ")");
    }
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    bool alone = true;
    for (std::size_t j = 0; j < nv && alone; ++j) alone = j == pivots[i] || m[i][j].is_zero();
    if (alone) out.determined.emplace(out.vertices[pivots[i]], m[i][nv]);
  }
  if (out.determined.empty()) {
    throw Error(ErrorCode::precondition,
                "underdetermined: rank " + std::to_string(out.rank) + " but no k_v is pinned down");
  }
  for (std::size_t i = 0; i < nv; ++i) {
    const IntVec& v = out.vertices[i];
    auto it = out.determined.find(v);
    if (it == out.determined.end()) {
      out.unconstrained.push_back(v);
      continue;
    }
    mpz_class z;
    if (!it->second.to_integer(z) || !z.fits_slong_p()) {
      throw Error(ErrorCode::verification_failed, "k at " + to_string(v) + " is " + it->second.to_string() +
                                                      ", not an integer");
    }
    std::int64_t k = z.get_si();
    out.k.emplace(v, k);
    bool in_zero = std::any_of(out.splits.begin(), out.splits.end(), [&](const VertexSplit& s) {
      return std::find(s.zero.begin(), s.zero.end(), v) != s.zero.end();
    });
    if (k == 0 && in_zero && sys.sum().full_dimensional() && sys.sum().facets_at(i).size() == n) {
      out.anomalies.push_back(v);
    }
  }
  return out;
}

}  // namespace gridres
