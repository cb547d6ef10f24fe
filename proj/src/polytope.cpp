#include "gridres/polytope.hpp"

#include <algorithm>
#include <map>

#include "gridres/error.hpp"

namespace gridres {

namespace {

IntVec project(const IntVec& x, const std::vector<std::size_t>& cols) {
  IntVec out;
  for (auto c : cols) out.push_back(x[c]);
  return out;
}

// Calls visit(indices) for every k-subset of {0..n-1}.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Primitive normal of the span of d-1 vectors in Z^d; zero when they are dependent.
IntVec hyperplane_normal(const std::vector<IntVec>& rows, std::size_t d) {
  if (d == 1) return {1};
  if (d == 2) return primitive({-rows[0][1], rows[0][0]});
  if (d == 3) {
    const IntVec &x = rows[0], &y = rows[1];
    __int128 c[3] = {static_cast<__int128>(x[1]) * y[2] - static_cast<__int128>(x[2]) * y[1],
                     static_cast<__int128>(x[2]) * y[0] - static_cast<__int128>(x[0]) * y[2],
                     static_cast<__int128>(x[0]) * y[1] - static_cast<__int128>(x[1]) * y[0]};
    IntVec out;
    for (auto v : c) {
      if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::invalid_input, "integer overflow in convex hull");
      out.push_back(static_cast<std::int64_t>(v));
    }
    return primitive(out);
  }
  auto ns = integer_nullspace(rows, d);
  return ns.size() == 1 ? ns[0] : IntVec(d, 0);
}

}  // namespace

IntVec to_intvec(const Monomial& m) { return IntVec(m.begin(), m.end()); }

LatticePolytope LatticePolytope::hull(std::size_t dim, std::vector<IntVec> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_input, "convex hull of an empty point set");
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::invalid_input, "point dimension mismatch in convex hull");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LatticePolytope out;
  out.dim_ = dim;
  std::vector<IntVec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  std::vector<std::size_t> cols = pivot_columns(diffs, dim);
  out.affine_dim_ = cols.size();
  out.equations_ = integer_nullspace(diffs, dim);
  for (const auto& e : out.equations_) out.equation_rhs_.push_back(dot(e, points[0]));

  const std::size_t d = out.affine_dim_;
  if (d == 0) {
    out.vertices_ = {points[0]};
    return out;
  }

  std::vector<IntVec> q;
  for (const auto& p : points) q.push_back(project(p, cols));
  // relative facets: hyperplanes through d affinely independent points with
  // every point on one side
  std::map<std::pair<IntVec, std::int64_t>, bool> planes;
  for_each_subset(q.size(), d, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVec> rows;
    for (std::size_t k = 1; k < idx.size(); ++k) rows.push_back(q[idx[k]] - q[idx[0]]);
    IntVec a = hyperplane_normal(rows, d);
    if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; })) return;
    std::int64_t b = dot(a, q[idx[0]]);
    if (planes.count({a, b})) return;
    IntVec na = a;
    for (auto& v : na) v = -v;
    if (planes.count({na, -b})) return;
    bool le = true, ge = true;
    for (const auto& x : q) {
      std::int64_t s = dot(a, x);
      le = le && s <= b;
      ge = ge && s >= b;
      if (!le && !ge) return;
    }
    if (!le) {
      for (auto& v : a) v = -v;
      b = -b;
    }
    planes.emplace(std::make_pair(a, b), true);
  });

  // a point is a vertex when the normals of its facets span R^d
  std::vector<std::size_t> vertex_ids;
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::vector<IntVec> normals;
    for (const auto& [plane, unused] : planes) {
      if (dot(plane.first, q[j]) == plane.second) normals.push_back(plane.first);
    }
    if (rank(normals, d) == d) vertex_ids.push_back(j);
  }
  for (auto j : vertex_ids) out.vertices_.push_back(points[j]);  // already sorted
  for (const auto& [plane, unused] : planes) {
    Facet f;
    f.normal.assign(dim, 0);
    for (std::size_t k = 0; k < d; ++k) f.normal[cols[k]] = plane.first[k];
    f.offset = plane.second;
    for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
      if (dot(plane.first, q[vertex_ids[i]]) == plane.second) f.vertices.push_back(i);
    }
    out.facets_.push_back(std::move(f));
  }
  return out;
}

bool LatticePolytope::contains(const IntVec& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::invalid_input, "point dimension mismatch");
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    if (dot(equations_[i], x) != equation_rhs_[i]) return false;
  }
  for (const auto& f : facets_) {
    if (dot(f.normal, x) > f.offset) return false;
  }
  return true;
}

bool LatticePolytope::has_vertex(const IntVec& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::vector<std::size_t> LatticePolytope::facets_at(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    const auto& vs = facets_[i].vertices;
    if (std::find(vs.begin(), vs.end(), vertex) != vs.end()) out.push_back(i);
  }
  return out;
}

std::string LatticePolytope::to_string() const {
  std::string s = "conv{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) s += (i ? ", " : "") + gridres::to_string(vertices_[i]);
  return s + "}";
}

LatticePolytope newton_polytope(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::invalid_input, "Newton polytope of the zero polynomial");
  std::vector<IntVec> pts;
  for (const auto& [m, c] : f.terms()) pts.push_back(to_intvec(m));
  return LatticePolytope::hull(f.num_vars(), std::move(pts));
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.ambient_dimension() != q.ambient_dimension()) {
    throw Error(ErrorCode::invalid_input, "Minkowski sum of polytopes of different dimension");
  }
  std::vector<IntVec> pts;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  }
  return LatticePolytope::hull(p.ambient_dimension(), std::move(pts));
}

LatticePolytope face_in_direction(const LatticePolytope& p, const IntVec& u) {
  if (u.size() != p.ambient_dimension()) throw Error(ErrorCode::invalid_input, "direction dimension mismatch");
  if (std::all_of(u.begin(), u.end(), [](auto v) { return v == 0; })) {
    throw Error(ErrorCode::invalid_input, "face in the zero direction");
  }
  std::int64_t best = INT64_MIN;
  for (const auto& v : p.vertices()) best = std::max(best, dot(u, v));
  std::vector<IntVec> face;
  for (const auto& v : p.vertices()) {
    if (dot(u, v) == best) face.push_back(v);
  }
  return LatticePolytope::hull(p.ambient_dimension(), std::move(face));
}

LatticePolytope segment(const IntVec& w) { return LatticePolytope::hull(w.size(), {IntVec(w.size(), 0), w}); }

}  // namespace gridres
