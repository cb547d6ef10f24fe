#pragma once

#include <vector>

#include "gridres/lattice.hpp"
#include "gridres/poly.hpp"

namespace gridres {

/// Facet of a polytope relative to its affine hull: <normal, x> <= offset on
/// the polytope, with equality exactly on `vertices` (indices into vertices()).
struct Facet {
  IntVec normal;
  std::int64_t offset;
  std::vector<std::size_t> vertices;
};

/// Convex hull of finitely many lattice points, computed exactly.
class LatticePolytope {
 public:
  /// Hull of `points` in Z^dim; throws on an empty point set.
  static LatticePolytope hull(std::size_t dim, std::vector<IntVec> points);

  std::size_t ambient_dimension() const noexcept { return dim_; }
  /// Dimension of the affine hull.
  std::size_t dimension() const noexcept { return affine_dim_; }
  bool full_dimensional() const noexcept { return affine_dim_ == dim_; }
  bool is_point() const noexcept { return vertices_.size() == 1; }

  /// Extreme points, sorted lexicographically.
  const std::vector<IntVec>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  /// Integer basis of the directions orthogonal to the affine hull.
  const std::vector<IntVec>& normal_space() const noexcept { return equations_; }

  bool contains(const IntVec& x) const;
  bool has_vertex(const IntVec& v) const;
  /// Indices of the facets through vertex i.
  std::vector<std::size_t> facets_at(std::size_t vertex) const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }
  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<IntVec> vertices_;
  std::vector<Facet> facets_;
  std::vector<IntVec> equations_;
  std::vector<std::int64_t> equation_rhs_;
};

/// Exponent vector of a monomial.
IntVec to_intvec(const Monomial& m);

/// Convex hull of the support of f (Laurent exponents allowed); f must be nonzero.
LatticePolytope newton_polytope(const Polynomial& f);
LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
/// Face maximizing <u, .>; u must be nonzero.
LatticePolytope face_in_direction(const LatticePolytope& p, const IntVec& u);
/// Segment [0, w].
LatticePolytope segment(const IntVec& w);

}  // namespace gridres
