#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gridres/polytope.hpp"

namespace gridres {

/// n Laurent polynomials in n variables with their Newton polytopes and the
/// Minkowski sum N = N(g_1) + ... + N(g_n).
class NewtonSystem {
 public:
  explicit NewtonSystem(std::vector<Polynomial> g);

  const Field& field() const noexcept { return g_.front().field(); }
  std::size_t dimension() const noexcept { return g_.size(); }
  const std::vector<Polynomial>& equations() const noexcept { return g_; }
  const std::vector<LatticePolytope>& parts() const noexcept { return parts_; }
  const LatticePolytope& sum() const noexcept { return sum_; }

 private:
  std::vector<Polynomial> g_;
  std::vector<LatticePolytope> parts_;
  LatticePolytope sum_;
};

struct UnfoldedResult {
  bool unfolded;
  /// Lexicographically greatest failing direction (primitive), when not unfolded.
  std::optional<IntVec> witness;
  std::size_t directions_checked;
};

/// For every nonzero u, some face of N(g_i) in direction u must be a vertex.
/// One direction per cone of the normal fan of N (n <= 3).
UnfoldedResult is_unfolded(const NewtonSystem& sys);

struct VertexSplit {
  std::vector<IntVec> plus;  // vertices of N outside N(f) + e
  std::vector<IntVec> zero;  // vertices of N on N(f) + e
  /// A supporting direction per vertex: N meets {<u,x> = <u,v>} only at v and
  /// N(f) + e stays in {<u,x> <= <u,v>}.
  std::map<IntVec, IntVec> direction;
};

VertexSplit vertex_split(const NewtonSystem& sys, const Polynomial& f);

/// Constant term of f z^{e-v} / prod g_i expanded as a Laurent series in the
/// cone of u, where u strictly supports v in N.
FieldElement vertex_residue(const NewtonSystem& sys, const Polynomial& f, const IntVec& v, const IntVec& u);

/// Sum of f(z) / det(dg_i/dz_j)(z) over the given simple zeros in the torus.
FieldElement residue_sum_over_zeros(const NewtonSystem& sys, const Polynomial& f, const std::vector<Point>& zeros);

struct VertexCoefficients {
  std::vector<IntVec> vertices;                // all vertices of N
  std::map<IntVec, FieldElement> determined;   // k_v as field elements
  std::map<IntVec, std::int64_t> k;            // integer k_v (symmetric lift over F_p)
  std::vector<IntVec> unconstrained;
  std::size_t rank = 0;
  std::vector<IntVec> anomalies;  // V_zero vertices with exactly n facets and k_v = 0
  std::vector<FieldElement> sums;                     // per sample: residue sum over zeros
  std::vector<std::vector<FieldElement>> residues;    // per sample, per vertex
  std::vector<VertexSplit> splits;                    // per sample
};

/// Solves sum_z Res_z = (-1)^n sum_v k_v Res_v over the samples for the k_v.
VertexCoefficients solve_vertex_coefficients(const NewtonSystem& sys, const std::vector<Point>& zeros,
                                             const std::vector<Polynomial>& samples);

}  // namespace gridres
