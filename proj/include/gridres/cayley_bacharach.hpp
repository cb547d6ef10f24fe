#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gridres/line_cover.hpp"
#include "gridres/nullstellensatz.hpp"

namespace gridres {

/// Univariate g_i(z_i) = prod_{x in X_i} (z_i - x), one per variable; the common
/// zeros are the product grid X_1 x ... x X_n.
class SeparableSystem {
 public:
  explicit SeparableSystem(GridSystem grid);

  const GridSystem& grid() const noexcept { return grid_; }
  const Field& field() const noexcept { return grid_.field(); }
  std::size_t dimension() const noexcept { return grid_.dimension(); }
  /// g_i as a one-variable polynomial.
  const Polynomial& univariate(std::size_t i) const { return g_.at(i); }
  /// g_i embedded in the n-variable ring (depends on z_i only).
  Polynomial embedded(std::size_t i) const;

 private:
  GridSystem grid_;
  std::vector<Polynomial> g_;
};

/// Cayley-Bacharach relation sum_x alpha_x f(x) = 0 on the grid, valid for
/// total_degree(f) <= sum k_i - n - 1. Points are listed in row-major order.
struct CbRelation {
  Field field;
  std::vector<std::size_t> sizes;
  std::vector<Point> points;
  std::vector<FieldElement> coefficients;

  std::int64_t degree_bound() const;
  std::size_t index_of(const Point& p) const;
};

/// alpha_x = prod_i 1 / g_i'(x_i); every coefficient is nonzero.
CbRelation cb_coefficients(const SeparableSystem& sys);

struct CbResidual {
  FieldElement residual;
  std::int64_t degree;
  std::int64_t bound;
  bool within_bound() const { return degree <= bound; }
  /// False only when the relation is violated inside its degree range.
  bool consistent() const { return !within_bound() || residual.is_zero(); }
};

CbResidual verify_cb(const Polynomial& f, const CbRelation& rel);

/// Value at `target` forced by the relation from the values at every other point.
FieldElement forced_value(const std::map<Point, FieldElement, PointLess>& values, const CbRelation& rel,
                          const Point& target);

struct CoverBound {
  std::size_t min_lines;
  std::int64_t bound;  // sum k_i - n
  LineCover cover;
  bool holds() const { return static_cast<std::int64_t>(min_lines) >= bound; }
};

/// Planar grid X_1 x X_2 minus `excluded`: minimum number of affine lines avoiding
/// `excluded` that cover the rest, compared with k_1 + k_2 - 2.
CoverBound min_cover_size(const GridSystem& grid, const Point& excluded, std::uint64_t node_budget = 1'000'000);

/// g_i = z_i^{k_i} + lower-degree terms over F_p; zeros found by enumerating F_p^n.
class HypersurfaceSystem {
 public:
  explicit HypersurfaceSystem(std::vector<Polynomial> g);

  const Field& field() const noexcept { return g_.front().field(); }
  std::size_t dimension() const noexcept { return g_.size(); }
  const std::vector<Polynomial>& equations() const noexcept { return g_; }
  const std::vector<std::int64_t>& degrees() const noexcept { return k_; }
  std::uint64_t expected_solutions() const;

  /// Sorted common zeros in F_p^n (cached after the first call).
  const std::vector<Point>& solutions() const;

 private:
  std::vector<Polynomial> g_;
  std::vector<std::int64_t> k_;
  mutable std::optional<std::vector<Point>> solutions_;
};

struct HypersurfaceVerdict {
  enum class Status {
    witness_found,     // hypotheses hold and f is nonzero somewhere on X
    counterexample,    // hypotheses hold but f vanishes on X
    hypothesis_unmet,  // |X| != prod k_i
    not_applicable,    // degree too large or target coefficient zero
  };
  Status status;
  std::vector<Point> solutions;
  std::uint64_t expected;
  std::int64_t degree;
  std::int64_t degree_bound;  // sum k_i - n
  FieldElement target_coefficient;
  std::vector<FieldElement> values;  // f on each solution
  std::optional<Point> witness;
};

const char* to_string(HypersurfaceVerdict::Status s);

HypersurfaceVerdict verify_hypersurface_theorem(const HypersurfaceSystem& sys, const Polynomial& f);

}  // namespace gridres
