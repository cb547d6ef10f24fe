#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gridres/poly.hpp"

namespace gridres {

/// Product grid A_1 x ... x A_n. Each node set is stored sorted (canonical order)
/// and must be nonempty with pairwise-distinct nodes.
class GridSystem {
 public:
  GridSystem(Field field, std::vector<std::vector<FieldElement>> node_sets);

  const Field& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return nodes_.size(); }
  const std::vector<FieldElement>& nodes(std::size_t i) const { return nodes_.at(i); }
  const std::vector<std::vector<FieldElement>>& node_sets() const noexcept { return nodes_; }
  std::vector<std::size_t> sizes() const;
  std::size_t num_points() const;

  /// c_i = |A_i| - 1.
  Monomial target_exponent() const;

  /// Grid point with the given per-variable node indices.
  Point point(std::span<const std::size_t> index) const;

 private:
  Field field_;
  std::vector<std::vector<FieldElement>> nodes_;
};

/// weight(a) = 1 / prod_{b != a} (a - b), aligned with `nodes`; one batch inversion.
std::vector<FieldElement> grid_weights(const Field& field, std::span<const FieldElement> nodes);

bool check_classical_degree(const Polynomial& f, const Monomial& target);

/// Every monomial d != target of f has d_i < target_i for at least one i.
bool check_relaxed_support(const Polynomial& f, const Monomial& target);

/// sum over the grid of f(a) * prod_i weight_i(a_i). Equals coefficient_of(f, c) with
/// c_i = |A_i| - 1 whenever the relaxed support condition holds (checked; precondition error otherwise).
FieldElement coefficient_via_grid(const Polynomial& f, const GridSystem& grid);

struct GridWitness {
  Point point;
  FieldElement value;
};

struct WitnessSearch {
  FieldElement coefficient;
  std::optional<GridWitness> witness;
};

/// Lexicographically first grid point (sorted node order) where f does not vanish.
/// If the grid coefficient is nonzero, a witness is guaranteed and its absence is
/// reported as verification_failed.
WitnessSearch find_nonvanishing_witness(const Polynomial& f, const GridSystem& grid);

/// Row-major visit of every index tuple of a mixed-radix box (last index fastest).
void for_each_index(std::span<const std::size_t> sizes,
                    const std::function<void(std::span<const std::size_t>)>& visit);

/// Evaluates a fixed polynomial on grid points from per-variable power tables.
class GridEvaluator {
 public:
  GridEvaluator(const Polynomial& f, const GridSystem& grid);
  FieldElement operator()(std::span<const std::size_t> index) const;

 private:
  struct Term {
    FieldElement coefficient;
    Monomial exponents;
  };
  std::vector<Term> terms_;
  Field field_;
  // powers_[i][node][e - min_exp_[i]]
  std::vector<std::vector<std::vector<FieldElement>>> powers_;
  std::vector<Exponent> min_exp_;
};

}  // namespace gridres
