#include "gridres/nullstellensatz.hpp"

#include <algorithm>

namespace gridres {

GridSystem::GridSystem(Field field, std::vector<std::vector<FieldElement>> node_sets)
    : field_(field), nodes_(std::move(node_sets)) {
  if (nodes_.empty()) throw Error(ErrorCode::invalid_input, "grid needs at least one variable");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].empty()) {
      throw Error(ErrorCode::invalid_input, "node set " + std::to_string(i + 1) + " is empty");
    }
    require_distinct_nodes(field_, nodes_[i], "grid node set");
    std::sort(nodes_[i].begin(), nodes_[i].end(), CanonicalLess{});
  }
}

std::vector<std::size_t> GridSystem::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& a : nodes_) out.push_back(a.size());
  return out;
}

std::size_t GridSystem::num_points() const {
  std::size_t n = 1;
  for (const auto& a : nodes_) n *= a.size();
  return n;
}

Monomial GridSystem::target_exponent() const {
  Monomial c;
  for (const auto& a : nodes_) c.push_back(static_cast<Exponent>(a.size()) - 1);
  return c;
}

Point GridSystem::point(std::span<const std::size_t> index) const {
  Point p;
  p.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) p.push_back(nodes_[i].at(index[i]));
  return p;
}

std::vector<FieldElement> grid_weights(const Field& field, std::span<const FieldElement> nodes) {
  require_distinct_nodes(field, nodes, "grid weights");
  std::vector<FieldElement> derivs;
  derivs.reserve(nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    FieldElement d = field.one();
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (a != b) d *= nodes[a] - nodes[b];
    }
    derivs.push_back(d);
  }
  return batch_inverse(derivs);
}

namespace {

void require_polynomial(const Polynomial& f, const char* what) {
  if (f.is_laurent()) {
    throw Error(ErrorCode::invalid_input, std::string(what) + " requires nonnegative exponents");
  }
}

void require_target(const Polynomial& f, const Monomial& target) {
  if (target.size() != f.num_vars()) {
    throw Error(ErrorCode::field_mismatch, "target exponent length differs from variable count");
  }
  for (Exponent c : target) {
    if (c < 0) throw Error(ErrorCode::invalid_input, "target exponents must be nonnegative");
  }
}

void require_grid_match(const Polynomial& f, const GridSystem& grid) {
  if (!(f.field() == grid.field())) throw Error(ErrorCode::field_mismatch, "polynomial and grid use different fields");
  if (f.num_vars() != grid.dimension()) {
    throw Error(ErrorCode::field_mismatch, "polynomial has " + std::to_string(f.num_vars()) +
                                               " variables, grid has " + std::to_string(grid.dimension()));
  }
}

}  // namespace

bool check_classical_degree(const Polynomial& f, const Monomial& target) {
  require_polynomial(f, "degree check");
  require_target(f, target);
  return f.total_degree() <= degree_of(target);
}

bool check_relaxed_support(const Polynomial& f, const Monomial& target) {
  require_polynomial(f, "support check");
  require_target(f, target);
  for (const auto& [d, c] : f.terms()) {
    if (d == target) continue;
    bool below = false;
    for (std::size_t i = 0; i < d.size() && !below; ++i) below = d[i] < target[i];
    if (!below) return false;
  }
  return true;
}

void for_each_index(std::span<const std::size_t> sizes,
                    const std::function<void(std::span<const std::size_t>)>& visit) {
  for (std::size_t s : sizes) {
    if (s == 0) return;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    visit(idx);
    std::size_t k = sizes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (sizes.empty()) return;
  }
}

GridEvaluator::GridEvaluator(const Polynomial& f, const GridSystem& grid) : field_(f.field()) {
  require_grid_match(f, grid);
  const std::size_t n = f.num_vars();
  std::vector<Exponent> max_exp(n, 0);
  min_exp_.assign(n, 0);
  for (const auto& [m, c] : f.terms()) {
    terms_.push_back({c, m});
    for (std::size_t i = 0; i < n; ++i) {
      max_exp[i] = std::max(max_exp[i], m[i]);
      min_exp_[i] = std::min(min_exp_[i], m[i]);
    }
  }
  powers_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : grid.nodes(i)) {
      if (min_exp_[i] < 0 && a.is_zero()) {
        throw Error(ErrorCode::division_by_zero, "grid node 0 raised to a negative power");
      }
      std::vector<FieldElement> row;
      row.reserve(static_cast<std::size_t>(max_exp[i] - min_exp_[i]) + 1);
      FieldElement p = a.pow(min_exp_[i]);
      for (Exponent e = min_exp_[i]; e <= max_exp[i]; ++e) {
        row.push_back(p);
        p *= a;
      }
      powers_[i].push_back(std::move(row));
    }
  }
}

FieldElement GridEvaluator::operator()(std::span<const std::size_t> index) const {
  FieldElement sum = field_.zero();
  for (const auto& t : terms_) {
    FieldElement v = t.coefficient;
    for (std::size_t i = 0; i < powers_.size(); ++i) {
      v *= powers_[i][index[i]][t.exponents[i] - min_exp_[i]];
    }
    sum += v;
  }
  return sum;
}

FieldElement coefficient_via_grid(const Polynomial& f, const GridSystem& grid) {
  require_grid_match(f, grid);
  const Monomial target = grid.target_exponent();
  if (!check_relaxed_support(f, target)) {
    throw Error(ErrorCode::precondition,
                "relaxed support condition fails: some monomial other than the target dominates it");
  }
  std::vector<std::vector<FieldElement>> weights;
  for (std::size_t i = 0; i < grid.dimension(); ++i) weights.push_back(grid_weights(grid.field(), grid.nodes(i)));

  GridEvaluator eval(f, grid);
  FieldElement sum = grid.field().zero();
  const auto sizes = grid.sizes();
  for_each_index(sizes, [&](std::span<const std::size_t> idx) {
    FieldElement v = eval(idx);
    if (v.is_zero()) return;
    for (std::size_t i = 0; i < idx.size(); ++i) v *= weights[i][idx[i]];
    sum += v;
  });
  return sum;
}

WitnessSearch find_nonvanishing_witness(const Polynomial& f, const GridSystem& grid) {
  WitnessSearch out{coefficient_via_grid(f, grid), std::nullopt};
  GridEvaluator eval(f, grid);
  const auto sizes = grid.sizes();
  // for_each_index cannot break early; a manual odometer keeps the scan lazy
  std::vector<std::size_t> idx(sizes.size(), 0);
  while (true) {
    FieldElement v = eval(idx);
    if (!v.is_zero()) {
      out.witness = GridWitness{grid.point(idx), v};
      return out;
    }
    std::size_t k = sizes.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < sizes[k]) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) break;
  }
  if (!out.coefficient.is_zero()) {
    throw Error(ErrorCode::verification_failed,
                "nonzero grid coefficient but f vanishes on the whole grid");
  }
  return out;
}

}  // namespace gridres
