#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridres/field.hpp"

namespace gridres {

using Exponent = std::int32_t;
/// Exponent vector z^v; entries may be negative (Laurent monomials).
using Monomial = std::vector<Exponent>;
using Point = std::vector<FieldElement>;

std::int64_t degree_of(const Monomial& m);

/// Graded order, highest total degree first, ties broken lexicographically
/// (larger exponent of the first differing variable first).
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate Laurent polynomial. No zero coefficient is ever stored,
/// so two polynomials are equal iff their term maps are identical.
class Polynomial {
 public:
  using Terms = std::map<Monomial, FieldElement, GrlexDescending>;

  Polynomial(Field field, std::size_t num_vars);

  static Polynomial constant(Field field, std::size_t num_vars, const FieldElement& c);
  static Polynomial variable(Field field, std::size_t num_vars, std::size_t index);
  static Polynomial term(Field field, Monomial exponents, const FieldElement& c);
  /// Duplicate monomials are summed; zero sums dropped.
  static Polynomial from_terms(Field field, std::size_t num_vars,
                               std::span<const std::pair<Monomial, FieldElement>> terms);

  const Field& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_laurent() const;

  void add_term(const Monomial& m, const FieldElement& c);

  FieldElement coefficient(const Monomial& m) const;
  /// -1 for the zero polynomial; throws on Laurent input.
  std::int64_t total_degree() const;
  FieldElement evaluate(std::span<const FieldElement> point) const;
  Polynomial derivative(std::size_t var) const;
  Polynomial pow(std::uint32_t e) const;
  Polynomial scaled(const FieldElement& c) const;
  /// f(z + shift); polynomial (non-Laurent) input only.
  Polynomial translated(std::span<const FieldElement> shift) const;
  /// Homogeneous part of the given total degree.
  Polynomial homogeneous_part(std::int64_t degree) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Uses default_variable_names(num_vars()) unless names are given.
  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

 private:
  void require_compatible(const Polynomial& other, const char* op) const;
  void check_arity(const Monomial& m) const;

  Field field_;
  std::size_t num_vars_;
  Terms terms_;
};

/// x, y, z for up to three variables (x alone for one), z1..zn beyond.
std::vector<std::string> default_variable_names(std::size_t num_vars);

FieldElement coefficient_of(const Polynomial& f, const Monomial& m);
std::int64_t total_degree(const Polynomial& f);
FieldElement poly_eval(const Polynomial& f, std::span<const FieldElement> point);
Polynomial partial_derivative(const Polynomial& f, std::size_t var);

/// prod_{a in nodes} (x - a) as a one-variable polynomial; rejects repeated nodes.
Polynomial vanishing_poly_from_nodes(const Field& field, std::span<const FieldElement> nodes);

/// Rejects repeated nodes and nodes from a foreign field.
void require_distinct_nodes(const Field& field, std::span<const FieldElement> nodes, const char* what);

/// Lexicographic order on points using canonical_less coordinate-wise.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

std::string point_to_string(const Point& p);

}  // namespace gridres
