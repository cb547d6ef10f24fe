#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridres {

/// Integer vector: lattice points, exponents of Newton polytopes, directions.
using IntVec = std::vector<std::int64_t>;

std::string to_string(const IntVec& v);

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVec primitive(const IntVec& v);
/// Exact dot product; throws if it does not fit in 64 bits.
std::int64_t dot(const IntVec& a, const IntVec& b);
IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);

/// Rank over Q.
std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols);
/// Basis of {x : row . x = 0 for every row}, as primitive integer vectors.
std::vector<IntVec> integer_nullspace(const std::vector<IntVec>& rows, std::size_t cols);
/// Columns holding the pivots of the row echelon form (first-choice pivots, left to right).
std::vector<std::size_t> pivot_columns(const std::vector<IntVec>& rows, std::size_t cols);

/// <a, u> < 0 when strict, <a, u> <= 0 otherwise.
struct LinearConstraint {
  IntVec a;
  bool strict = true;
};

/// Exact Fourier-Motzkin elimination for a homogeneous system. Returns a primitive
/// integer solution, or nullopt when the system is infeasible. With no strict
/// constraints the zero vector is a valid answer.
std::optional<IntVec> solve_homogeneous(const std::vector<LinearConstraint>& constraints, std::size_t dim);

}  // namespace gridres
