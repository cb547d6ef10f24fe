#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridres/line_cover.hpp"
#include "gridres/poly.hpp"

namespace gridres {

/// Red, blue and green line families over one field.
struct LineConfiguration {
  Field field = Field::rationals();
  std::vector<ProjLine> red, blue, green;
};

struct GridPoint {
  ProjPoint point;
  std::size_t red;
  std::size_t blue;
};

/// All |red| * |blue| intersection points; throws when two coincide, when a
/// line repeats within a family, or when a line is both red and blue.
std::vector<GridPoint> grid_intersections(const std::vector<ProjLine>& red, const std::vector<ProjLine>& blue);

/// Common point of at least two distinct lines, if any.
std::optional<ProjPoint> concurrency_point(const std::vector<ProjLine>& lines);

struct GreenCoverCheck {
  bool valid = false;
  bool partition = false;  // every grid point on exactly one green line
  std::vector<std::string> problems;
  std::vector<GridPoint> grid;
  std::vector<std::vector<std::size_t>> points_on;  // per green line, indices into grid
};

GreenCoverCheck validate_green_cover(const LineConfiguration& config);

struct GreenSearchOptions {
  /// Only lines through exactly n grid points, covers are partitions.
  bool prune = true;
  std::uint64_t node_budget = 10'000'000;
};

/// Every set of n lines, none red or blue, covering the n x n grid; prime fields
/// only. Families and the list are in canonical order.
std::vector<std::vector<ProjLine>> search_green_covers(const std::vector<ProjLine>& red,
                                                       const std::vector<ProjLine>& blue,
                                                       const GreenSearchOptions& options = {});

/// Product of the canonical linear forms a*x + b*y + c*z.
Polynomial product_form(const Field& field, const std::vector<ProjLine>& lines);

struct ProductDependence {
  FieldElement alpha, beta, gamma;  // alpha*R + beta*B = gamma*G
  ProjPoint center;                 // green concurrency point
  ProjPoint probe;                  // point used to fix gamma
  bool holds;                       // identity checked coefficient by coefficient
};

/// Requires a valid cover with concurrent greens.
ProductDependence verify_product_dependence(const LineConfiguration& config);

/// U = the order-n subgroup of F_p^*; red y = u, blue x = u*y, green x = u.
LineConfiguration roots_of_unity_config(const Field& field, std::size_t n);
/// Red x = c, blue y = c, green y = slope*x + c over all of F_p.
LineConfiguration slope_config(const Field& field, const FieldElement& slope);
/// Multiplicative subgroup of order n, sorted.
std::vector<FieldElement> roots_of_unity(const Field& field, std::size_t n);

LineConfiguration transform(const LineConfiguration& config, const Matrix3& m);

struct BiconcurrentNormal {
  Matrix3 map;                 // sends red center to (0:1:0), green center to (1:0:0)
  std::vector<FieldElement> u;  // red lines become x = u, after centering and rescaling
  std::vector<FieldElement> v;  // green lines become y = v, same normalization
  bool u_subgroup = false;
  bool v_equals_u = false;
  LineConfiguration normalized;  // image of the configuration under `map` (before centering)
};

/// Requires concurrent reds, concurrent greens, a valid cover, n >= 2 and
/// gcd(n, char) = 1.
BiconcurrentNormal normalize_biconcurrent(const LineConfiguration& config);

struct Problem1Bound {
  std::size_t min_lines;
  std::int64_t bound;  // n + m - 2
  LineCover cover;
  bool holds() const { return static_cast<std::int64_t>(min_lines) >= bound; }
};

/// Fewest lines covering the grid minus `excluded` without passing through it.
Problem1Bound check_problem1_bound(const std::vector<ProjLine>& red, const std::vector<ProjLine>& blue,
                                   const ProjPoint& excluded, std::uint64_t node_budget = 1'000'000);

}  // namespace gridres
