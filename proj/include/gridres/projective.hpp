#pragma once

#include <array>
#include <string>
#include <vector>

#include "gridres/field.hpp"

namespace gridres {

/// Point [x:y:z] of the projective plane, scaled so its last nonzero coordinate
/// is 1 (affine points read (x, y, 1)).
class ProjPoint {
 public:
  ProjPoint(const FieldElement& x, const FieldElement& y, const FieldElement& z);
  static ProjPoint affine(const FieldElement& x, const FieldElement& y);

  const std::array<FieldElement, 3>& coords() const noexcept { return c_; }
  const FieldElement& operator[](std::size_t i) const { return c_[i]; }
  const Field& field() const noexcept { return c_[0].field(); }
  bool at_infinity() const { return c_[2].is_zero(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  std::string to_string() const;

 private:
  std::array<FieldElement, 3> c_;
};

/// Line a*x + b*y + c*z = 0, scaled so its first nonzero coefficient is 1.
class ProjLine {
 public:
  ProjLine(const FieldElement& a, const FieldElement& b, const FieldElement& c);
  static ProjLine at_infinity(const Field& field);

  const std::array<FieldElement, 3>& coeffs() const noexcept { return c_; }
  const FieldElement& operator[](std::size_t i) const { return c_[i]; }
  const Field& field() const noexcept { return c_[0].field(); }
  bool is_at_infinity() const { return c_[0].is_zero() && c_[1].is_zero(); }

  bool contains(const ProjPoint& p) const;
  FieldElement apply(const ProjPoint& p) const;

  friend bool operator==(const ProjLine&, const ProjLine&) = default;
  /// Affine equation when possible ("y = 2*x + 1", "x = 3"), else "[a:b:c]".
  std::string to_string() const;

 private:
  std::array<FieldElement, 3> c_;
};

struct ProjPointLess {
  bool operator()(const ProjPoint& a, const ProjPoint& b) const;
};
struct ProjLineLess {
  bool operator()(const ProjLine& a, const ProjLine& b) const;
};

/// Intersection of two distinct lines.
ProjPoint meet(const ProjLine& l, const ProjLine& m);
/// Line through two distinct points.
ProjLine join(const ProjPoint& p, const ProjPoint& q);

/// Every line of PG(2, p), in canonical order; prime fields only.
std::vector<ProjLine> all_lines(const Field& field);
/// Every point of PG(2, p), in canonical order; prime fields only.
std::vector<ProjPoint> all_points(const Field& field);

/// 3x3 matrix acting on column vectors of point coordinates.
using Matrix3 = std::array<std::array<FieldElement, 3>, 3>;

ProjPoint transform_point(const Matrix3& m, const ProjPoint& p);
/// Image of a line under the point map p -> m p, i.e. l -> l * m^{-1}.
ProjLine transform_line(const Matrix3& m, const ProjLine& l);
Matrix3 inverse(const Matrix3& m);
FieldElement determinant(const Matrix3& m);

}  // namespace gridres
