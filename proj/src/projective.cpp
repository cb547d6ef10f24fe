#include "gridres/projective.hpp"

#include <algorithm>

namespace gridres {

namespace {

void require_common_field(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  if (!(a.field() == b.field()) || !(b.field() == c.field())) {
    throw Error(ErrorCode::field_mismatch, "homogeneous coordinates from different fields");
  }
}

std::array<FieldElement, 3> cross(const std::array<FieldElement, 3>& u, const std::array<FieldElement, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool lex_less(const std::array<FieldElement, 3>& a, const std::array<FieldElement, 3>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
}

std::string coeff_term(const FieldElement& c, const char* var, bool leading) {
  // renders "+ c*var" pieces of an affine equation; rationals keep their sign
  std::string out;
  FieldElement mag = c;
  bool negative = c.field().is_rational() && c.rational() < 0;
  if (negative) mag = -c;
  if (leading) {
    out += negative ? "-" : "";
  } else {
    out += negative ? " - " : " + ";
  }
  if (var[0] == '\0') return out + mag.to_string();
  if (!mag.is_one()) out += mag.to_string() + "*";
  return out + var;
}

}  // namespace

ProjPoint::ProjPoint(const FieldElement& x, const FieldElement& y, const FieldElement& z) : c_{x, y, z} {
  require_common_field(x, y, z);
  int last = -1;
  for (int i = 2; i >= 0 && last < 0; --i) {
    if (!c_[i].is_zero()) last = i;
  }
  if (last < 0) throw Error(ErrorCode::invalid_input, "projective point with all coordinates zero");
  FieldElement s = c_[last].inverse();
  for (auto& v : c_) v *= s;
}

ProjPoint ProjPoint::affine(const FieldElement& x, const FieldElement& y) {
  return ProjPoint(x, y, x.field().one());
}

std::string ProjPoint::to_string() const {
  if (!at_infinity()) return "(" + c_[0].to_string() + "," + c_[1].to_string() + ")";
  return "(" + c_[0].to_string() + ":" + c_[1].to_string() + ":" + c_[2].to_string() + ")";
}

ProjLine::ProjLine(const FieldElement& a, const FieldElement& b, const FieldElement& c) : c_{a, b, c} {
  require_common_field(a, b, c);
  int first = -1;
  for (int i = 0; i < 3 && first < 0; ++i) {
    if (!c_[i].is_zero()) first = i;
  }
  if (first < 0) throw Error(ErrorCode::invalid_input, "line with all coefficients zero");
  FieldElement s = c_[first].inverse();
  for (auto& v : c_) v *= s;
}

ProjLine ProjLine::at_infinity(const Field& field) { return ProjLine(field.zero(), field.zero(), field.one()); }

FieldElement ProjLine::apply(const ProjPoint& p) const {
  return c_[0] * p[0] + c_[1] * p[1] + c_[2] * p[2];
}

bool ProjLine::contains(const ProjPoint& p) const { return apply(p).is_zero(); }

std::string ProjLine::to_string() const {
  const auto& [a, b, c] = c_;
  if (is_at_infinity()) return "z = 0";
  if (!b.is_zero()) {
    // y = -(a/b) x - c/b
    FieldElement slope = -(a / b), icpt = -(c / b);
    std::string out = "y = ";
    bool leading = true;
    if (!slope.is_zero()) {
      out += coeff_term(slope, "x", true);
      leading = false;
    }
    if (!icpt.is_zero() || leading) out += coeff_term(icpt, "", leading);
    return out;
  }
  return "x = " + coeff_term(-(c / a), "", true);
}

bool ProjPointLess::operator()(const ProjPoint& a, const ProjPoint& b) const { return lex_less(a.coords(), b.coords()); }
bool ProjLineLess::operator()(const ProjLine& a, const ProjLine& b) const { return lex_less(a.coeffs(), b.coeffs()); }

ProjPoint meet(const ProjLine& l, const ProjLine& m) {
  if (l == m) throw Error(ErrorCode::invalid_input, "meet of a line with itself");
  auto p = cross(l.coeffs(), m.coeffs());
  return ProjPoint(p[0], p[1], p[2]);
}

ProjLine join(const ProjPoint& p, const ProjPoint& q) {
  if (p == q) throw Error(ErrorCode::invalid_input, "join of a point with itself");
  auto l = cross(p.coords(), q.coords());
  return ProjLine(l[0], l[1], l[2]);
}

std::vector<ProjLine> all_lines(const Field& field) {
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "line enumeration needs a prime field");
  const std::int64_t p = field.modulus();
  std::vector<ProjLine> out;
  out.reserve(static_cast<std::size_t>(p * p + p + 1));
  out.push_back(ProjLine::at_infinity(field));
  for (std::int64_t c = 0; c < p; ++c) out.emplace_back(field.zero(), field.one(), field.from_int(c));
  for (std::int64_t b = 0; b < p; ++b) {
    for (std::int64_t c = 0; c < p; ++c) out.emplace_back(field.one(), field.from_int(b), field.from_int(c));
  }
  std::sort(out.begin(), out.end(), ProjLineLess{});
  return out;
}

std::vector<ProjPoint> all_points(const Field& field) {
  if (!field.is_prime()) throw Error(ErrorCode::invalid_input, "point enumeration needs a prime field");
  const std::int64_t p = field.modulus();
  std::vector<ProjPoint> out;
  out.emplace_back(field.one(), field.zero(), field.zero());
  for (std::int64_t x = 0; x < p; ++x) out.emplace_back(field.from_int(x), field.one(), field.zero());
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) out.push_back(ProjPoint::affine(field.from_int(x), field.from_int(y)));
  }
  std::sort(out.begin(), out.end(), ProjPointLess{});
  return out;
}

ProjPoint transform_point(const Matrix3& m, const ProjPoint& p) {
  std::array<FieldElement, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2];
  return ProjPoint(out[0], out[1], out[2]);
}

FieldElement determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 inverse(const Matrix3& m) {
  FieldElement det = determinant(m);
  if (det.is_zero()) throw Error(ErrorCode::invalid_input, "singular projective transformation");
  FieldElement s = det.inverse();
  Matrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // adjugate: cofactor of (j, i)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * s;
    }
  }
  return out;
}

ProjLine transform_line(const Matrix3& m, const ProjLine& l) {
  Matrix3 inv = inverse(m);
  std::array<FieldElement, 3> out;
  for (int j = 0; j < 3; ++j) out[j] = l[0] * inv[0][j] + l[1] * inv[1][j] + l[2] * inv[2][j];
  return ProjLine(out[0], out[1], out[2]);
}

}  // namespace gridres
