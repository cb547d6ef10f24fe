#include "gridres/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gridres {

std::int64_t degree_of(const Monomial& m) {
  std::int64_t d = 0;
  for (Exponent e : m) d += e;
  return d;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  std::int64_t da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

Exponent checked_add(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::invalid_input, "exponent overflow");
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(Field field, std::size_t num_vars) : field_(field), num_vars_(num_vars) {}

Polynomial Polynomial::constant(Field field, std::size_t num_vars, const FieldElement& c) {
  Polynomial p(field, num_vars);
  p.add_term(Monomial(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(Field field, std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw Error(ErrorCode::invalid_input, "variable index out of range");
  Monomial m(num_vars, 0);
  m[index] = 1;
  Polynomial p(field, num_vars);
  p.add_term(m, field.one());
  return p;
}

Polynomial Polynomial::term(Field field, Monomial exponents, const FieldElement& c) {
  Polynomial p(field, exponents.size());
  p.add_term(exponents, c);
  return p;
}

Polynomial Polynomial::from_terms(Field field, std::size_t num_vars,
                                  std::span<const std::pair<Monomial, FieldElement>> terms) {
  Polynomial p(field, num_vars);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

bool Polynomial::is_laurent() const {
  for (const auto& [m, c] : terms_) {
    for (Exponent e : m) {
      if (e < 0) return true;
    }
  }
  return false;
}

void Polynomial::check_arity(const Monomial& m) const {
  if (m.size() != num_vars_) {
    throw Error(ErrorCode::field_mismatch, "monomial has " + std::to_string(m.size()) +
                                               " exponents, polynomial has " + std::to_string(num_vars_) +
                                               " variables");
  }
}

void Polynomial::add_term(const Monomial& m, const FieldElement& c) {
  check_arity(m);
  if (!(c.field() == field_)) throw Error(ErrorCode::field_mismatch, "coefficient from a different field");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FieldElement Polynomial::coefficient(const Monomial& m) const {
  check_arity(m);
  auto it = terms_.find(m);
  return it == terms_.end() ? field_.zero() : it->second;
}

std::int64_t Polynomial::total_degree() const {
  if (is_laurent()) throw Error(ErrorCode::invalid_input, "total degree of a Laurent polynomial");
  std::int64_t d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, degree_of(m));
  return d;
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
  if (point.size() != num_vars_) {
    throw Error(ErrorCode::field_mismatch, "point has " + std::to_string(point.size()) +
                                               " coordinates, expected " + std::to_string(num_vars_));
  }
  for (const auto& x : point) {
    if (!(x.field() == field_)) throw Error(ErrorCode::field_mismatch, "point coordinate from a different field");
  }
  FieldElement sum = field_.zero();
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (m[i] == 0) continue;
      if (m[i] < 0 && point[i].is_zero()) {
        throw Error(ErrorCode::division_by_zero,
                    "zero coordinate " + std::to_string(i) + " raised to a negative power");
      }
      t *= point[i].pow(m[i]);
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorCode::invalid_input, "derivative variable index out of range");
  Polynomial out(field_, num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] = checked_add(d[var], -1);
    out.add_term(d, c * field_.from_int(m[var]));
  }
  return out;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result = constant(field_, num_vars_, field_.one());
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  Polynomial out(field_, num_vars_);
  if (c.is_zero()) return out;
  for (const auto& [m, coef] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, coef * c);
  return out;
}

Polynomial Polynomial::translated(std::span<const FieldElement> shift) const {
  if (shift.size() != num_vars_) throw Error(ErrorCode::field_mismatch, "shift has wrong length");
  if (is_laurent()) throw Error(ErrorCode::invalid_input, "cannot translate a Laurent polynomial");
  // one power table per variable: (z_i + s_i)^k
  std::vector<std::vector<Polynomial>> powers(num_vars_);
  Polynomial out(field_, num_vars_);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(field_, num_vars_, c);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      auto& table = powers[i];
      if (table.empty()) table.push_back(constant(field_, num_vars_, field_.one()));
      while (table.size() <= static_cast<std::size_t>(m[i])) {
        Polynomial lin = variable(field_, num_vars_, i) + constant(field_, num_vars_, shift[i]);
        table.push_back(table.back() * lin);
      }
      if (m[i] != 0) t *= table[m[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::homogeneous_part(std::int64_t degree) const {
  Polynomial out(field_, num_vars_);
  for (const auto& [m, c] : terms_) {
    if (degree_of(m) == degree) out.terms_.emplace(m, c);
  }
  return out;
}

void Polynomial::require_compatible(const Polynomial& other, const char* op) const {
  if (!(field_ == other.field_)) {
    throw Error(ErrorCode::field_mismatch, std::string("field mismatch in polynomial ") + op);
  }
  if (num_vars_ != other.num_vars_) {
    throw Error(ErrorCode::field_mismatch, std::string("arity mismatch in polynomial ") + op + ": " +
                                               std::to_string(num_vars_) + " vs " +
                                               std::to_string(other.num_vars_));
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_compatible(rhs, "addition");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_compatible(rhs, "subtraction");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b, "multiplication");
  Polynomial out(a.field_, a.num_vars_);
  Monomial m(a.num_vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked_add(ma[i], mb[i]);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial Polynomial::operator-() const { return scaled(-field_.one()); }

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

std::vector<std::string> default_variable_names(std::size_t num_vars) {
  static const char* xyz[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars; ++i) {
    names.push_back(num_vars <= 3 ? std::string(xyz[i]) : "z" + std::to_string(i + 1));
  }
  return names;
}

std::string Polynomial::to_string() const { return to_string(default_variable_names(num_vars_)); }

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (names.size() != num_vars_) throw Error(ErrorCode::invalid_input, "wrong number of variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    // rationals carry their sign; prime-field coefficients print as residues
    bool negative = field_.is_rational() && c.rational() < 0;
    FieldElement mag = negative ? -c : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool constant_term = std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
    bool need_star = false;
    if (constant_term || !mag.is_one()) {
      os << mag.to_string();
      need_star = true;
    }
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << names[i];
      if (m[i] != 1) os << "^" << m[i];
      need_star = true;
    }
  }
  return os.str();
}

FieldElement coefficient_of(const Polynomial& f, const Monomial& m) { return f.coefficient(m); }
std::int64_t total_degree(const Polynomial& f) { return f.total_degree(); }
FieldElement poly_eval(const Polynomial& f, std::span<const FieldElement> point) { return f.evaluate(point); }
Polynomial partial_derivative(const Polynomial& f, std::size_t var) { return f.derivative(var); }

void require_distinct_nodes(const Field& field, std::span<const FieldElement> nodes, const char* what) {
  std::set<FieldElement, CanonicalLess> seen;
  for (const auto& a : nodes) {
    if (!(a.field() == field)) throw Error(ErrorCode::field_mismatch, std::string(what) + ": node from a different field");
    if (!seen.insert(a).second) {
      throw Error(ErrorCode::duplicate_node,
                  std::string(what) + ": repeated node " + a.to_string() + " (multisets are not supported)");
    }
  }
}

Polynomial vanishing_poly_from_nodes(const Field& field, std::span<const FieldElement> nodes) {
  require_distinct_nodes(field, nodes, "vanishing polynomial");
  Polynomial out = Polynomial::constant(field, 1, field.one());
  Polynomial x = Polynomial::variable(field, 1, 0);
  for (const auto& a : nodes) out *= x - Polynomial::constant(field, 1, a);
  return out;
}

bool PointLess::operator()(const Point& a, const Point& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), CanonicalLess{});
}

std::string point_to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += p[i].to_string();
  }
  return s + ")";
}

}  // namespace gridres
