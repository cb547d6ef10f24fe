#include "gridres/field.hpp"

namespace gridres {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::field_mismatch: return "field_mismatch";
    case ErrorCode::division_by_zero: return "division_by_zero";
    case ErrorCode::duplicate_node: return "duplicate_node";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::verification_failed: return "verification_failed";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw Error(ErrorCode::invalid_input, "modulus must be below 2^31");
  }
  if (!gridres::is_prime(p)) {
    throw Error(ErrorCode::invalid_input, "modulus not prime: " + std::to_string(p));
  }
  return Field(Kind::prime, static_cast<std::uint32_t>(p));
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(std::int64_t v) const {
  if (is_prime()) {
    std::int64_t r = v % static_cast<std::int64_t>(modulus_);
    if (r < 0) r += modulus_;
    return FieldElement(*this, static_cast<std::uint32_t>(r));
  }
  return FieldElement(*this, mpq_class(mpz_class(static_cast<long>(v))));
}

FieldElement Field::from_mpz(const mpz_class& v) const {
  if (is_prime()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), modulus_);
    return FieldElement(*this, static_cast<std::uint32_t>(r.get_ui()));
  }
  return FieldElement(*this, mpq_class(v));
}

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) {
    throw Error(ErrorCode::invalid_input, "malformed field element: '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw Error(ErrorCode::invalid_input, "malformed field element: '" + std::string(whole) + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

FieldElement Field::parse(std::string_view text) const {
  std::string_view t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return from_mpz(parse_integer(t, text));
  mpz_class num = parse_integer(trim(t.substr(0, slash)), text);
  mpz_class den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + std::string(text) + "'");
  return from_mpz(num) / from_mpz(den);
}

std::string Field::to_string() const {
  return is_prime() ? "F_" + std::to_string(modulus_) : "Q";
}

void FieldElement::require_same_field(const FieldElement& other, const char* op) const {
  if (!(field_ == other.field_)) {
    throw Error(ErrorCode::field_mismatch, std::string("field mismatch in ") + op + ": " +
                                               field_.to_string() + " vs " + other.field_.to_string());
  }
}

bool FieldElement::is_zero() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(rep_) == 0;
  return std::get<mpq_class>(rep_) == 0;
}

bool FieldElement::is_one() const {
  if (field_.is_prime()) return std::get<std::uint32_t>(rep_) == 1;
  return std::get<mpq_class>(rep_) == 1;
}

std::uint32_t FieldElement::residue() const {
  if (!field_.is_prime()) throw Error(ErrorCode::invalid_input, "residue() on a rational element");
  return std::get<std::uint32_t>(rep_);
}

const mpq_class& FieldElement::rational() const {
  if (!field_.is_rational()) throw Error(ErrorCode::invalid_input, "rational() on a prime-field element");
  return std::get<mpq_class>(rep_);
}

bool FieldElement::to_integer(mpz_class& out) const {
  if (field_.is_prime()) {
    std::uint32_t r = std::get<std::uint32_t>(rep_);
    std::int64_t v = r;
    if (2 * static_cast<std::uint64_t>(r) > field_.modulus()) v -= field_.modulus();
    out = mpz_class(static_cast<long>(v));
    return true;
  }
  const mpq_class& q = std::get<mpq_class>(rep_);
  if (q.get_den() != 1) return false;
  out = q.get_num();
  return true;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  if (field_.is_prime()) {
    // extended Euclid on (r, p)
    std::int64_t a = std::get<std::uint32_t>(rep_), b = field_.modulus();
    std::int64_t x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    std::int64_t p = field_.modulus();
    x0 %= p;
    if (x0 < 0) x0 += p;
    return FieldElement(field_, static_cast<std::uint32_t>(x0));
  }
  mpq_class q = 1 / std::get<mpq_class>(rep_);
  q.canonicalize();
  return FieldElement(field_, std::move(q));
}

FieldElement FieldElement::pow(std::int64_t exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = field_.one();
  FieldElement base = *this;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(rhs, "addition");
  if (field_.is_prime()) {
    std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(rep_)} + std::get<std::uint32_t>(rhs.rep_);
    if (s >= field_.modulus()) s -= field_.modulus();
    rep_ = static_cast<std::uint32_t>(s);
  } else {
    std::get<mpq_class>(rep_) += std::get<mpq_class>(rhs.rep_);
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_field(rhs, "subtraction");
  if (field_.is_prime()) {
    std::uint64_t a = std::get<std::uint32_t>(rep_);
    std::uint64_t b = std::get<std::uint32_t>(rhs.rep_);
    rep_ = static_cast<std::uint32_t>(a >= b ? a - b : a + field_.modulus() - b);
  } else {
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(rhs.rep_);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same_field(rhs, "multiplication");
  if (field_.is_prime()) {
    std::uint64_t prod = std::uint64_t{std::get<std::uint32_t>(rep_)} * std::get<std::uint32_t>(rhs.rep_);
    rep_ = static_cast<std::uint32_t>(prod % field_.modulus());
  } else {
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(rhs.rep_);
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  require_same_field(rhs, "division");
  return *this *= rhs.inverse();
}

FieldElement FieldElement::operator-() const {
  if (field_.is_prime()) {
    std::uint32_t r = std::get<std::uint32_t>(rep_);
    return FieldElement(field_, r == 0 ? 0U : field_.modulus() - r);
  }
  return FieldElement(field_, mpq_class(-std::get<mpq_class>(rep_)));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.field_.is_prime()) return std::get<std::uint32_t>(a.rep_) == std::get<std::uint32_t>(b.rep_);
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

std::string FieldElement::to_string() const {
  if (field_.is_prime()) return std::to_string(std::get<std::uint32_t>(rep_));
  return std::get<mpq_class>(rep_).get_str();
}

bool canonical_less(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::field_mismatch, "comparing elements of different fields");
  }
  if (a.field().is_prime()) return a.residue() < b.residue();
  return a.rational() < b.rational();
}

FieldElement inv(const FieldElement& a) { return a.inverse(); }

std::vector<FieldElement> batch_inverse(std::span<const FieldElement> values) {
  std::vector<FieldElement> out;
  if (values.empty()) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_zero()) throw ZeroEntryError(i);
  }
  const Field field = values.front().field();
  // prefix[i] = v_0 * ... * v_{i-1}
  std::vector<FieldElement> prefix;
  prefix.reserve(values.size());
  FieldElement acc = field.one();
  for (const auto& v : values) {
    prefix.push_back(acc);
    acc *= v;
  }
  FieldElement running = acc.inverse();
  out.resize(values.size());
  for (std::size_t i = values.size(); i-- > 0;) {
    out[i] = running * prefix[i];
    running *= values[i];
  }
  return out;
}

}  // namespace gridres
