#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "gridres/error.hpp"

namespace gridres {

class FieldElement;

/// Descriptor of the scalar field: a prime field F_p (p < 2^31) or the rationals.
class Field {
 public:
  enum class Kind : std::uint8_t { prime, rational };

  /// Throws invalid_input unless 2 <= p < 2^31 and p is prime.
  static Field prime(std::uint64_t p);
  static Field rationals() { return Field(Kind::rational, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  bool is_rational() const noexcept { return kind_ == Kind::rational; }
  /// 0 for the rationals.
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t characteristic() const noexcept { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_mpz(const mpz_class& v) const;
  /// Accepts a decimal integer, or "a/b" (both fields; F_p divides by b).
  FieldElement parse(std::string_view text) const;

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

/// Exact scalar. Canonical form: 0 <= v < p in F_p, reduced fraction with positive
/// denominator in Q. Equality is structural.
class FieldElement {
 public:
  /// Rational zero; exists so elements can live in standard containers.
  FieldElement() : field_(Field::rationals()), rep_(mpq_class(0)) {}

  const Field& field() const noexcept { return field_; }

  bool is_zero() const;
  bool is_one() const;

  /// Canonical residue; only valid in F_p.
  std::uint32_t residue() const;
  /// Canonical fraction; only valid in Q.
  const mpq_class& rational() const;

  /// Writes the integer value and returns true if the element is an integer.
  /// In F_p this always succeeds with the symmetric representative in (-p/2, p/2].
  bool to_integer(mpz_class& out) const;

  FieldElement inverse() const;
  FieldElement pow(std::int64_t exponent) const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  friend class Field;
  FieldElement(Field field, std::uint32_t residue) : field_(field), rep_(residue) {}
  FieldElement(Field field, mpq_class q) : field_(field), rep_(std::move(q)) {}

  void require_same_field(const FieldElement& other, const char* op) const;

  Field field_;
  std::variant<std::uint32_t, mpq_class> rep_;
};

/// Deterministic total order used for canonical sorting (numeric in Q, by residue in F_p).
bool canonical_less(const FieldElement& a, const FieldElement& b);

struct CanonicalLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const {
    return canonical_less(a, b);
  }
};

FieldElement inv(const FieldElement& a);

/// Montgomery's trick: one inversion plus 3(len-1) multiplications.
/// Throws ZeroEntryError naming the first zero entry.
std::vector<FieldElement> batch_inverse(std::span<const FieldElement> values);

}  // namespace gridres
