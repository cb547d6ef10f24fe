#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridres/poly.hpp"

namespace gridres {

/// Syntax error carrying the byte offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::invalid_input, "syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor (('*'|'/') factor)*      divisors must be nonzero constants
/// factor := base ('^' ['-'] int)?           negative powers of monomials only
/// base   := var | int | '(' expr ')'
/// Variables are `names` when given, else x, y, z (n <= 3; z alone for n = 1)
/// and z1..zn.
Polynomial parse_poly(std::string_view text, std::size_t num_vars, const Field& field,
                      std::span<const std::string> names = {});

}  // namespace gridres
