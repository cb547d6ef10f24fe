#include "gridres/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace gridres {

namespace {

constexpr std::int64_t kMaxPower = 4096;

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, const Field& field, std::map<std::string, std::size_t> vars)
      : s_(text), n_(n), field_(field), vars_(std::move(vars)) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Polynomial d = factor();
        bool constant = d.terms().size() == 1 && d.terms().begin()->first == Monomial(n_, 0);
        if (d.is_zero()) throw ParseError(at, "division by zero");
        if (!constant) throw ParseError(at, "only division by a constant is supported");
        acc = acc.scaled(d.terms().begin()->second.inverse());
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial b = base();
    if (!eat('^')) return b;
    skip();
    bool negative = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    std::size_t at = pos_;
    mpz_class e = integer("exponent");
    if (e > kMaxPower) throw ParseError(at, "exponent overflow");
    std::int64_t k = e.get_si();
    if (!negative) return b.pow(static_cast<std::uint32_t>(k));
    if (b.is_zero()) throw ParseError(at, "division by zero");
    if (b.terms().size() != 1) throw ParseError(at, "negative powers need a monomial base");
    const auto& [m, c] = *b.terms().begin();
    Monomial out;
    for (Exponent x : m) {
      std::int64_t v = -static_cast<std::int64_t>(x) * k;
      if (v < INT32_MIN || v > INT32_MAX) throw ParseError(at, "exponent overflow");
      out.push_back(static_cast<Exponent>(v));
    }
    return Polynomial::term(field_, out, c.pow(-k));
  }

  Polynomial base() {
    skip();
    if (pos_ >= s_.size()) fail("expected a variable, integer or '(' but reached the end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(field_, n_, field_.from_mpz(integer("integer")));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = vars_.find(name);
      if (it == vars_.end()) throw ParseError(start, "unknown variable '" + name + "'");
      return Polynomial::variable(field_, n_, it->second);
    }
    fail("expected a variable, integer or '('");
  }

  mpz_class integer(const char* what) {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t n_;
  Field field_;
  std::map<std::string, std::size_t> vars_;
};

}  // namespace

Polynomial parse_poly(std::string_view text, std::size_t num_vars, const Field& field,
                      std::span<const std::string> names) {
  std::map<std::string, std::size_t> vars;
  if (!names.empty()) {
    if (names.size() != num_vars) throw Error(ErrorCode::invalid_input, "variable name count does not match arity");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!vars.emplace(names[i], i).second) throw Error(ErrorCode::invalid_input, "repeated variable " + names[i]);
    }
  } else {
    for (std::size_t i = 0; i < num_vars; ++i) vars.emplace("z" + std::to_string(i + 1), i);
    if (num_vars <= 3) {
      auto defaults = default_variable_names(num_vars);
      for (std::size_t i = 0; i < num_vars; ++i) vars[defaults[i]] = i;
    }
    if (num_vars == 1) vars.emplace("z", 0);
  }
  return Parser(text, num_vars, field, std::move(vars)).run();
}

}  // namespace gridres
