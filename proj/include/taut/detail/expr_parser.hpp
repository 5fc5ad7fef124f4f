#pragma once

// Recursive-descent parser shared by the scalar grammar (exactnum) and the
// tautological-class grammar (tautring).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'g' | name '(' integer (',' integer)* ')' | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "taut/error.hpp"

namespace taut::detail {

template <class Value, class Atoms>
class ExprParser {
 public:
  ExprParser(std::string_view text, const Atoms& atoms) : text_(text), atoms_(atoms) {}

  Value parse() {
    Value v = expr();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected character", "operator or end of input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError(what, pos_, expected);
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail("unexpected input", std::string("'") + c + "'");
  }

  bool peekDigit() {
    skipSpace();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  mpz_class integer() {
    if (!peekDigit()) fail("unexpected input", "integer");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  long smallInteger() {
    bool negative = accept('-');
    mpz_class z = integer();
    if (!z.fits_slong_p()) fail("integer too large", "small integer");
    long v = z.get_si();
    return negative ? -v : v;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = unary();
        v = atoms_.divide(v, d, at);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (accept('^')) {
      mpz_class e = integer();
      if (!e.fits_uint_p() || e > 64) fail("exponent out of range", "exponent in 0..64");
      Value result = atoms_.one(base);
      for (unsigned long i = 0; i < e.get_ui(); ++i) result = result * base;
      return result;
    }
    return base;
  }

  Value primary() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input", "integer, 'g', name or '('");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return atoms_.integer(integer());
    if (accept('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "g") return atoms_.genus();
      expect('(');
      std::vector<long> args{smallInteger()};
      while (accept(',')) args.push_back(smallInteger());
      expect(')');
      return atoms_.call(name, args, start);
    }
    fail("unexpected character", "integer, 'g', name or '('");
  }

  std::string_view text_;
  const Atoms& atoms_;
  std::size_t pos_ = 0;
};

}  // namespace taut::detail
