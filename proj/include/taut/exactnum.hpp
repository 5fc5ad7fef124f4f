#pragma once

// Exact arithmetic: integer polynomials in the genus symbol g and the field
// Q(g) of rational functions in canonical form.

#include <compare>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace taut {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Polynomial in g with integer coefficients, stored low degree first and
/// without trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(BigInt c);  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<BigInt> coeffs);

  static Poly g();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool isZero() const { return coeffs_.empty(); }
  bool isConstant() const { return coeffs_.size() <= 1; }
  const BigInt& lead() const { return coeffs_.back(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(int i) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Rational eval(const Rational& x) const;

  /// Plain-text form in the scalar grammar, e.g. `2*g-2`.
  std::string str() const;
  std::string latex() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Positive gcd of the coefficients (0 for the zero polynomial).
BigInt content(const Poly& p);
Poly primitivePart(const Poly& p);
/// Pseudo-remainder of a by b (b nonzero).
Poly pseudoRemainder(const Poly& a, const Poly& b);
/// Gcd over Q, returned primitive with positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);
/// Quotient a / b; requires b | a over Q and b primitive.
Poly divExact(const Poly& a, const Poly& b);

/// Element of Q(g): numerator/denominator integer polynomials, coprime over Q,
/// with jointly primitive coefficients and positive leading denominator
/// coefficient. Zero is 0/1. Equal values have identical representations.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long c);  // NOLINT(google-explicit-constructor)
  RatFunc(const BigInt& c);  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& p);  // NOLINT(google-explicit-constructor)
  /// Throws RefusalError if den is zero.
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc g();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_ == den_; }
  bool isConstant() const { return num_.isConstant() && den_.isConstant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& b);
  RatFunc& operator-=(const RatFunc& b);
  RatFunc& operator*=(const RatFunc& b);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  /// Throws RefusalError on division by zero.
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  RatFunc inverse() const;
  RatFunc pow(unsigned e) const;

  /// Exact value at g = g0; throws RefusalError at a pole.
  Rational eval(const Rational& g0) const;

  /// Text in the scalar grammar; parse(str()) reproduces the value.
  std::string str() const;
  std::string latex() const;

 private:
  void reduce();
  Poly num_;
  Poly den_;
};

/// Parses the scalar grammar: integers, `g`, `+ - * / ^`, parentheses.
RatFunc parseRatFunc(std::string_view text);

/// Parses `3`, `-7/4` or `generic`-free rationals used for numeric genus.
Rational parseRational(std::string_view text);

std::string rationalLatex(const Rational& q);

}  // namespace taut
