#include "taut/exactnum.hpp"

#include <algorithm>
#include <utility>

#include "taut/detail/expr_parser.hpp"
#include "taut/error.hpp"

namespace taut {

Poly::Poly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

Poly::Poly(BigInt c) {
  if (c != 0) coeffs_.push_back(std::move(c));
}

Poly::Poly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::g() { return Poly(std::vector<BigInt>{0, 1}); }

BigInt Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& big = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const auto& small = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
  Poly r = big;
  for (std::size_t i = 0; i < small.coeffs_.size(); ++i) r.coeffs_[i] += small.coeffs_[i];
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  acc.canonicalize();
  return acc;
}

namespace {

std::string polyText(const Poly& p, bool latex) {
  if (p.isZero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    BigInt c = p.coeff(k);
    if (c == 0) continue;
    bool negative = c < 0;
    BigInt a = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    std::string var;
    if (k == 1) var = "g";
    if (k > 1) var = latex ? "g^{" + std::to_string(k) + "}" : "g^" + std::to_string(k);
    if (var.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += var;
    } else {
      out += a.get_str() + (latex ? "" : "*") + var;
    }
  }
  return out;
}

bool singleTerm(const Poly& p) {
  return std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const BigInt& c) { return c != 0; }) <= 1;
}

}  // namespace

std::string Poly::str() const { return polyText(*this, false); }
std::string Poly::latex() const { return polyText(*this, true); }

BigInt content(const Poly& p) {
  BigInt c = 0;
  for (const auto& x : p.coeffs()) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    if (c == 1) break;
  }
  return c;
}

Poly primitivePart(const Poly& p) {
  if (p.isZero()) return p;
  BigInt c = content(p);
  if (p.lead() < 0) c = -c;
  std::vector<BigInt> r = p.coeffs();
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return Poly(std::move(r));
}

Poly pseudoRemainder(const Poly& a, const Poly& b) {
  if (b.isZero()) throw RefusalError("pseudo-remainder by the zero polynomial");
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const BigInt& lb = b.lead();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    BigInt lr = r.back();
    for (auto& x : r) x *= lb;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= lr * b.coeffs()[static_cast<std::size_t>(i)];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return Poly(std::move(r));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = primitivePart(a);
  Poly y = primitivePart(b);
  if (x.isZero()) return y;
  if (y.isZero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.isZero()) {
    if (y.degree() == 0) return Poly(1);
    Poly r = primitivePart(pseudoRemainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Poly divExact(const Poly& a, const Poly& b) {
  if (b.isZero()) throw RefusalError("division by the zero polynomial");
  if (a.isZero()) return {};
  if (a.degree() < b.degree()) throw InvariantError("inexact polynomial division");
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int k = a.degree() - db; k >= 0; --k) {
    BigInt& top = r[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) throw InvariantError("inexact polynomial division");
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k + i)] -= c * b.coeffs()[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(k)] = std::move(c);
  }
  for (const auto& x : r)
    if (x != 0) throw InvariantError("inexact polynomial division");
  return Poly(std::move(q));
}

// --- RatFunc ---------------------------------------------------------------

RatFunc::RatFunc(long c) : num_(c), den_(1) {}
RatFunc::RatFunc(const BigInt& c) : num_(c), den_(1) {}
RatFunc::RatFunc(const Rational& c) : num_(BigInt(c.get_num())), den_(BigInt(c.get_den())) { reduce(); }
RatFunc::RatFunc(const Poly& p) : num_(p), den_(1) { reduce(); }

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.isZero()) throw RefusalError("division by zero");
  reduce();
}

RatFunc RatFunc::g() { return RatFunc(Poly::g()); }

void RatFunc::reduce() {
  if (num_.isZero()) {
    den_ = Poly(1);
    return;
  }
  if (!num_.isConstant() && !den_.isConstant()) {
    Poly common = gcd(num_, den_);
    if (common.degree() > 0) {
      num_ = divExact(num_, common);
      den_ = divExact(den_, common);
    }
  }
  BigInt c = content(num_);
  BigInt cd = content(den_);
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den_.lead() < 0) c = -c;
  if (c != 1) {
    std::vector<BigInt> n = num_.coeffs();
    std::vector<BigInt> d = den_.coeffs();
    for (auto& x : n) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    for (auto& x : d) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    num_ = Poly(std::move(n));
    den_ = Poly(std::move(d));
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& b) {
  if (b.isZero()) return *this;
  if (isZero()) return *this = b;
  if (den_ == b.den_) {
    num_ = num_ + b.num_;
  } else {
    num_ = num_ * b.den_ + b.num_ * den_;
    den_ = den_ * b.den_;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& b) { return *this += -b; }

RatFunc& RatFunc::operator*=(const RatFunc& b) {
  if (isZero()) return *this;
  if (b.isZero()) return *this = RatFunc();
  num_ = num_ * b.num_;
  den_ = den_ * b.den_;
  reduce();
  return *this;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
  if (isZero()) throw RefusalError("division by zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(unsigned e) const {
  RatFunc r(1);
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

Rational RatFunc::eval(const Rational& g0) const {
  Rational d = den_.eval(g0);
  if (d == 0) throw RefusalError("pole at g = " + g0.get_str());
  Rational r = num_.eval(g0) / d;
  r.canonicalize();
  return r;
}

std::string RatFunc::str() const {
  if (den_ == Poly(1)) return num_.str();
  std::string n = singleTerm(num_) ? num_.str() : "(" + num_.str() + ")";
  std::string d = den_.isConstant() ? den_.str() : "(" + den_.str() + ")";
  return n + "/" + d;
}

std::string RatFunc::latex() const {
  if (den_ == Poly(1)) return num_.latex();
  if (num_.isConstant() && num_.lead() < 0) return "-\\frac{" + (-num_).latex() + "}{" + den_.latex() + "}";
  return "\\frac{" + num_.latex() + "}{" + den_.latex() + "}";
}

std::string rationalLatex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  std::string sign = q < 0 ? "-" : "";
  return sign + "\\frac{" + BigInt(abs(q.get_num())).get_str() + "}{" + q.get_den().get_str() + "}";
}

namespace {

struct ScalarAtoms {
  RatFunc integer(const BigInt& z) const { return RatFunc(z); }
  RatFunc genus() const { return RatFunc::g(); }
  RatFunc one(const RatFunc&) const { return RatFunc(1); }
  RatFunc divide(const RatFunc& a, const RatFunc& b, std::size_t pos) const {
    if (b.isZero()) throw ParseError("division by zero", pos, "nonzero divisor");
    return a / b;
  }
  RatFunc call(const std::string& name, const std::vector<long>&, std::size_t pos) const {
    throw ParseError("unknown name '" + name + "'", pos, "integer, 'g' or '('");
  }
};

}  // namespace

RatFunc parseRatFunc(std::string_view text) {
  ScalarAtoms atoms;
  return detail::ExprParser<RatFunc, ScalarAtoms>(text, atoms).parse();
}

Rational parseRational(std::string_view text) {
  RatFunc r = parseRatFunc(text);
  if (!r.isConstant()) throw UsageError("expected a rational number, got '" + std::string(text) + "'");
  Rational q(r.num().isZero() ? BigInt(0) : r.num().lead(), r.den().lead());
  q.canonicalize();
  return q;
}

}  // namespace taut
