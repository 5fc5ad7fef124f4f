#include <doctest.h>

#include <random>

#include "taut/error.hpp"
#include "taut/exactnum.hpp"

using namespace taut;

namespace {

const RatFunc g = RatFunc::g();
const RatFunc s = RatFunc(2) * g - RatFunc(2);

Poly randomPoly(std::mt19937& rng, int maxDeg) {
  std::uniform_int_distribution<int> deg(0, maxDeg), c(-4, 4);
  std::vector<BigInt> v;
  for (int i = deg(rng); i >= 0; --i) v.push_back(c(rng));
  return Poly(std::move(v));
}

}  // namespace

TEST_CASE("poly arithmetic and printing") {
  const Poly x = Poly::g();
  CHECK((x * x - Poly(1)).str() == "g^2-1");
  CHECK((Poly(2) * x - Poly(2)).str() == "2*g-2");
  CHECK(Poly(0).isZero());
  CHECK((x - x).isZero());
  CHECK((x * x).degree() == 2);
  CHECK(Poly(-3).str() == "-3");
  CHECK((Poly(2) * x - Poly(2)).eval(Rational(7)) == 12);
}

TEST_CASE("gcd and exact division") {
  const Poly x = Poly::g();
  const Poly a = (x - Poly(1)) * (x + Poly(2));
  const Poly b = (x - Poly(1)) * (Poly(3) * x + Poly(1));
  CHECK(gcd(a, b) == x - Poly(1));
  CHECK(divExact(a, x - Poly(1)) == x + Poly(2));
  CHECK(content(Poly(std::vector<BigInt>{6, -4, 10})) == 2);
  CHECK(primitivePart(Poly(std::vector<BigInt>{-6, 4})) == Poly(std::vector<BigInt>{-3, 2}));
}

TEST_CASE("rational functions are canonical") {
  const RatFunc a = RatFunc(1) / s;
  const RatFunc b = RatFunc(Poly(std::vector<BigInt>{-3, 3})) / (s * s * RatFunc(3) / RatFunc(2));
  CHECK(a.str() == "1/(2*g-2)");
  // 3(g-1) / (3/2 (2g-2)^2) = 1/(2g-2) after reduction
  CHECK(b == a);
  CHECK((a - a).isZero());
  CHECK((a - a).den() == Poly(1));
  CHECK((RatFunc(-1) / s).str() == "-1/(2*g-2)");
  CHECK((RatFunc(1) / (RatFunc(-2) * g + RatFunc(2))).str() == "-1/(2*g-2)");
  CHECK((g * g / g) == g);
  CHECK(s.inverse().inverse() == s);
}

TEST_CASE("division by zero and poles are refused") {
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), RefusalError);
  CHECK_THROWS_AS((RatFunc(1) / s).eval(Rational(1)), RefusalError);
  CHECK((RatFunc(1) / s).eval(Rational(2)) == Rational(1, 2));
}

TEST_CASE("scalar grammar") {
  CHECK(parseRatFunc("1/(2*g-2)^2") == (RatFunc(1) / (s * s)));
  CHECK(parseRatFunc("-(g-1)*2") == -s);
  CHECK(parseRatFunc("3/6") == RatFunc(Rational(1, 2)));
  CHECK(parseRatFunc(" g ^ 3 ") == g * g * g);
  CHECK(parseRational("-7/4") == Rational(-7, 4));
  CHECK_THROWS_AS(parseRatFunc("1/(g-g)"), ParseError);
  CHECK_THROWS_AS(parseRatFunc("2*"), ParseError);
  CHECK_THROWS_AS(parseRatFunc("h"), ParseError);
  try {
    parseRatFunc("(g+1");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(e.expected() == "')'");
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Poly d1 = randomPoly(rng, 3), d2 = randomPoly(rng, 3);
    if (d1.isZero()) d1 = Poly(1);
    if (d2.isZero()) d2 = Poly(1);
    const RatFunc a(randomPoly(rng, 3), d1), b(randomPoly(rng, 3), d2), c(randomPoly(rng, 2));
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    if (!b.isZero()) CHECK((a / b) * b == a);
    // str() is parseable and exact
    CHECK(parseRatFunc(a.str()) == a);
    // evaluation is a ring map away from poles
    const Rational x(trial % 7 + 11, 3);
    if (!d1.isZero() && !d2.isZero() && d1.eval(x) != 0 && d2.eval(x) != 0)
      CHECK((a * b + c).eval(x) == a.eval(x) * b.eval(x) + c.eval(x));
  }
}

TEST_CASE("latex printing") {
  CHECK((RatFunc(1) / s).latex() == "\\frac{1}{2g-2}");
  CHECK((RatFunc(-1) / s).latex() == "-\\frac{1}{2g-2}");
  CHECK(RatFunc(Rational(-3, 4)).latex() == "-\\frac{3}{4}");
}
