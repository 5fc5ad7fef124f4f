#include <doctest.h>

#include "taut/error.hpp"
#include "taut/tautring.hpp"

using namespace taut;

namespace {

constexpr Flavor R = Flavor::Relative;
constexpr Flavor P = Flavor::Pointed;

TautClass rel(const char* text, int n) { return parseClass(text, n, R); }
TautClass pt(const char* text, int n) { return parseClass(text, n, P); }

Correspondence zeroCorr(Flavor f) { return Correspondence{1, 1, TautClass(2, f)}; }

}  // namespace

TEST_CASE("rewrite rules") {
  CHECK(rel("D(1,2)^2", 2) == rel("-D(1,2)*psi(1)", 2));
  CHECK(rel("D(1,2)*psi(2)", 2) == rel("D(1,2)*psi(1)", 2));
  CHECK(rel("D(1,2)*D(2,3)", 3) == rel("D(1,2,3)", 3));
  CHECK(rel("D(1,3)*D(2,3)", 3) == rel("D(1,2,3)", 3));
  // Delta_123 . Delta_12: one excess normal direction
  CHECK(rel("D(1,2,3)*D(1,2)", 3) == rel("-D(1,2,3)*psi(1)", 3));
  CHECK(rel("kappa(0)", 1) == rel("2*g-2", 1));
  CHECK(rel("D(1,2)^4*psi(1)^2", 2) == rel("-D(1,2)*psi(1)^5", 2));
  CHECK(rel("D(1,2)^3*psi(1)^3", 2) == rel("D(1,2)*psi(1)^5", 2));
}

TEST_CASE("pointed rewrite rules") {
  CHECK(pt("K(1)*o(1)", 2).isZero());
  CHECK(pt("K(1)*K(1)", 1).isZero());
  CHECK(pt("psi(1)", 1) == pt("K(1)", 1));
  CHECK(pt("kappa(1)", 2).isZero());
  CHECK(pt("kappa(0)*o(1)", 1) == pt("(2*g-2)*o(1)", 1));
  CHECK(pt("D(1,2)^2", 2) == pt("-D(1,2)*K(1)", 2));
  CHECK(pt("D(1,2)*o(2)", 2) == pt("D(1,2)*o(1)", 2));
  CHECK(pt("D(1,2)^4*psi(1)^2", 2).isZero());
  CHECK(pt("D(1,2)^3*psi(1)^3", 2).isZero());
}

TEST_CASE("ring operations reject mismatches") {
  CHECK_THROWS_AS(rel("psi(1)", 1) * rel("psi(1)", 2), UsageError);
  CHECK_THROWS_AS(rel("psi(1)", 1) + pt("K(1)", 1), UsageError);
  CHECK_THROWS_AS(diagonal(2, R, {1, 1}), UsageError);
  CHECK_THROWS_AS(canonicalClass(2, 3), UsageError);
}

TEST_CASE("pullback relabels") {
  CHECK(pullback(rel("psi(1)", 1), {2}, 2) == rel("psi(2)", 2));
  CHECK(pullback(rel("D(1,2)", 2), {2, 4}, 4) == rel("D(2,4)", 4));
  CHECK(pullback(rel("D(1,2)*psi(2)", 2), {3, 1}, 3) == rel("D(1,3)*psi(1)", 3));
  CHECK(pullback(projector(1).cls, {1, 3}, 3) ==
        rel("D(1,3) - (psi(1)+psi(3))/(2*g-2) + kappa(1)/(2*g-2)^2", 3));
  CHECK_THROWS_AS(pullback(rel("D(1,2)", 2), {1, 1}, 2), UsageError);
}

TEST_CASE("pushforward rules") {
  CHECK(pushforward(rel("psi(2)^2", 2), 2) == rel("kappa(1)", 1));
  CHECK(pushforward(rel("D(1,2)*psi(2)^3", 2), 2) == rel("psi(1)^3", 1));
  CHECK(pushforward(rel("1", 2), 2).isZero());
  CHECK(pushforward(rel("psi(1)", 1), 1) == rel("2*g-2", 0));
  CHECK(pushforward(rel("D(1,2,3)*psi(1)", 3), 1) == rel("D(1,2)*psi(1)", 2));
  CHECK(pushforward(rel("psi(1)*psi(3)^2", 3), 2).isZero());
  CHECK(pushforward(pt("o(1)*K(2)", 2), std::vector<int>{1, 2}) == pt("2*g-2", 0));
}

TEST_CASE("composition of correspondences") {
  for (Flavor f : {R, P}) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(compose(projectorOf(a, f), projectorOf(b, f)) == (a == b ? projectorOf(a, f) : zeroCorr(f)));
    const Correspondence id = identityCorrespondence(1, f);
    CHECK(compose(id, projectorOf(1, f)) == projectorOf(1, f));
    CHECK(compose(projectorOf(2, f), id) == projectorOf(2, f));
    CHECK_THROWS_AS(compose(identityCorrespondence(2, f), id), UsageError);
  }
}

TEST_CASE("projectors") {
  CHECK(projector(1).cls == rel("D(1,2) - (psi(1)+psi(2))/(2*g-2) + kappa(1)/(2*g-2)^2", 2));
  CHECK(projector(0).cls + projector(1).cls + projector(2).cls == rel("D(1,2)", 2));
  CHECK(pointedProjector(1).cls == pt("D(1,2) - o(1) - o(2)", 2));
  // pi_0 fixes 1, pi_2 extracts the fiber degree times z
  CHECK(act(projector(0), rel("1", 1)) == rel("1", 1));
  CHECK(act(projector(2), rel("psi(1)", 1)) == rel("psi(1)", 1));
  CHECK(act(projector(2), rel("1", 1)).isZero());
  CHECK(act(pointedProjector(2), pt("K(1)", 1)) == pt("(2*g-2)*o(1)", 1));
  CHECK(act(pointedProjector(1), pt("o(1)", 1)).isZero());
  CHECK(act(pointedProjector(0), pt("1", 1)) == pt("1", 1));
  // trace of pi_1
  const TautClass tr = pushforward(rel("D(1,2)", 2) * projector(1).cls, std::vector<int>{1, 2});
  CHECK(tr == rel("-2*g", 0));
}

TEST_CASE("fp(1) expansion") {
  const TautClass expected = rel(
      "D(1,2)*psi(1) - psi(1)*psi(2)/(2*g-2) - (psi(1)^2 + psi(2)^2)/(2*g-2)"
      " + kappa(1)*(psi(1) + psi(2))/(2*g-2)^2 + kappa(2)/(2*g-2)^2 - kappa(1)^2/(2*g-2)^3",
      2);
  CHECK(fp(1) == expected);
  CHECK(act(kunnethProjector({1, 1}, R), fp(1)) == fp(1));
  CHECK(act(kunnethProjector({1, 1}, R), rel("D(1,2)*psi(1)", 2)) == fp(1));
}

TEST_CASE("swap symmetry of fp") {
  for (int n = 1; n <= 3; ++n) CHECK(pullback(fp(n), {2, 1}, 2) == fp(n));
}

TEST_CASE("restriction and degree") {
  CHECK(restrictToFiber(fp(1)) == pt("D(1,2)*K(1) - K(1)*K(2)/(2*g-2)", 2));
  CHECK(restrictToFiber(rel("kappa(2)", 1)).isZero());
  CHECK(RatFunc(-1) * twoGMinusTwo() * restrictToFiber(fp(1)) == zk());
  CHECK(zk() == pt("K(1)*K(2) - (2*g-2)*D(1,2)*K(1)", 2));
  CHECK(degree(pt("K(1)*K(2)", 2)) == twoGMinusTwo() * twoGMinusTwo());
  CHECK(degree(pt("D(1,2)*K(1)", 2)) == twoGMinusTwo());
  CHECK(degree(pt("D(1,2)*o(1)", 2)) == RatFunc(1));
  CHECK(degree(restrictToFiber(fp(1))).isZero());
  CHECK_THROWS_AS(degree(pt("K(1)", 2)), UsageError);
  CHECK_THROWS_AS(degree(rel("psi(1)", 1)), UsageError);
}

TEST_CASE("named cycles") {
  CHECK(fpnm(3, 0) == gs());
  CHECK(fpnm(2, 1) == fp(1));
  CHECK(grossSchoenY() ==
        pt("D(1,2,3) - D(1,2)*o(3) - D(1,3)*o(2) - D(2,3)*o(1) + o(2)*o(3) + o(1)*o(3) + o(1)*o(2)", 3));
  CHECK_THROWS_AS(fpnm(1, 0), UsageError);
  CHECK_THROWS_AS(fp(0), UsageError);
}

TEST_CASE("Kunneth estimate") {
  const LewisEstimate e1 = lewisLevelEstimate(fp(1));
  REQUIRE(e1.nonzero.size() == 1);
  CHECK(e1.nonzero[0].a == std::vector<int>{1, 1});
  CHECK(e1.codim == 2);
  const LewisEstimate e2 = lewisLevelEstimate(fp(2));
  REQUIRE(e2.nonzero.size() == 1);
  CHECK(e2.nonzero[0].a == std::vector<int>{1, 1});
  CHECK(lewisLevelEstimate(TautClass(2, R)).nonzero.empty());
  CHECK(kunnethVectors(2).size() == 9);
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(rel("psi(3)", 2), ParseError);
  CHECK_THROWS_AS(rel("D(1)", 2), ParseError);
  CHECK_THROWS_AS(rel("D(1,1)", 2), ParseError);
  CHECK_THROWS_AS(rel("K(1)", 2), ParseError);
  CHECK_THROWS_AS(rel("psi(1)/psi(2)", 2), ParseError);
  CHECK_THROWS_AS(rel("psi(1)/(g-g)", 2), ParseError);
  CHECK_THROWS_AS(rel("foo(1)", 2), ParseError);
  CHECK_THROWS_AS(rel("psi(1) psi(2)", 2), ParseError);
  CHECK(rel("0", 2).isZero());
}

TEST_CASE("printing") {
  CHECK(str(restrictToFiber(fp(1))) == "D(1,2)*K(1) - 1/(2*g-2)*K(1)*K(2)");
  CHECK(str(rel("(g+1)*psi(1) - 3", 1)) == "-3 + (g+1)*psi(1)");
  CHECK(str(rel("0", 1)) == "0");
  CHECK(latex(rel("D(1,2)*psi(1)^2*kappa(1)", 2)) == "\\Delta_{12} \\psi_{1}^{2} \\kappa_{1}");
  CHECK(str(specialize(restrictToFiber(fp(1)), Rational(2))) == "D(1,2)*K(1) - 1/2*K(1)*K(2)");
}
