#pragma once

// Tautological classes on fiber powers C_g^n of the universal curve (relative
// flavor) and on powers C^n of a fixed curve with base point o (pointed
// flavor), with the correspondence calculus built on top of them.
//
// Factor indices in the public API are 1-based.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "taut/exactnum.hpp"

namespace taut {

enum class Flavor : std::uint8_t { Relative, Pointed };

/// Divisor decoration of a block in the pointed flavor.
enum class Decor : std::uint8_t { None = 0, Canonical = 1, Point = 2 };

inline constexpr int kMaxFactors = 16;
inline constexpr int kMaxKappa = 32;

/// Normal-form monomial. The set partition is stored as the minimal element of
/// each factor's block; psi exponents and decorations live on that minimal
/// element only. kappa[a] is the multiplicity of kappa_a, a >= 1.
struct Monomial {
  std::uint8_t n = 0;
  std::array<std::uint8_t, kMaxFactors> rep{};
  std::array<std::uint8_t, kMaxFactors> psi{};
  std::array<std::uint8_t, kMaxKappa> kappa{};
  std::array<std::uint8_t, kMaxFactors> decor{};

  static Monomial unit(int n);

  /// Blocks as sorted 1-based index lists, ordered by minimal element.
  std::vector<std::vector<int>> blocks() const;
  int codim() const;
  int blockSize(int rep0) const;
  bool isUnit() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Finite Q(g)-linear combination of normal-form monomials, all on the same
/// number of factors and flavor. Terms are sorted and carry no zero
/// coefficients, so equal classes compare equal.
class TautClass {
 public:
  using Term = std::pair<Monomial, RatFunc>;

  TautClass(int n, Flavor flavor);

  static TautClass scalar(int n, Flavor flavor, const RatFunc& c);
  static TautClass fromMonomial(const Monomial& m, Flavor flavor, const RatFunc& c = RatFunc(1));

  int n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  RatFunc coefficient(const Monomial& m) const;
  /// Coefficient of the unit monomial when that is the only term (or zero).
  std::optional<RatFunc> asScalar() const;

  TautClass operator-() const;
  friend TautClass operator+(const TautClass& a, const TautClass& b);
  friend TautClass operator-(const TautClass& a, const TautClass& b);
  /// Ring product; throws UsageError on a factor-count or flavor mismatch.
  friend TautClass operator*(const TautClass& a, const TautClass& b);
  friend TautClass operator*(const RatFunc& c, const TautClass& a);
  friend bool operator==(const TautClass& a, const TautClass& b) = default;

 private:
  friend class TermAccumulator;
  int n_;
  Flavor flavor_;
  std::vector<Term> terms_;
};

/// Hash-map builder for TautClass; finish() sorts and drops zero terms.
class TermAccumulator {
 public:
  TermAccumulator(int n, Flavor flavor) : n_(n), flavor_(flavor) {}

  void add(const Monomial& m, const RatFunc& c);
  void add(const TautClass& c);
  TautClass finish() &&;

 private:
  int n_;
  Flavor flavor_;
  std::unordered_map<Monomial, RatFunc, MonomialHash> terms_;
};

// --- rewrite system --------------------------------------------------------

/// A raw generator occurring in an unreduced product.
struct Generator {
  enum class Kind : std::uint8_t { Diagonal, Psi, Kappa, Canonical, Point };
  Kind kind;
  std::vector<int> indices;  // Diagonal: >= 2 factors; Psi/Canonical/Point: one factor
  int kappaIndex = 0;        // Kappa only
};

/// Reduces a product of generators to normal form by applying the rewrite
/// rules one generator at a time, in the given order.
TautClass normalizeWord(int n, Flavor flavor, const std::vector<Generator>& word);

/// Re-canonicalizes every term (block representatives, psi placement,
/// pointed-flavor decoration rules). Idempotent.
TautClass normalize(const TautClass& c);

TautClass mul(const TautClass& a, const TautClass& b);

// --- generators ------------------------------------------------------------

TautClass one(int n, Flavor flavor);
TautClass diagonal(int n, Flavor flavor, const std::vector<int>& factors);
/// psi_i; in the pointed flavor this is the canonical class K_i.
TautClass psiClass(int n, Flavor flavor, int i, int exponent = 1);
/// kappa_a; kappa_0 = 2g-2, and kappa_a (a >= 1) vanishes in the pointed flavor.
TautClass kappaClass(int n, Flavor flavor, int a);
TautClass canonicalClass(int n, int i);
TautClass pointClass(int n, int i);

RatFunc twoGMinusTwo();

// --- functoriality ---------------------------------------------------------

/// Pullback along the projection C^newN -> C^n whose i-th old factor is the
/// new factor inj[i-1]. Throws UsageError unless inj is injective into 1..newN.
TautClass pullback(const TautClass& c, const std::vector<int>& inj, int newN);

/// Integrates out factor j, renumbering the remaining factors.
TautClass pushforward(const TautClass& c, int j);
/// Integrates out every listed factor.
TautClass pushforward(const TautClass& c, std::vector<int> factors);

/// Exterior product a x b on a.n() + b.n() factors (a's factors first).
TautClass exteriorProduct(const TautClass& a, const TautClass& b);

/// Relative -> pointed: kappa_a -> 0 (a >= 1), psi_i -> K_i.
TautClass restrictToFiber(const TautClass& c);

/// Degree of a top-codimension pointed class; deg K = 2g-2, deg o = 1.
RatFunc degree(const TautClass& c);

/// Coefficient-wise substitution g = g0; throws RefusalError at poles.
TautClass specialize(const TautClass& c, const Rational& g0);

// --- correspondences -------------------------------------------------------

struct Correspondence {
  int source;
  int target;
  TautClass cls;  // on source + target factors, source factors first

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

Correspondence makeCorrespondence(int source, int target, TautClass cls);
Correspondence identityCorrespondence(int n, Flavor flavor);

/// second o first: apply `first`, then `second`.
Correspondence compose(const Correspondence& second, const Correspondence& first);

/// Pushforward to the target of (alpha pulled back to the source) . gamma.
TautClass act(const Correspondence& gamma, const TautClass& alpha);

/// Relative Chow-Kunneth projectors for z = psi/(2g-2):
///   pi_2 = psi_2/(2g-2), pi_0 = psi_1/(2g-2) - kappa_1/(2g-2)^2,
///   pi_1 = Delta_12 - pi_0 - pi_2.
/// With source factor 1, pi_2 acts as alpha -> pi_*(alpha) . z and pi_0
/// fixes the fundamental class.
Correspondence projector(int k);

/// Pointed projectors: pi_0 = o_1, pi_2 = o_2, pi_1 = Delta_12 - o_1 - o_2.
Correspondence pointedProjector(int k);

Correspondence projectorOf(int k, Flavor flavor);

/// pi_{a_1} x ... x pi_{a_n} as an n |- n correspondence.
Correspondence kunnethProjector(const std::vector<int>& a, Flavor flavor);

// --- named cycles ----------------------------------------------------------

/// pi_1^{x2}(Delta_12^n . psi_1) on C_g^2.
TautClass fp(int n);
/// pi_1^{xn}(Delta_{1..n} . psi_1^m) on C_g^n, n >= 2.
TautClass fpnm(int n, int m);
/// pi_1^{x3} Delta_123 on C_g^3.
TautClass gs();
/// Delta_123 - Delta_12 - Delta_13 - Delta_23 + Delta_1 + Delta_2 + Delta_3
/// on C^3, with Delta_I = {x_i = x_j (i, j in I), x_k = o (k not in I)}.
TautClass grossSchoenY();
/// K x K - (2g-2) Delta_* K on C^2.
TautClass zk();

// --- Kunneth bookkeeping ---------------------------------------------------

struct KunnethComponent {
  std::vector<int> a;
  int weight;  // |a|
  TautClass image;
};

struct LewisEstimate {
  int n;
  int codim;  // -1 when the class is inhomogeneous or zero
  std::vector<KunnethComponent> nonzero;
  /// (|a|, number of nonzero components) for |a| = 0..2n.
  std::vector<std::pair<int, int>> histogram;
};

LewisEstimate lewisLevelEstimate(const TautClass& c);

/// Lexicographic enumeration of {0,1,2}^n.
std::vector<std::vector<int>> kunnethVectors(int n);

// --- text ------------------------------------------------------------------

/// Parses the class grammar: D(i,j,...), psi(i), kappa(a), K(i), o(i),
/// scalars in the exactnum syntax, + - * / ^ and parentheses.
TautClass parseClass(std::string_view text, int n, Flavor flavor);

std::string monomialText(const Monomial& m);
std::string str(const TautClass& c);
std::string latex(const TautClass& c);

std::string flavorName(Flavor f);
Flavor parseFlavor(std::string_view s);

}  // namespace taut
