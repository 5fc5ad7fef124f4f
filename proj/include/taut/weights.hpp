#pragma once

// Type C_g (Sp(2g)) weight combinatorics: Weyl group, dot action,
// Borel-Weil-Bott, Kostant, Weyl dimensions, symplectic Pieri, Fakhruddin
// vanishing and Leray graded pieces.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taut/exactnum.hpp"

namespace taut::weights {

using Weight = std::vector<int>;

/// Signed permutation w acting by (w v)_i = sign[i] * v[perm[i]], 0-based.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> sign;

  static SignedPermutation identity(int g);
  int rank() const { return static_cast<int>(perm.size()); }
  Weight apply(const Weight& v) const;
  /// Type-C length: number of positive roots sent to negative roots.
  int length() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;
};

/// All 2^g g! elements of W(C_g).
std::vector<SignedPermutation> weylGroup(int g);

/// Minimal word length in the simple reflections s_1..s_{g-1} (swap i,i+1)
/// and s_g (negate the last entry), by breadth-first search.
int wordLength(const SignedPermutation& w);

Weight rho(int g);
bool isDominant(const Weight& v);
bool isRegular(const Weight& v);
int size(const Weight& v);

struct BbwResult {
  int degree;
  Weight dominant;
  SignedPermutation w;
};

/// Unique w with w(lambda + rho) strictly dominant; nullopt if singular.
std::optional<BbwResult> bbw(const Weight& lambda);

/// Minimal coset representatives for the Siegel parabolic (Levi of type
/// A_{g-1}): the 2^g elements w with w(rho) strictly decreasing.
std::vector<SignedPermutation> siegelCosetReps(int g);

/// { w(lambda + rho) - rho : w in W', l(w) = i }, sorted.
std::vector<Weight> kostant(const Weight& lambda, int i);

BigInt weylDim(const Weight& lambda);

/// Dominant weights lambda +- e_i (one-box symplectic Pieri rule).
std::vector<Weight> tensorStandard(const Weight& lambda);

struct DecompositionEntry {
  BigInt multiplicity;
  int twist;  // (n - |lambda|) / 2
};

using DecompositionTable = std::map<Weight, DecompositionEntry>;

/// V^{(x)n} for Sp(2g); throws RefusalError outside the stable range n <= g.
DecompositionTable decomposePower(int n, int g);

/// max { q >= 0 : q(g-l) + q(q+1)/2 <= i }; requires 0 <= l <= g, i >= 0.
int fakhruddinR(int g, int i, int l);
/// r + i/2 < l/2.
bool vanishes(int g, int i, int l);
/// r + i/2 == l/2: the cohomology is pure of weight (i+l)/2.
bool atPurityBoundary(int g, int i, int l);
/// Smallest i >= 0 with vanishes(g, i, l) false.
int firstNonvanishing(int g, int l);

struct LerayLambda {
  Weight lambda;
  BigInt multiplicity;
  int lefschetz;  // twist of the R^1 block plus the number of R^2 factors
  bool vanishes;
  bool pure;
};

struct LerayPiece {
  int i;                 // base degree
  std::vector<int> alpha;  // fiber degrees, sum k - i
  int ones;              // number of R^1 factors
  std::vector<LerayLambda> lambdas;
};

/// All (i, alpha) with alpha in {0,1,2}^n and |alpha| = k - i, i >= 0,
/// with the R^1 block decomposed and annotated by the vanishing criterion.
/// Throws RefusalError when the R^1 block leaves the stable range.
std::vector<LerayPiece> lerayPieces(int g, int n, int k);

Weight parseWeight(std::string_view text, int g);
std::string weightText(const Weight& v);

}  // namespace taut::weights
