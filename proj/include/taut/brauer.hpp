#pragma once

// Brauer diagrams, their composition with a loop parameter, realization as
// products of pr_ij^* pi_1, and exhaustive search for diagram correspondences
// carrying a product of source classes to a target class.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taut/exactnum.hpp"
#include "taut/tautring.hpp"

namespace taut::brauer {

/// Perfect matching on `source` points 1..source and `target` points
/// 1'..target'. Internally the points are 0-based, sources first.
class BrauerDiagram {
 public:
  BrauerDiagram(int source, int target, std::vector<int> partner);

  static BrauerDiagram identity(int k);
  /// Cup-cap diagram in B_k pairing i with i+1 on both rows (1-based i).
  static BrauerDiagram cupCap(int k, int i);

  int source() const { return source_; }
  int target() const { return target_; }
  int points() const { return source_ + target_; }
  int partner(int p) const { return partner_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& partners() const { return partner_; }
  /// Pairs (p, q) with p < q, 0-based.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const BrauerDiagram&, const BrauerDiagram&) = default;
  friend auto operator<=>(const BrauerDiagram&, const BrauerDiagram&) = default;

 private:
  int source_;
  int target_;
  std::vector<int> partner_;
};

struct ScaledDiagram {
  RatFunc coeff;
  BrauerDiagram diagram;
};

/// d2 o d1 (d1 first): stack, trace middle paths, delta^{closed loops}.
ScaledDiagram composeDiagrams(const BrauerDiagram& d2, const BrauerDiagram& d1, const RatFunc& delta);
int closedLoops(const BrauerDiagram& d2, const BrauerDiagram& d1);

/// All (n-1)!! matchings with the given row sizes, in lexicographic order of
/// the partner vector.
std::vector<BrauerDiagram> allDiagrams(int source, int target);
/// (n-1)!! for even n.
std::uint64_t matchingCount(int points);

/// Product of pr_pq^* pi_1 over the matched pairs.
Correspondence realize(const BrauerDiagram& d, Flavor flavor = Flavor::Relative);

/// Closed-loop value deg_base(Delta . pi_1), computed by the engine.
RatFunc loopParameter(Flavor flavor = Flavor::Relative);

/// act(realize(d), blocks[0] x blocks[1] x ...) without expanding the
/// exterior product: caps are contracted as soon as both ends are present.
TautClass actOnProduct(const BrauerDiagram& d, const std::vector<TautClass>& blocks);

struct SearchOptions {
  int maxTerms = 1;
  std::uint64_t maxMatchings = 135135;
};

/// A witness: sum of coeff * act(realize(diagram), source) equals the target.
/// Diagrams are orbit representatives; orbitSizes counts the diagrams in each
/// orbit, all of which have the same image.
struct SearchSolution {
  std::vector<ScaledDiagram> terms;
  std::vector<std::uint64_t> orbitSizes;
};

struct SearchReport {
  std::uint64_t enumerated = 0;
  std::size_t orbits = 0;         // diagrams up to the detected block symmetries
  std::size_t distinctImages = 0;  // distinct nonzero images
  std::size_t zeroImages = 0;      // orbits whose image vanishes
  std::vector<SearchSolution> solutions;
  /// Rank of the span of the distinct images and whether the target lies in it.
  std::size_t spanRank = 0;
  bool targetInSpan = false;
};

/// Finds diagrams (or combinations of at most maxTerms diagrams) whose
/// realization maps the product of the source blocks to the target.
/// Throws RefusalError if the matching count exceeds options.maxMatchings.
SearchReport searchCorrespondence(const std::vector<TautClass>& sourceBlocks, const TautClass& target,
                                  const SearchOptions& options = {});

BrauerDiagram parseDiagram(std::string_view text, int source, int target);
/// Infers the row sizes from the largest indices mentioned.
BrauerDiagram parseDiagram(std::string_view text);
std::string str(const BrauerDiagram& d);

/// Solves sum_j x_j v_j = t over Q(g) for classes on the same factor count;
/// returns the coefficients of one solution or nothing. Also reports the rank.
struct SpanResult {
  std::size_t rank = 0;
  std::optional<std::vector<RatFunc>> solution;
};
SpanResult solveInSpan(const std::vector<TautClass>& vectors, const TautClass& target);

}  // namespace taut::brauer
