#pragma once

// Command-line front end. run() never writes to the process streams; the
// tools/ executable forwards its result.

#include <string>
#include <vector>

#include "taut/tautring.hpp"
#include "taut/weights.hpp"

namespace taut::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRefusal = 2, kInvariant = 3 };

struct Result {
  int code = kOk;
  std::string out;
  std::string err;
};

/// args excludes the program name.
Result run(const std::vector<std::string>& args);

/// Parses an expression or a named cycle (@fp<N>, @fpnm:<N>:<M>, @gs, @zk,
/// @Y). n < 0 infers the factor count from the largest index used.
TautClass resolveClass(const std::string& text, int n, Flavor flavor);

/// Largest factor index mentioned in D(...), psi(...), K(...), o(...).
int inferFactorCount(const std::string& text);

/// A Leray piece H^i(M_g, R^alpha) together with whether the Kunneth
/// component alpha of the class is nonzero there.
struct Placement {
  weights::LerayPiece piece;
  bool hostsComponent;
};

/// Places the nonzero Kunneth components of a homogeneous class of codimension
/// p on C_g^n into the pieces of H^{2p}: component a sits in i = 2p - |a|.
std::vector<Placement> lerayPlacement(const LewisEstimate& estimate, int g);

}  // namespace taut::cli
