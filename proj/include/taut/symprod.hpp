#pragma once

// Formal zero-cycles on symmetric powers S^n C of a pointed curve, modelled
// as integer combinations of size-n multisets over a finite point alphabet.
// Point 0 is the base point o.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taut/exactnum.hpp"

namespace taut::symprod {

/// Sorted point ids; 0 is the base point o.
using Multiset = std::vector<int>;

class ZeroCycle {
 public:
  explicit ZeroCycle(int n) : n_(n) {}
  static ZeroCycle basis(Multiset m, const BigInt& c = 1);

  int n() const { return n_; }
  const std::map<Multiset, BigInt>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  BigInt degree() const;

  void add(Multiset m, const BigInt& c);
  ZeroCycle operator-() const;
  friend ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b);
  friend ZeroCycle operator-(const ZeroCycle& a, const ZeroCycle& b);
  friend ZeroCycle operator*(const BigInt& c, const ZeroCycle& a);
  friend bool operator==(const ZeroCycle&, const ZeroCycle&) = default;

 private:
  int n_;
  std::map<Multiset, BigInt> terms_;
};

/// z -> i.o + z.
ZeroCycle pushO(const ZeroCycle& z, int i);

/// Pullback along S_{k-1,k}: sum over single-element removals, one per copy.
ZeroCycle sPull(const ZeroCycle& z);

/// The same operator with each distinct sub-multiset counted once; kept only
/// to show that the identity fails under that convention.
ZeroCycle sPullDistinct(const ZeroCycle& z);

/// Every multiset of size n over points 0..alphabetSize-1.
std::vector<Multiset> allMultisets(int n, int alphabetSize);

struct IdentityCheck {
  bool holds;
  std::optional<Multiset> counterexample;
  int checked;
};

/// S_{n-1,n}^* o_* = Id + o_* S_{n-2,n-1}^* on every basis multiset of size
/// n-1 over the alphabet.
IdentityCheck verifyIdentity(int n, int alphabetSize, bool distinctConvention = false);

/// z = sum_l pushO(components[l], l) with sPull(components[l]) = 0;
/// components[l] lives on S^{n-l}.
std::vector<ZeroCycle> decompose(const ZeroCycle& z);
ZeroCycle reconstruct(const std::vector<ZeroCycle>& components);

/// n - max{l : components[l] != 0}; the zero cycle has level n.
int lewisLevel(const ZeroCycle& z);

/// `{o,o,x}` or `2*{o,x} - {y,y}`. Point names other than o are assigned
/// ids 1, 2, ... in order of first appearance (names of the form p<k> map to k).
ZeroCycle parseZeroCycle(std::string_view text);
std::string str(const ZeroCycle& z);
std::string multisetText(const Multiset& m);

}  // namespace taut::symprod
