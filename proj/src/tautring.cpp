#include "taut/tautring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "taut/detail/expr_parser.hpp"
#include "taut/error.hpp"

namespace taut {

namespace {

using Index = std::uint8_t;

void checkFactorCount(int n) {
  if (n < 0 || n > kMaxFactors)
    throw UsageError("factor count " + std::to_string(n) + " outside 0.." + std::to_string(kMaxFactors));
}

void checkIndex(int i, int n) {
  if (i < 1 || i > n)
    throw UsageError("factor index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
}

void checkCompatible(const TautClass& a, const TautClass& b, const char* op) {
  if (a.n() != b.n() || a.flavor() != b.flavor())
    throw UsageError(std::string(op) + ": operands differ in factor count or flavor (" +
                     std::to_string(a.n()) + " " + flavorName(a.flavor()) + " vs " + std::to_string(b.n()) +
                     " " + flavorName(b.flavor()) + ")");
}

std::uint8_t narrow(int v, const char* what) {
  if (v < 0 || v > 255) throw RefusalError(std::string(what) + " exponent exceeds 255");
  return static_cast<std::uint8_t>(v);
}

const RatFunc& sPower(int k) {
  static thread_local std::vector<RatFunc> cache{RatFunc(1)};
  while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * twoGMinusTwo());
  return cache[static_cast<std::size_t>(k)];
}

// Product of two normal-form monomials. Returns the sign (-1)^excess and the
// product, or nullopt when a rewrite rule kills it.
std::optional<std::pair<int, Monomial>> mulMonomials(const Monomial& a, const Monomial& b, Flavor flavor) {
  const int n = a.n;
  std::array<Index, kMaxFactors> root{};
  for (int i = 0; i < n; ++i) root[i] = static_cast<Index>(i);
  auto find = [&](int x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (x < y)
      root[y] = static_cast<Index>(x);
    else
      root[x] = static_cast<Index>(y);
  };
  for (int i = 0; i < n; ++i) {
    unite(i, a.rep[i]);
    unite(i, b.rep[i]);
  }

  Monomial r;
  r.n = a.n;
  std::array<int, kMaxFactors> size{}, excess{}, psiSum{}, decorCount{};
  std::array<std::uint8_t, kMaxFactors> decorKind{};
  for (int i = 0; i < n; ++i) {
    const int m = find(i);
    r.rep[i] = static_cast<Index>(m);
    ++size[m];
    if (a.rep[i] != i) ++excess[m];
    if (b.rep[i] != i) ++excess[m];
    psiSum[m] += a.psi[i] + b.psi[i];
    if (a.decor[i]) {
      ++decorCount[m];
      decorKind[m] = a.decor[i];
    }
    if (b.decor[i]) {
      ++decorCount[m];
      decorKind[m] = b.decor[i];
    }
  }

  int sign = 1;
  for (int m = 0; m < n; ++m) {
    if (r.rep[m] != m) continue;
    // Excess intersection along the merged diagonal: each extra copy of the
    // normal bundle contributes c_1(T) = -psi.
    const int e = excess[m] - (size[m] - 1);
    if (e & 1) sign = -sign;
    const int p = psiSum[m] + e;
    if (flavor == Flavor::Relative) {
      r.psi[m] = narrow(p, "psi");
    } else {
      const int total = decorCount[m] + p;
      if (total >= 2) return std::nullopt;
      if (total == 1) r.decor[m] = decorCount[m] ? decorKind[m] : static_cast<std::uint8_t>(Decor::Canonical);
    }
  }
  if (flavor == Flavor::Relative) {
    for (int k = 0; k < kMaxKappa; ++k) r.kappa[k] = narrow(a.kappa[k] + b.kappa[k], "kappa");
  }
  return std::make_pair(sign, r);
}

// Integrates out factor j (0-based). Returns the power of (2g-2) picked up
// and the renumbered monomial, or nullopt if the fiber integral vanishes.
std::optional<std::pair<int, Monomial>> pushMonomial(const Monomial& m, int j, Flavor flavor) {
  const int n = m.n;
  Monomial x = m;
  int sPow = 0;
  const int r0 = m.rep[j];
  int next = -1;
  for (int i = 0; i < n; ++i)
    if (i != j && m.rep[i] == r0) {
      next = i;
      break;
    }
  if (next < 0) {
    if (flavor == Flavor::Relative) {
      const int a = m.psi[j];
      if (a == 0) return std::nullopt;
      if (a == 1) {
        sPow = 1;
      } else {
        if (a - 1 >= kMaxKappa) throw RefusalError("kappa index exceeds supported range");
        x.kappa[a - 1] = narrow(x.kappa[a - 1] + 1, "kappa");
      }
    } else {
      switch (static_cast<Decor>(m.decor[j])) {
        case Decor::None:
          return std::nullopt;
        case Decor::Canonical:
          sPow = 1;
          break;
        case Decor::Point:
          break;
      }
    }
  } else if (r0 == j) {
    for (int i = 0; i < n; ++i)
      if (m.rep[i] == j) x.rep[i] = static_cast<Index>(next);
    x.psi[next] = m.psi[j];
    x.decor[next] = m.decor[j];
  }

  Monomial y;
  y.n = static_cast<std::uint8_t>(n - 1);
  y.kappa = x.kappa;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    const int ii = i - (i > j ? 1 : 0);
    const int rr = x.rep[i];
    y.rep[ii] = static_cast<Index>(rr - (rr > j ? 1 : 0));
    y.psi[ii] = x.rep[i] == i ? x.psi[i] : 0;
    y.decor[ii] = x.rep[i] == i ? x.decor[i] : 0;
  }
  return std::make_pair(sPow, y);
}

Monomial pullMonomial(const Monomial& m, const std::vector<int>& inj0, int newN) {
  Monomial r = Monomial::unit(newN);
  r.kappa = m.kappa;
  for (int b = 0; b < m.n; ++b) {
    if (m.rep[b] != b) continue;
    int lo = kMaxFactors;
    for (int i = 0; i < m.n; ++i)
      if (m.rep[i] == b) lo = std::min(lo, inj0[i]);
    for (int i = 0; i < m.n; ++i)
      if (m.rep[i] == b) r.rep[inj0[i]] = static_cast<Index>(lo);
    r.psi[lo] = m.psi[b];
    r.decor[lo] = m.decor[b];
  }
  return r;
}

}  // namespace

// --- Monomial ----------------------------------------------------------------

Monomial Monomial::unit(int n) {
  checkFactorCount(n);
  Monomial m;
  m.n = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) m.rep[i] = static_cast<Index>(i);
  return m;
}

std::vector<std::vector<int>> Monomial::blocks() const {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < n; ++r) {
    if (rep[r] != r) continue;
    std::vector<int> b;
    for (int i = r; i < n; ++i)
      if (rep[i] == r) b.push_back(i + 1);
    out.push_back(std::move(b));
  }
  return out;
}

int Monomial::blockSize(int rep0) const {
  int s = 0;
  for (int i = 0; i < n; ++i) s += rep[i] == rep0;
  return s;
}

int Monomial::codim() const {
  int c = 0;
  for (int i = 0; i < n; ++i) c += (rep[i] != i) + psi[i] + (decor[i] != 0);
  for (int a = 1; a < kMaxKappa; ++a) c += a * kappa[a];
  return c;
}

bool Monomial::isUnit() const { return codim() == 0 && kappa[0] == 0; }

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  const auto* p = reinterpret_cast<const unsigned char*>(&m);
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < sizeof(Monomial); ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

// --- TautClass ---------------------------------------------------------------

TautClass::TautClass(int n, Flavor flavor) : n_(n), flavor_(flavor) { checkFactorCount(n); }

TautClass TautClass::scalar(int n, Flavor flavor, const RatFunc& c) {
  return fromMonomial(Monomial::unit(n), flavor, c);
}

TautClass TautClass::fromMonomial(const Monomial& m, Flavor flavor, const RatFunc& c) {
  TautClass r(m.n, flavor);
  if (!c.isZero()) r.terms_.emplace_back(m, c);
  return r;
}

RatFunc TautClass::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return RatFunc();
}

std::optional<RatFunc> TautClass::asScalar() const {
  if (terms_.empty()) return RatFunc();
  if (terms_.size() == 1 && terms_[0].first.isUnit()) return terms_[0].second;
  return std::nullopt;
}

TautClass TautClass::operator-() const {
  TautClass r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

TautClass operator+(const TautClass& a, const TautClass& b) {
  checkCompatible(a, b, "add");
  TautClass r(a.n_, a.flavor_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == a.terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      RatFunc c = i->second + j->second;
      if (!c.isZero()) r.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

TautClass operator-(const TautClass& a, const TautClass& b) { return a + (-b); }

TautClass operator*(const RatFunc& c, const TautClass& a) {
  TautClass r(a.n(), a.flavor());
  if (c.isZero()) return r;
  TermAccumulator acc(a.n(), a.flavor());
  for (const auto& [m, x] : a.terms()) acc.add(m, c * x);
  return std::move(acc).finish();
}

TautClass operator*(const TautClass& a, const TautClass& b) {
  checkCompatible(a, b, "mul");
  if (auto s = a.asScalar()) return *s * b;
  if (auto s = b.asScalar()) return *s * a;
  TermAccumulator acc(a.n(), a.flavor());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto p = mulMonomials(ma, mb, a.flavor());
      if (!p) continue;
      RatFunc c = ca * cb;
      if (p->first < 0) c = -c;
      acc.add(p->second, c);
    }
  }
  return std::move(acc).finish();
}

TautClass mul(const TautClass& a, const TautClass& b) { return a * b; }

void TermAccumulator::add(const Monomial& m, const RatFunc& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add(const TautClass& c) {
  for (const auto& [m, x] : c.terms()) add(m, x);
}

TautClass TermAccumulator::finish() && {
  TautClass r(n_, flavor_);
  r.terms_.reserve(terms_.size());
  for (auto& [m, c] : terms_)
    if (!c.isZero()) r.terms_.emplace_back(m, std::move(c));
  std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

// --- rewrite system ----------------------------------------------------------

TautClass normalize(const TautClass& c) {
  TermAccumulator acc(c.n(), c.flavor());
  const int n = c.n();
  for (const auto& [raw, coeff] : c.terms()) {
    // Treat rep[] as arbitrary block labels and rebuild the canonical form.
    std::array<Index, kMaxFactors> root{};
    for (int i = 0; i < n; ++i) root[i] = static_cast<Index>(i);
    auto find = [&](int x) {
      while (root[x] != x) x = root[x];
      return x;
    };
    for (int i = 0; i < n; ++i) {
      int x = find(i), y = find(raw.rep[i] < n ? raw.rep[i] : i);
      if (x != y) root[std::max(x, y)] = static_cast<Index>(std::min(x, y));
    }
    Monomial m = Monomial::unit(n);
    std::array<int, kMaxFactors> psiSum{}, decorCount{};
    std::array<std::uint8_t, kMaxFactors> kind{};
    for (int i = 0; i < n; ++i) {
      const int r = find(i);
      m.rep[i] = static_cast<Index>(r);
      psiSum[r] += raw.psi[i];
      if (raw.decor[i]) {
        ++decorCount[r];
        kind[r] = raw.decor[i];
      }
    }
    bool zero = false;
    RatFunc factor = coeff;
    if (c.flavor() == Flavor::Relative) {
      for (int r = 0; r < n; ++r)
        if (m.rep[r] == r) m.psi[r] = narrow(psiSum[r], "psi");
      m.kappa = raw.kappa;
      if (m.kappa[0] != 0) {
        factor *= sPower(m.kappa[0]);
        m.kappa[0] = 0;
      }
    } else {
      for (int a = 1; a < kMaxKappa; ++a) zero = zero || raw.kappa[a] != 0;
      if (raw.kappa[0] != 0) factor *= sPower(raw.kappa[0]);
      for (int r = 0; r < n && !zero; ++r) {
        if (m.rep[r] != r) continue;
        const int total = psiSum[r] + decorCount[r];
        if (total >= 2) zero = true;
        if (total == 1) m.decor[r] = decorCount[r] ? kind[r] : static_cast<std::uint8_t>(Decor::Canonical);
      }
    }
    if (!zero) acc.add(m, factor);
  }
  return std::move(acc).finish();
}

TautClass normalizeWord(int n, Flavor flavor, const std::vector<Generator>& word) {
  TautClass r = one(n, flavor);
  for (const auto& gen : word) {
    switch (gen.kind) {
      case Generator::Kind::Diagonal:
        r = r * diagonal(n, flavor, gen.indices);
        break;
      case Generator::Kind::Psi:
        r = r * psiClass(n, flavor, gen.indices.at(0));
        break;
      case Generator::Kind::Kappa:
        r = r * kappaClass(n, flavor, gen.kappaIndex);
        break;
      case Generator::Kind::Canonical:
        r = r * canonicalClass(n, gen.indices.at(0));
        break;
      case Generator::Kind::Point:
        r = r * pointClass(n, gen.indices.at(0));
        break;
    }
  }
  return r;
}

// --- generators --------------------------------------------------------------

RatFunc twoGMinusTwo() {
  static const RatFunc s = RatFunc(Poly(std::vector<BigInt>{-2, 2}));
  return s;
}

TautClass one(int n, Flavor flavor) { return TautClass::scalar(n, flavor, RatFunc(1)); }

TautClass diagonal(int n, Flavor flavor, const std::vector<int>& factors) {
  if (factors.size() < 2) throw UsageError("a diagonal needs at least two factors");
  std::set<int> distinct(factors.begin(), factors.end());
  if (distinct.size() != factors.size()) throw UsageError("diagonal factors must be distinct");
  for (int i : factors) checkIndex(i, n);
  Monomial m = Monomial::unit(n);
  const int lo = *distinct.begin() - 1;
  for (int i : factors) m.rep[i - 1] = static_cast<Index>(lo);
  return TautClass::fromMonomial(m, flavor);
}

TautClass psiClass(int n, Flavor flavor, int i, int exponent) {
  checkIndex(i, n);
  if (exponent < 0) throw UsageError("negative psi exponent");
  Monomial m = Monomial::unit(n);
  if (flavor == Flavor::Relative) {
    m.psi[i - 1] = narrow(exponent, "psi");
  } else {
    if (exponent >= 2) return TautClass(n, flavor);
    if (exponent == 1) m.decor[i - 1] = static_cast<std::uint8_t>(Decor::Canonical);
  }
  return TautClass::fromMonomial(m, flavor);
}

TautClass kappaClass(int n, Flavor flavor, int a) {
  if (a < 0) throw UsageError("negative kappa index");
  if (a == 0) return TautClass::scalar(n, flavor, twoGMinusTwo());
  if (flavor == Flavor::Pointed) return TautClass(n, flavor);
  if (a >= kMaxKappa) throw RefusalError("kappa index exceeds supported range");
  Monomial m = Monomial::unit(n);
  m.kappa[a] = 1;
  return TautClass::fromMonomial(m, flavor);
}

TautClass canonicalClass(int n, int i) {
  checkIndex(i, n);
  Monomial m = Monomial::unit(n);
  m.decor[i - 1] = static_cast<std::uint8_t>(Decor::Canonical);
  return TautClass::fromMonomial(m, Flavor::Pointed);
}

TautClass pointClass(int n, int i) {
  checkIndex(i, n);
  Monomial m = Monomial::unit(n);
  m.decor[i - 1] = static_cast<std::uint8_t>(Decor::Point);
  return TautClass::fromMonomial(m, Flavor::Pointed);
}

// --- functoriality -----------------------------------------------------------

TautClass pullback(const TautClass& c, const std::vector<int>& inj, int newN) {
  checkFactorCount(newN);
  if (static_cast<int>(inj.size()) != c.n())
    throw UsageError("pullback map has " + std::to_string(inj.size()) + " entries for " + std::to_string(c.n()) +
                     " factors");
  std::vector<int> inj0(inj.size());
  std::set<int> seen;
  for (std::size_t k = 0; k < inj.size(); ++k) {
    checkIndex(inj[k], newN);
    if (!seen.insert(inj[k]).second) throw UsageError("pullback map is not injective");
    inj0[k] = inj[k] - 1;
  }
  TermAccumulator acc(newN, c.flavor());
  for (const auto& [m, x] : c.terms()) acc.add(pullMonomial(m, inj0, newN), x);
  return std::move(acc).finish();
}

TautClass pushforward(const TautClass& c, int j) { return pushforward(c, std::vector<int>{j}); }

TautClass pushforward(const TautClass& c, std::vector<int> factors) {
  std::sort(factors.begin(), factors.end(), std::greater<>());
  if (std::adjacent_find(factors.begin(), factors.end()) != factors.end())
    throw UsageError("pushforward factors must be distinct");
  for (int j : factors) checkIndex(j, c.n());
  const int newN = c.n() - static_cast<int>(factors.size());
  TermAccumulator acc(newN, c.flavor());
  for (const auto& [m, x] : c.terms()) {
    std::optional<std::pair<int, Monomial>> cur = std::make_pair(0, m);
    int sPow = 0;
    for (int j : factors) {
      cur = pushMonomial(cur->second, j - 1, c.flavor());
      if (!cur) break;
      sPow += cur->first;
    }
    if (!cur) continue;
    acc.add(cur->second, sPow == 0 ? x : x * sPower(sPow));
  }
  return std::move(acc).finish();
}

TautClass exteriorProduct(const TautClass& a, const TautClass& b) {
  if (a.flavor() != b.flavor()) throw UsageError("exterior product of different flavors");
  const int n = a.n() + b.n();
  checkFactorCount(n);
  TermAccumulator acc(n, a.flavor());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = Monomial::unit(n);
      for (int i = 0; i < a.n(); ++i) {
        m.rep[i] = ma.rep[i];
        m.psi[i] = ma.psi[i];
        m.decor[i] = ma.decor[i];
      }
      for (int i = 0; i < b.n(); ++i) {
        m.rep[a.n() + i] = static_cast<Index>(mb.rep[i] + a.n());
        m.psi[a.n() + i] = mb.psi[i];
        m.decor[a.n() + i] = mb.decor[i];
      }
      for (int k = 0; k < kMaxKappa; ++k) m.kappa[k] = narrow(ma.kappa[k] + mb.kappa[k], "kappa");
      acc.add(m, ca * cb);
    }
  }
  return std::move(acc).finish();
}

TautClass restrictToFiber(const TautClass& c) {
  if (c.flavor() != Flavor::Relative) throw UsageError("restrict expects a relative class");
  TermAccumulator acc(c.n(), Flavor::Pointed);
  for (const auto& [m, x] : c.terms()) {
    bool zero = false;
    for (int a = 1; a < kMaxKappa; ++a) zero = zero || m.kappa[a] != 0;
    Monomial r = m;
    r.kappa = {};
    r.psi = {};
    for (int i = 0; i < m.n && !zero; ++i) {
      if (m.rep[i] != i) continue;
      if (m.psi[i] >= 2) zero = true;
      if (m.psi[i] == 1) r.decor[i] = static_cast<std::uint8_t>(Decor::Canonical);
    }
    if (!zero) acc.add(r, x);
  }
  return std::move(acc).finish();
}

RatFunc degree(const TautClass& c) {
  if (c.flavor() != Flavor::Pointed) throw UsageError("deg expects a pointed class");
  RatFunc total;
  for (const auto& [m, x] : c.terms()) {
    int canonical = 0;
    for (int r = 0; r < m.n; ++r) {
      if (m.rep[r] != r) continue;
      if (m.decor[r] == 0)
        throw UsageError("deg: term " + monomialText(m) + " is not of top codimension " + std::to_string(c.n()));
      canonical += m.decor[r] == static_cast<std::uint8_t>(Decor::Canonical);
    }
    total += x * sPower(canonical);
  }
  return total;
}

TautClass specialize(const TautClass& c, const Rational& g0) {
  TermAccumulator acc(c.n(), c.flavor());
  for (const auto& [m, x] : c.terms()) acc.add(m, RatFunc(x.eval(g0)));
  return std::move(acc).finish();
}

// --- correspondences ---------------------------------------------------------

Correspondence makeCorrespondence(int source, int target, TautClass cls) {
  if (source < 0 || target < 0 || cls.n() != source + target)
    throw UsageError("correspondence class has " + std::to_string(cls.n()) + " factors, expected " +
                     std::to_string(source) + "+" + std::to_string(target));
  return Correspondence{source, target, std::move(cls)};
}

Correspondence identityCorrespondence(int n, Flavor flavor) {
  checkFactorCount(2 * n);
  Monomial m = Monomial::unit(2 * n);
  for (int i = 0; i < n; ++i) m.rep[n + i] = static_cast<Index>(i);
  return Correspondence{n, n, TautClass::fromMonomial(m, flavor)};
}

Correspondence compose(const Correspondence& second, const Correspondence& first) {
  if (first.target != second.source)
    throw UsageError("compose: target " + std::to_string(first.target) + " does not match source " +
                     std::to_string(second.source));
  if (first.cls.flavor() != second.cls.flavor()) throw UsageError("compose: flavor mismatch");
  const int a = first.source, b = first.target, c = second.target;
  const int total = a + b + c;
  std::vector<int> injFirst(static_cast<std::size_t>(a + b)), injSecond(static_cast<std::size_t>(b + c));
  std::iota(injFirst.begin(), injFirst.end(), 1);
  std::iota(injSecond.begin(), injSecond.end(), a + 1);
  TautClass prod = pullback(first.cls, injFirst, total) * pullback(second.cls, injSecond, total);
  std::vector<int> middle(static_cast<std::size_t>(b));
  std::iota(middle.begin(), middle.end(), a + 1);
  return Correspondence{a, c, pushforward(prod, middle)};
}

TautClass act(const Correspondence& gamma, const TautClass& alpha) {
  if (alpha.n() != gamma.source)
    throw UsageError("act: class has " + std::to_string(alpha.n()) + " factors, correspondence source is " +
                     std::to_string(gamma.source));
  if (alpha.flavor() != gamma.cls.flavor()) throw UsageError("act: flavor mismatch");
  std::vector<int> inj(static_cast<std::size_t>(gamma.source));
  std::iota(inj.begin(), inj.end(), 1);
  TautClass prod = pullback(alpha, inj, gamma.cls.n()) * gamma.cls;
  return pushforward(prod, inj);
}

Correspondence projector(int k) {
  const Flavor R = Flavor::Relative;
  const RatFunc s = twoGMinusTwo();
  const RatFunc invS = s.inverse();
  TautClass pi2 = invS * psiClass(2, R, 2);
  TautClass pi0 = invS * psiClass(2, R, 1) - (invS * invS) * kappaClass(2, R, 1);
  switch (k) {
    case 0:
      return Correspondence{1, 1, pi0};
    case 1:
      return Correspondence{1, 1, diagonal(2, R, {1, 2}) - pi0 - pi2};
    case 2:
      return Correspondence{1, 1, pi2};
    default:
      throw UsageError("projector index must be 0, 1 or 2");
  }
}

Correspondence pointedProjector(int k) {
  switch (k) {
    case 0:
      return Correspondence{1, 1, pointClass(2, 1)};
    case 1:
      return Correspondence{1, 1, diagonal(2, Flavor::Pointed, {1, 2}) - pointClass(2, 1) - pointClass(2, 2)};
    case 2:
      return Correspondence{1, 1, pointClass(2, 2)};
    default:
      throw UsageError("projector index must be 0, 1 or 2");
  }
}

Correspondence projectorOf(int k, Flavor flavor) {
  return flavor == Flavor::Relative ? projector(k) : pointedProjector(k);
}

Correspondence kunnethProjector(const std::vector<int>& a, Flavor flavor) {
  const int n = static_cast<int>(a.size());
  checkFactorCount(2 * n);
  TautClass cls = one(2 * n, flavor);
  for (int i = 0; i < n; ++i) cls = cls * pullback(projectorOf(a[static_cast<std::size_t>(i)], flavor).cls, {i + 1, i + 1 + n}, 2 * n);
  return Correspondence{n, n, cls};
}

std::vector<std::vector<int>> kunnethVectors(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(a);
    int i = n - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == 2) a[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return out;
}

// --- named cycles ------------------------------------------------------------

TautClass fp(int n) {
  if (n < 1) throw UsageError("fp needs n >= 1");
  const Flavor R = Flavor::Relative;
  TautClass alpha = psiClass(2, R, 1);
  for (int i = 0; i < n; ++i) alpha = alpha * diagonal(2, R, {1, 2});
  return act(kunnethProjector({1, 1}, R), alpha);
}

TautClass fpnm(int n, int m) {
  if (n < 2) throw UsageError("fpnm needs n >= 2");
  if (m < 0) throw UsageError("fpnm needs m >= 0");
  const Flavor R = Flavor::Relative;
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  TautClass alpha = diagonal(n, R, all) * psiClass(n, R, 1, m);
  return act(kunnethProjector(std::vector<int>(static_cast<std::size_t>(n), 1), R), alpha);
}

TautClass gs() { return fpnm(3, 0); }

TautClass grossSchoenY() {
  const Flavor P = Flavor::Pointed;
  TautClass y = diagonal(3, P, {1, 2, 3});
  y = y - diagonal(3, P, {1, 2}) * pointClass(3, 3);
  y = y - diagonal(3, P, {1, 3}) * pointClass(3, 2);
  y = y - diagonal(3, P, {2, 3}) * pointClass(3, 1);
  y = y + pointClass(3, 2) * pointClass(3, 3);
  y = y + pointClass(3, 1) * pointClass(3, 3);
  y = y + pointClass(3, 1) * pointClass(3, 2);
  return y;
}

TautClass zk() {
  return canonicalClass(2, 1) * canonicalClass(2, 2) -
         twoGMinusTwo() * (diagonal(2, Flavor::Pointed, {1, 2}) * canonicalClass(2, 1));
}

LewisEstimate lewisLevelEstimate(const TautClass& c) {
  LewisEstimate r{c.n(), -1, {}, {}};
  std::set<int> codims;
  for (const auto& t : c.terms()) codims.insert(t.first.codim());
  if (codims.size() == 1) r.codim = *codims.begin();
  std::vector<int> counts(static_cast<std::size_t>(2 * c.n() + 1), 0);
  for (const auto& a : kunnethVectors(c.n())) {
    TautClass image = act(kunnethProjector(a, c.flavor()), c);
    if (image.isZero()) continue;
    const int w = std::accumulate(a.begin(), a.end(), 0);
    ++counts[static_cast<std::size_t>(w)];
    r.nonzero.push_back({a, w, std::move(image)});
  }
  for (int w = 0; w <= 2 * c.n(); ++w) r.histogram.emplace_back(w, counts[static_cast<std::size_t>(w)]);
  return r;
}

// --- text --------------------------------------------------------------------

std::string flavorName(Flavor f) { return f == Flavor::Relative ? "relative" : "pointed"; }

Flavor parseFlavor(std::string_view s) {
  if (s == "relative") return Flavor::Relative;
  if (s == "pointed") return Flavor::Pointed;
  throw UsageError("unknown flavor '" + std::string(s) + "' (expected relative or pointed)");
}

namespace {

std::vector<std::string> monomialFactors(const Monomial& m, bool tex) {
  std::vector<std::string> parts;
  auto power = [&](std::string base, int e) {
    if (e == 1) return base;
    return tex ? base + "^{" + std::to_string(e) + "}" : base + "^" + std::to_string(e);
  };
  for (const auto& block : m.blocks()) {
    const int r = block.front() - 1;
    if (block.size() >= 2) {
      std::string s;
      for (std::size_t k = 0; k < block.size(); ++k) {
        if (!tex && k) s += ",";
        s += std::to_string(block[k]);
      }
      parts.push_back(tex ? "\\Delta_{" + s + "}" : "D(" + s + ")");
    }
    const std::string idx = std::to_string(r + 1);
    if (m.psi[r]) parts.push_back(power(tex ? "\\psi_{" + idx + "}" : "psi(" + idx + ")", m.psi[r]));
    if (m.decor[r] == static_cast<std::uint8_t>(Decor::Canonical)) parts.push_back(tex ? "K_{" + idx + "}" : "K(" + idx + ")");
    if (m.decor[r] == static_cast<std::uint8_t>(Decor::Point)) parts.push_back(tex ? "o_{" + idx + "}" : "o(" + idx + ")");
  }
  for (int a = 1; a < kMaxKappa; ++a)
    if (m.kappa[a])
      parts.push_back(power(tex ? "\\kappa_{" + std::to_string(a) + "}" : "kappa(" + std::to_string(a) + ")", m.kappa[a]));
  return parts;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string coefficientText(const RatFunc& c, bool tex) {
  const bool sum = c.den() == Poly(1) && c.num().degree() >= 1 &&
                   std::count_if(c.num().coeffs().begin(), c.num().coeffs().end(),
                                 [](const BigInt& x) { return x != 0; }) > 1;
  if (tex) return sum ? "\\left(" + c.latex() + "\\right)" : c.latex();
  return sum ? "(" + c.str() + ")" : c.str();
}

std::string classText(const TautClass& c, bool tex) {
  if (c.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, x] : c.terms()) {
    const bool negative = x.num().lead() < 0;
    const RatFunc a = negative ? -x : x;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const std::string mono = join(monomialFactors(m, tex), tex ? " " : "*");
    if (mono.empty())
      out += negative ? coefficientText(a, tex) : tex ? a.latex() : a.str();
    else if (a.isOne())
      out += mono;
    else
      out += coefficientText(a, tex) + (tex ? " " : "*") + mono;
  }
  return out;
}

struct ClassAtoms {
  int n;
  Flavor flavor;

  TautClass integer(const BigInt& z) const { return TautClass::scalar(n, flavor, RatFunc(z)); }
  TautClass genus() const { return TautClass::scalar(n, flavor, RatFunc::g()); }
  TautClass one(const TautClass&) const { return taut::one(n, flavor); }

  TautClass divide(const TautClass& a, const TautClass& b, std::size_t pos) const {
    auto s = b.asScalar();
    if (!s) throw ParseError("divisor is not a scalar", pos, "scalar expression");
    if (s->isZero()) throw ParseError("division by zero", pos, "nonzero divisor");
    return s->inverse() * a;
  }

  int index(long i, std::size_t pos) const {
    if (i < 1 || i > n)
      throw ParseError("factor index " + std::to_string(i) + " out of range", pos, "index in 1.." + std::to_string(n));
    return static_cast<int>(i);
  }

  TautClass call(const std::string& name, const std::vector<long>& args, std::size_t pos) const {
    auto single = [&]() {
      if (args.size() != 1) throw ParseError(name + " takes one argument", pos, "one index");
      return index(args[0], pos);
    };
    if (name == "D") {
      if (args.size() < 2) throw ParseError("D needs at least two indices", pos, "D(i,j,...)");
      std::vector<int> idx;
      for (long a : args) idx.push_back(index(a, pos));
      std::set<int> distinct(idx.begin(), idx.end());
      if (distinct.size() != idx.size()) throw ParseError("repeated index in D", pos, "distinct indices");
      return diagonal(n, flavor, idx);
    }
    if (name == "psi") return psiClass(n, flavor, single());
    if (name == "kappa") {
      if (args.size() != 1 || args[0] < 0) throw ParseError("kappa takes one nonnegative index", pos, "kappa(a)");
      return kappaClass(n, flavor, static_cast<int>(args[0]));
    }
    if (name == "K" || name == "o") {
      if (flavor != Flavor::Pointed) throw ParseError(name + " requires the pointed flavor", pos, "D, psi or kappa");
      return name == "K" ? canonicalClass(n, single()) : pointClass(n, single());
    }
    throw ParseError("unknown generator '" + name + "'", pos, "D, psi, kappa, K, o or g");
  }
};

}  // namespace

std::string monomialText(const Monomial& m) {
  auto parts = monomialFactors(m, false);
  return parts.empty() ? "1" : join(parts, "*");
}

std::string str(const TautClass& c) { return classText(c, false); }
std::string latex(const TautClass& c) { return classText(c, true); }

TautClass parseClass(std::string_view text, int n, Flavor flavor) {
  checkFactorCount(n);
  ClassAtoms atoms{n, flavor};
  return detail::ExprParser<TautClass, ClassAtoms>(text, atoms).parse();
}

}  // namespace taut
