#include "taut/symprod.hpp"

#include <algorithm>
#include <cctype>

#include "taut/error.hpp"

namespace taut::symprod {

namespace {

int oCount(const Multiset& m) { return static_cast<int>(std::count(m.begin(), m.end(), 0)); }

Multiset withAdded(Multiset m, int p) {
  m.insert(std::upper_bound(m.begin(), m.end(), p), p);
  return m;
}

}  // namespace

ZeroCycle ZeroCycle::basis(Multiset m, const BigInt& c) {
  ZeroCycle z(static_cast<int>(m.size()));
  z.add(std::move(m), c);
  return z;
}

BigInt ZeroCycle::degree() const {
  BigInt d = 0;
  for (const auto& [m, c] : terms_) d += c;
  return d;
}

void ZeroCycle::add(Multiset m, const BigInt& c) {
  if (static_cast<int>(m.size()) != n_)
    throw UsageError("multiset of size " + std::to_string(m.size()) + " in a cycle on S^" + std::to_string(n_));
  if (c == 0) return;
  std::sort(m.begin(), m.end());
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ZeroCycle ZeroCycle::operator-() const {
  ZeroCycle r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b) {
  if (a.n_ != b.n_) throw UsageError("adding cycles on different symmetric powers");
  ZeroCycle r = a;
  for (const auto& [m, c] : b.terms_) r.add(m, c);
  return r;
}

ZeroCycle operator-(const ZeroCycle& a, const ZeroCycle& b) { return a + (-b); }

ZeroCycle operator*(const BigInt& c, const ZeroCycle& a) {
  ZeroCycle r(a.n_);
  for (const auto& [m, x] : a.terms_) r.add(m, c * x);
  return r;
}

ZeroCycle pushO(const ZeroCycle& z, int i) {
  if (i < 0) throw UsageError("pushO needs i >= 0");
  ZeroCycle r(z.n() + i);
  for (const auto& [m, c] : z.terms()) {
    Multiset x(static_cast<std::size_t>(i), 0);
    x.insert(x.end(), m.begin(), m.end());
    r.add(std::move(x), c);
  }
  return r;
}

ZeroCycle sPull(const ZeroCycle& z) {
  if (z.n() < 1) throw UsageError("sPull needs a cycle on S^k with k >= 1");
  ZeroCycle r(z.n() - 1);
  for (const auto& [m, c] : z.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      Multiset x = m;
      x.erase(x.begin() + static_cast<std::ptrdiff_t>(k));
      r.add(std::move(x), c);
    }
  }
  return r;
}

ZeroCycle sPullDistinct(const ZeroCycle& z) {
  if (z.n() < 1) throw UsageError("sPull needs a cycle on S^k with k >= 1");
  ZeroCycle r(z.n() - 1);
  for (const auto& [m, c] : z.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k > 0 && m[k] == m[k - 1]) continue;
      Multiset x = m;
      x.erase(x.begin() + static_cast<std::ptrdiff_t>(k));
      r.add(std::move(x), c);
    }
  }
  return r;
}

std::vector<Multiset> allMultisets(int n, int alphabetSize) {
  if (n < 0 || alphabetSize < 1) throw UsageError("need n >= 0 and a nonempty alphabet");
  std::vector<Multiset> out;
  Multiset m(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(m);
    int p = n - 1;
    while (p >= 0 && m[static_cast<std::size_t>(p)] == alphabetSize - 1) --p;
    if (p < 0) break;
    const int v = m[static_cast<std::size_t>(p)] + 1;
    for (int q = p; q < n; ++q) m[static_cast<std::size_t>(q)] = v;
  }
  return out;
}

IdentityCheck verifyIdentity(int n, int alphabetSize, bool distinctConvention) {
  if (n < 2) throw UsageError("verifyIdentity needs n >= 2");
  auto pull = distinctConvention ? sPullDistinct : sPull;
  IdentityCheck result{true, std::nullopt, 0};
  for (const auto& m : allMultisets(n - 1, alphabetSize)) {
    const ZeroCycle z = ZeroCycle::basis(m);
    const ZeroCycle lhs = pull(pushO(z, 1));
    const ZeroCycle rhs = z + pushO(pull(z), 1);
    ++result.checked;
    if (lhs != rhs) {
      result.holds = false;
      result.counterexample = m;
      return result;
    }
  }
  return result;
}

std::vector<ZeroCycle> decompose(const ZeroCycle& z) {
  if (z.n() == 0) return {z};
  // Find y on S^{n-1} with sPull(z - o.y) = 0, i.e. y + o.sPull(y) = sPull(z).
  // The operator is triangular in the number of o's, with diagonal 1 + #o.
  const int n = z.n();
  std::map<std::pair<int, Multiset>, BigInt> residual;
  const ZeroCycle pulled = sPull(z);
  for (const auto& [m, c] : pulled.terms()) residual[{oCount(m), m}] += c;
  ZeroCycle y(n - 1);
  while (!residual.empty()) {
    auto node = residual.extract(residual.begin());
    const Multiset& m = node.key().second;
    const BigInt& w = node.mapped();
    if (w == 0) continue;
    const BigInt diag = 1 + node.key().first;
    if (w % diag != 0) throw InvariantError("non-integral component while decomposing " + multisetText(m));
    const BigInt coeff = w / diag;
    y.add(m, coeff);
    // Off-diagonal part of o.sPull: replace one copy of a non-o point by o.
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0 || (k > 0 && m[k] == m[k - 1])) continue;
      const auto copies = std::count(m.begin(), m.end(), m[k]);
      Multiset x = m;
      x.erase(x.begin() + static_cast<std::ptrdiff_t>(k));
      x = withAdded(std::move(x), 0);
      residual[{oCount(x), x}] -= coeff * static_cast<long>(copies);
    }
  }
  std::vector<ZeroCycle> out{z - pushO(y, 1)};
  for (auto& c : decompose(y)) out.push_back(std::move(c));
  return out;
}

ZeroCycle reconstruct(const std::vector<ZeroCycle>& components) {
  if (components.empty()) throw UsageError("reconstruct needs at least one component");
  ZeroCycle r(components[0].n());
  for (std::size_t l = 0; l < components.size(); ++l) r = r + pushO(components[l], static_cast<int>(l));
  return r;
}

int lewisLevel(const ZeroCycle& z) {
  const auto comps = decompose(z);
  int top = -1;
  for (std::size_t l = 0; l < comps.size(); ++l)
    if (!comps[l].isZero()) top = static_cast<int>(l);
  return top < 0 ? z.n() : z.n() - top;
}

// --- text --------------------------------------------------------------------

namespace {

std::string pointName(int p) {
  if (p == 0) return "o";
  if (p <= 14) return std::string(1, static_cast<char>('a' + p - 1));
  if (p <= 25) return std::string(1, static_cast<char>('a' + p));
  return "p" + std::to_string(p);
}

int pointId(const std::string& name, std::size_t pos) {
  if (name == "o") return 0;
  if (name.size() == 1 && std::islower(static_cast<unsigned char>(name[0]))) {
    const int c = name[0] - 'a';
    return c < 14 ? c + 1 : c;
  }
  if (name.size() >= 2 && name[0] == 'p' &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    if (name.size() > 6) throw ParseError("point id too large", pos, "p<k> with k < 10^5");
    const int k = std::stoi(name.substr(1));
    if (k >= 1) return k;
  }
  throw ParseError("unknown point name '" + name + "'", pos, "o, a single letter or p<k>");
}

class CycleParser {
 public:
  explicit CycleParser(std::string_view text) : text_(text) {}

  ZeroCycle parse() {
    std::vector<std::pair<Multiset, BigInt>> terms;
    skip();
    bool first = true;
    while (pos_ < text_.size() || first) {
      BigInt sign = 1;
      if (accept('-'))
        sign = -1;
      else if (!accept('+') && !first)
        fail("expected '+' or '-'", "'+' or '-'");
      first = false;
      BigInt coeff = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        coeff = BigInt(std::string(text_.substr(start, pos_ - start)));
        if (!accept('*')) fail("expected '*' after coefficient", "'*'");
      }
      terms.emplace_back(multiset(), sign * coeff);
      skip();
    }
    const int n = static_cast<int>(terms.front().first.size());
    ZeroCycle z(n);
    for (auto& [m, c] : terms) {
      if (static_cast<int>(m.size()) != n) throw ParseError("multisets of different sizes", 0, "equal sizes");
      z.add(std::move(m), c);
    }
    return z;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const std::string& expected) const {
    throw ParseError(what, pos_, expected);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      skip();
      return true;
    }
    return false;
  }

  Multiset multiset() {
    if (!accept('{')) fail("expected '{'", "'{'");
    Multiset m;
    if (accept('}')) return m;
    do {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a point name", "point name");
      m.push_back(pointId(std::string(text_.substr(start, pos_ - start)), start));
    } while (accept(','));
    if (!accept('}')) fail("expected '}'", "',' or '}'");
    std::sort(m.begin(), m.end());
    return m;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string multisetText(const Multiset& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + pointName(m[i]);
  return s + "}";
}

ZeroCycle parseZeroCycle(std::string_view text) { return CycleParser(text).parse(); }

std::string str(const ZeroCycle& z) {
  if (z.isZero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : z.terms()) {
    const bool negative = c < 0;
    const BigInt a = negative ? BigInt(-c) : c;
    s += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (a != 1) s += a.get_str() + "*";
    s += multisetText(m);
  }
  return s;
}

}  // namespace taut::symprod
