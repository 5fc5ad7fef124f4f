#include "taut/brauer.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>

#include "taut/error.hpp"

namespace taut::brauer {

namespace {

TautClass strand(int n, int p, int q, Flavor flavor) {
  return pullback(projectorOf(1, flavor).cls, {p + 1, q + 1}, n);
}

void forEachMatching(int points, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> partner(static_cast<std::size_t>(points), -1);
  std::function<void()> rec = [&]() {
    int first = 0;
    while (first < points && partner[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == points) {
      f(partner);
      return;
    }
    for (int q = first + 1; q < points; ++q) {
      if (partner[static_cast<std::size_t>(q)] >= 0) continue;
      partner[static_cast<std::size_t>(first)] = q;
      partner[static_cast<std::size_t>(q)] = first;
      rec();
      partner[static_cast<std::size_t>(first)] = -1;
      partner[static_cast<std::size_t>(q)] = -1;
    }
  };
  rec();
}

}  // namespace

// --- diagrams ------------------------------------------------------------------

BrauerDiagram::BrauerDiagram(int source, int target, std::vector<int> partner)
    : source_(source), target_(target), partner_(std::move(partner)) {
  const int n = source + target;
  if (source < 0 || target < 0 || n % 2 != 0)
    throw UsageError("a Brauer diagram needs an even number of points, got " + std::to_string(source) + "+" +
                     std::to_string(target));
  if (static_cast<int>(partner_.size()) != n) throw UsageError("partner table has the wrong length");
  for (int p = 0; p < n; ++p) {
    const int q = partner_[static_cast<std::size_t>(p)];
    if (q < 0 || q >= n || q == p || partner_[static_cast<std::size_t>(q)] != p)
      throw UsageError("not a perfect matching");
  }
}

BrauerDiagram BrauerDiagram::identity(int k) {
  std::vector<int> partner(static_cast<std::size_t>(2 * k));
  for (int i = 0; i < k; ++i) {
    partner[static_cast<std::size_t>(i)] = k + i;
    partner[static_cast<std::size_t>(k + i)] = i;
  }
  return BrauerDiagram(k, k, std::move(partner));
}

BrauerDiagram BrauerDiagram::cupCap(int k, int i) {
  if (i < 1 || i >= k) throw UsageError("cup-cap index must lie in 1..k-1");
  BrauerDiagram d = identity(k);
  auto& p = d.partner_;
  const int a = i - 1, b = i;
  p[static_cast<std::size_t>(a)] = b;
  p[static_cast<std::size_t>(b)] = a;
  p[static_cast<std::size_t>(k + a)] = k + b;
  p[static_cast<std::size_t>(k + b)] = k + a;
  return d;
}

std::vector<std::pair<int, int>> BrauerDiagram::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < points(); ++p)
    if (p < partner(p)) out.emplace_back(p, partner(p));
  return out;
}

namespace {

struct Stack {
  int a, b, c;
  std::vector<int> e1, e2;  // over a + b + c nodes; -1 where absent
};

Stack stack(const BrauerDiagram& d2, const BrauerDiagram& d1) {
  if (d1.target() != d2.source())
    throw UsageError("diagram composition: target " + std::to_string(d1.target()) + " does not match source " +
                     std::to_string(d2.source()));
  Stack s{d1.source(), d1.target(), d2.target(), {}, {}};
  const int total = s.a + s.b + s.c;
  s.e1.assign(static_cast<std::size_t>(total), -1);
  s.e2.assign(static_cast<std::size_t>(total), -1);
  for (int p = 0; p < d1.points(); ++p) s.e1[static_cast<std::size_t>(p)] = d1.partner(p);
  auto node2 = [&](int p) { return s.a + p; };
  for (int p = 0; p < d2.points(); ++p) s.e2[static_cast<std::size_t>(node2(p))] = node2(d2.partner(p));
  return s;
}

}  // namespace

int closedLoops(const BrauerDiagram& d2, const BrauerDiagram& d1) {
  Stack s = stack(d2, d1);
  std::vector<char> seen(static_cast<std::size_t>(s.a + s.b + s.c), 0);
  // Mark every middle node on an open path; the rest lie on closed loops.
  auto walk = [&](int x, bool viaFirst) {
    for (;;) {
      seen[static_cast<std::size_t>(x)] = 1;
      x = viaFirst ? s.e1[static_cast<std::size_t>(x)] : s.e2[static_cast<std::size_t>(x)];
      seen[static_cast<std::size_t>(x)] = 1;
      if (x < s.a || x >= s.a + s.b) return;
      viaFirst = !viaFirst;
    }
  };
  for (int x = 0; x < s.a; ++x) walk(x, true);
  for (int x = s.a + s.b; x < s.a + s.b + s.c; ++x) walk(x, false);
  int loops = 0;
  for (int x = s.a; x < s.a + s.b; ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    ++loops;
    int y = x;
    bool viaFirst = true;
    do {
      seen[static_cast<std::size_t>(y)] = 1;
      y = viaFirst ? s.e1[static_cast<std::size_t>(y)] : s.e2[static_cast<std::size_t>(y)];
      viaFirst = !viaFirst;
    } while (y != x);
  }
  return loops;
}

ScaledDiagram composeDiagrams(const BrauerDiagram& d2, const BrauerDiagram& d1, const RatFunc& delta) {
  Stack s = stack(d2, d1);
  const int outer = s.a + s.c;
  auto outerIndex = [&](int x) { return x < s.a ? x : x - s.b; };
  std::vector<int> partner(static_cast<std::size_t>(outer), -1);
  auto trace = [&](int x, bool viaFirst) {
    int y = x;
    for (;;) {
      y = viaFirst ? s.e1[static_cast<std::size_t>(y)] : s.e2[static_cast<std::size_t>(y)];
      if (y < s.a || y >= s.a + s.b) return y;
      viaFirst = !viaFirst;
    }
  };
  for (int x = 0; x < s.a; ++x) partner[static_cast<std::size_t>(outerIndex(x))] = outerIndex(trace(x, true));
  for (int x = s.a + s.b; x < s.a + s.b + s.c; ++x)
    partner[static_cast<std::size_t>(outerIndex(x))] = outerIndex(trace(x, false));
  const int loops = closedLoops(d2, d1);
  return ScaledDiagram{delta.pow(static_cast<unsigned>(loops)), BrauerDiagram(s.a, s.c, std::move(partner))};
}

std::uint64_t matchingCount(int points) {
  if (points < 0 || points % 2 != 0) return 0;
  std::uint64_t r = 1;
  for (int k = points - 1; k > 1; k -= 2) r *= static_cast<std::uint64_t>(k);
  return r;
}

std::vector<BrauerDiagram> allDiagrams(int source, int target) {
  std::vector<BrauerDiagram> out;
  if ((source + target) % 2 != 0) return out;
  forEachMatching(source + target, [&](const std::vector<int>& p) { out.emplace_back(source, target, p); });
  return out;
}

// --- realization ---------------------------------------------------------------

Correspondence realize(const BrauerDiagram& d, Flavor flavor) {
  const int n = d.points();
  TautClass cls = one(n, flavor);
  for (auto [p, q] : d.pairs()) cls = cls * strand(n, p, q, flavor);
  return makeCorrespondence(d.source(), d.target(), std::move(cls));
}

RatFunc loopParameter(Flavor flavor) {
  TautClass closed = pushforward(diagonal(2, flavor, {1, 2}) * projectorOf(1, flavor).cls, std::vector<int>{1, 2});
  auto s = closed.asScalar();
  if (!s) throw InvariantError("closed loop did not evaluate to a scalar");
  return *s;
}

TautClass actOnProduct(const BrauerDiagram& d, const std::vector<TautClass>& blocks) {
  if (blocks.empty()) throw UsageError("actOnProduct needs at least one block");
  const Flavor flavor = blocks.front().flavor();
  std::vector<int> offset;
  int m = 0;
  for (const auto& b : blocks) {
    if (b.flavor() != flavor) throw UsageError("source blocks differ in flavor");
    offset.push_back(m);
    m += b.n();
  }
  if (m != d.source())
    throw UsageError("source blocks have " + std::to_string(m) + " factors, diagram source is " +
                     std::to_string(d.source()));
  auto blockOf = [&](int p) {
    return static_cast<int>(std::upper_bound(offset.begin(), offset.end(), p) - offset.begin()) - 1;
  };

  TautClass cur = one(0, flavor);
  std::vector<int> live;  // source point carried by each factor of cur
  std::vector<char> used(blocks.size(), 0);
  for (std::size_t step = 0; step < blocks.size(); ++step) {
    // Prefer the block with the most caps into what is already live.
    int best = -1, bestScore = -1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (used[b]) continue;
      int score = 0;
      for (int p = offset[b]; p < offset[b] + blocks[b].n(); ++p) {
        const int q = d.partner(p);
        if (q < m && (std::find(live.begin(), live.end(), q) != live.end() || blockOf(q) == static_cast<int>(b)))
          ++score;
      }
      if (score > bestScore) {
        best = static_cast<int>(b);
        bestScore = score;
      }
    }
    used[static_cast<std::size_t>(best)] = 1;
    cur = exteriorProduct(cur, blocks[static_cast<std::size_t>(best)]);
    for (int p = offset[static_cast<std::size_t>(best)]; p < offset[static_cast<std::size_t>(best)] + blocks[static_cast<std::size_t>(best)].n(); ++p)
      live.push_back(p);
    for (;;) {
      int i = -1, j = -1;
      for (int x = 0; x < static_cast<int>(live.size()) && i < 0; ++x) {
        const int q = d.partner(live[static_cast<std::size_t>(x)]);
        if (q >= m) continue;
        auto it = std::find(live.begin(), live.end(), q);
        if (it != live.end()) {
          i = x;
          j = static_cast<int>(it - live.begin());
        }
      }
      if (i < 0) break;
      cur = pushforward(cur * strand(cur.n(), i, j, flavor), std::vector<int>{i + 1, j + 1});
      live.erase(live.begin() + std::max(i, j));
      live.erase(live.begin() + std::min(i, j));
      if (cur.isZero()) return TautClass(d.target(), flavor);
    }
  }

  const int t = static_cast<int>(live.size());
  const int n = t + d.target();
  TautClass cls = one(n, flavor);
  for (int x = 0; x < t; ++x) cls = cls * strand(n, x, t + d.partner(live[static_cast<std::size_t>(x)]) - m, flavor);
  for (int q = m; q < d.points(); ++q)
    if (d.partner(q) > q) cls = cls * strand(n, t + q - m, t + d.partner(q) - m, flavor);
  return act(Correspondence{t, d.target(), std::move(cls)}, cur);
}

// --- linear algebra over Q(g) ----------------------------------------------------

SpanResult solveInSpan(const std::vector<TautClass>& vectors, const TautClass& target) {
  std::map<Monomial, std::size_t> rowOf;
  auto rows = [&](const TautClass& c) {
    for (const auto& [mono, x] : c.terms()) rowOf.emplace(mono, rowOf.size());
  };
  for (const auto& v : vectors) rows(v);
  rows(target);
  const std::size_t R = rowOf.size(), C = vectors.size();
  std::vector<std::vector<RatFunc>> a(R, std::vector<RatFunc>(C + 1));
  for (std::size_t j = 0; j < C; ++j)
    for (const auto& [mono, x] : vectors[j].terms()) a[rowOf[mono]][j] = x;
  for (const auto& [mono, x] : target.terms()) a[rowOf[mono]][C] = x;

  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t col = 0; col < C && r < R; ++col) {
    std::size_t piv = r;
    while (piv < R && a[piv][col].isZero()) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[r]);
    const RatFunc inv = a[r][col].inverse();
    for (std::size_t k = col; k <= C; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || a[i][col].isZero()) continue;
      const RatFunc f = a[i][col];
      for (std::size_t k = col; k <= C; ++k)
        if (!a[r][k].isZero()) a[i][k] -= f * a[r][k];
    }
    pivotCol.push_back(col);
    ++r;
  }
  SpanResult result;
  result.rank = r;
  for (std::size_t i = r; i < R; ++i)
    if (!a[i][C].isZero()) return result;
  std::vector<RatFunc> x(C);
  for (std::size_t i = 0; i < r; ++i) x[pivotCol[i]] = a[i][C];
  result.solution = std::move(x);
  return result;
}

// --- search --------------------------------------------------------------------

namespace {

bool fullySymmetric(const TautClass& c) {
  const int n = c.n();
  for (int i = 1; i < n; ++i) {
    std::vector<int> swap(static_cast<std::size_t>(n));
    std::iota(swap.begin(), swap.end(), 1);
    std::swap(swap[static_cast<std::size_t>(i - 1)], swap[static_cast<std::size_t>(i)]);
    if (pullback(c, swap, n) != c) return false;
  }
  return true;
}

std::optional<RatFunc> proportionality(const TautClass& image, const TautClass& target) {
  if (target.isZero()) return image.isZero() ? std::optional<RatFunc>(RatFunc(1)) : std::nullopt;
  if (image.isZero()) return std::nullopt;
  const auto& [mono, t0] = target.terms().front();
  const RatFunc i0 = image.coefficient(mono);
  if (i0.isZero()) return std::nullopt;
  const RatFunc c = t0 / i0;
  if (c * image == target) return c;
  return std::nullopt;
}

// Canonical description of a matching up to permutations of equal blocks and
// of the legs of fully symmetric blocks. A port is (block, leg) for source
// points, with leg -1 on symmetric blocks, and (-1, q) for target point q.
class Canonicalizer {
 public:
  Canonicalizer(const std::vector<TautClass>& blocks, int target) : target_(target) {
    int m = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const bool sym = fullySymmetric(blocks[b]);
      for (int l = 0; l < blocks[b].n(); ++l) ports_.push_back({static_cast<int>(b), sym ? -1 : l});
      m += blocks[b].n();
    }
    for (int q = 0; q < target; ++q) ports_.push_back({-1, q});
    // Permutations of blocks preserving the block classes.
    std::vector<int> cls(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      cls[b] = static_cast<int>(b);
      for (std::size_t c = 0; c < b; ++c)
        if (blocks[c] == blocks[b]) {
          cls[b] = cls[c];
          break;
        }
    }
    std::vector<int> perm(blocks.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (std::size_t b = 0; b < perm.size() && ok; ++b) ok = cls[static_cast<std::size_t>(perm[b])] == cls[b];
      if (ok) perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<int> key(const BrauerDiagram& d) const {
    std::vector<int> best;
    std::vector<std::array<int, 4>> edges;
    for (const auto& perm : perms_) {
      edges.clear();
      for (auto [p, q] : d.pairs()) {
        std::array<int, 2> u = port(p, perm), v = port(q, perm);
        if (v < u) std::swap(u, v);
        edges.push_back({u[0], u[1], v[0], v[1]});
      }
      std::sort(edges.begin(), edges.end());
      std::vector<int> flat;
      flat.reserve(edges.size() * 4);
      for (const auto& e : edges) flat.insert(flat.end(), e.begin(), e.end());
      if (best.empty() || flat < best) best = std::move(flat);
    }
    return best;
  }

 private:
  std::array<int, 2> port(int p, const std::vector<int>& perm) const {
    auto x = ports_[static_cast<std::size_t>(p)];
    if (x[0] >= 0) x[0] = perm[static_cast<std::size_t>(x[0])];
    return x;
  }

  int target_;
  std::vector<std::array<int, 2>> ports_;
  std::vector<std::vector<int>> perms_;
};

}  // namespace

SearchReport searchCorrespondence(const std::vector<TautClass>& sourceBlocks, const TautClass& target,
                                  const SearchOptions& options) {
  if (sourceBlocks.empty()) throw UsageError("search needs at least one source block");
  int m = 0;
  for (const auto& b : sourceBlocks) {
    if (b.flavor() != target.flavor()) throw UsageError("source and target differ in flavor");
    m += b.n();
  }
  const int k = target.n();
  if ((m + k) % 2 != 0) throw UsageError("source and target factor counts must have even sum");
  if (options.maxTerms < 1) throw UsageError("max-terms must be at least 1");
  const std::uint64_t count = matchingCount(m + k);
  if (m + k > 14 || count > options.maxMatchings)
    throw RefusalError("enumeration bound exceeded: " + std::to_string(count) + " matchings on " +
                       std::to_string(m + k) + " points (limit " + std::to_string(options.maxMatchings) + ")");

  Canonicalizer canon(sourceBlocks, k);
  std::map<std::vector<int>, std::size_t> orbitOf;
  std::vector<BrauerDiagram> reps;
  std::vector<std::uint64_t> sizes;
  SearchReport report;
  forEachMatching(m + k, [&](const std::vector<int>& partner) {
    BrauerDiagram d(m, k, partner);
    ++report.enumerated;
    auto [it, inserted] = orbitOf.try_emplace(canon.key(d), reps.size());
    if (inserted) {
      reps.push_back(std::move(d));
      sizes.push_back(0);
    }
    ++sizes[it->second];
  });
  report.orbits = reps.size();

  std::vector<TautClass> images;
  std::vector<std::size_t> firstOrbit;  // orbit giving each distinct image
  for (std::size_t o = 0; o < reps.size(); ++o) {
    TautClass image = actOnProduct(reps[o], sourceBlocks);
    if (auto c = proportionality(image, target))
      report.solutions.push_back({{ScaledDiagram{*c, reps[o]}}, {sizes[o]}});
    if (image.isZero()) {
      ++report.zeroImages;
      continue;
    }
    if (std::find(images.begin(), images.end(), image) == images.end()) {
      images.push_back(std::move(image));
      firstOrbit.push_back(o);
    }
  }
  report.distinctImages = images.size();
  const SpanResult span = solveInSpan(images, target);
  report.spanRank = span.rank;
  report.targetInSpan = span.solution.has_value();

  if (options.maxTerms >= 2 && report.solutions.empty() && report.targetInSpan) {
    // Smallest combinations of distinct images, by increasing support size.
    const std::size_t N = images.size();
    for (int t = 2; t <= options.maxTerms && report.solutions.empty(); ++t) {
      if (static_cast<std::size_t>(t) > N) break;
      std::vector<std::size_t> idx(static_cast<std::size_t>(t));
      std::iota(idx.begin(), idx.end(), 0);
      std::uint64_t tried = 0;
      for (;;) {
        if (++tried > 200000) throw RefusalError("combination search exceeded 200000 subsets; lower --max-terms");
        std::vector<TautClass> sub;
        for (auto i : idx) sub.push_back(images[i]);
        SpanResult s = solveInSpan(sub, target);
        if (s.solution && std::none_of(s.solution->begin(), s.solution->end(), [](const RatFunc& x) { return x.isZero(); })) {
          SearchSolution sol;
          for (std::size_t j = 0; j < idx.size(); ++j) {
            sol.terms.push_back({(*s.solution)[j], reps[firstOrbit[idx[j]]]});
            sol.orbitSizes.push_back(sizes[firstOrbit[idx[j]]]);
          }
          report.solutions.push_back(std::move(sol));
        }
        int p = t - 1;
        while (p >= 0 && idx[static_cast<std::size_t>(p)] == N - static_cast<std::size_t>(t - p)) --p;
        if (p < 0) break;
        ++idx[static_cast<std::size_t>(p)];
        for (int q = p + 1; q < t; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
      }
    }
  }
  return report;
}

// --- text ----------------------------------------------------------------------

namespace {

std::string pointLabel(int p, int source) {
  return p < source ? std::to_string(p + 1) : std::to_string(p - source + 1) + "'";
}

}  // namespace

std::string str(const BrauerDiagram& d) {
  std::string s = "[";
  bool first = true;
  for (auto [p, q] : d.pairs()) {
    s += (first ? "(" : ",(") + pointLabel(p, d.source()) + "," + pointLabel(q, d.source()) + ")";
    first = false;
  }
  return s + "]";
}

namespace {

struct RawPair {
  std::array<std::pair<int, bool>, 2> ends;  // (1-based index, is target)
};

std::vector<RawPair> parsePairs(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError("unexpected input", pos, std::string("'") + c + "'");
    ++pos;
  };
  auto label = [&]() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 3) throw ParseError("expected a point label", start, "i or i'");
    const int i = std::stoi(std::string(text.substr(start, pos - start)));
    if (i < 1) throw ParseError("point labels start at 1", start, "i >= 1");
    bool prime = pos < text.size() && text[pos] == '\'';
    if (prime) ++pos;
    return std::make_pair(i, prime);
  };
  std::vector<RawPair> out;
  expect('[');
  skip();
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
  } else {
    for (;;) {
      expect('(');
      RawPair r;
      r.ends[0] = label();
      expect(',');
      r.ends[1] = label();
      expect(')');
      out.push_back(r);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing input", pos, "end of input");
  return out;
}

}  // namespace

BrauerDiagram parseDiagram(std::string_view text, int source, int target) {
  const auto raw = parsePairs(text);
  std::vector<int> partner(static_cast<std::size_t>(source + target), -1);
  auto index = [&](std::pair<int, bool> e) {
    const int limit = e.second ? target : source;
    if (e.first > limit)
      throw ParseError("point " + std::to_string(e.first) + (e.second ? "'" : "") + " out of range", 0,
                       "index in 1.." + std::to_string(limit));
    return e.second ? source + e.first - 1 : e.first - 1;
  };
  for (const auto& r : raw) {
    const int p = index(r.ends[0]), q = index(r.ends[1]);
    if (p == q || partner[static_cast<std::size_t>(p)] >= 0 || partner[static_cast<std::size_t>(q)] >= 0)
      throw ParseError("point used twice", 0, "perfect matching");
    partner[static_cast<std::size_t>(p)] = q;
    partner[static_cast<std::size_t>(q)] = p;
  }
  if (std::find(partner.begin(), partner.end(), -1) != partner.end())
    throw ParseError("unmatched point", 0, "perfect matching");
  return BrauerDiagram(source, target, std::move(partner));
}

BrauerDiagram parseDiagram(std::string_view text) {
  int source = 0, target = 0;
  for (const auto& r : parsePairs(text))
    for (auto e : r.ends) (e.second ? target : source) = std::max(e.second ? target : source, e.first);
  return parseDiagram(text, source, target);
}

}  // namespace taut::brauer
