#include "taut/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "taut/error.hpp"

namespace taut::weights {

namespace {

void checkRank(int g) {
  if (g < 1) throw UsageError("rank g must be at least 1");
  if (g > 12) throw RefusalError("rank g = " + std::to_string(g) + " exceeds the supported bound 12");
}

Weight add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Weight sub(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Positive roots as (i, j, sj): e_i + sj e_j for i < j (sj = -1 or +1), and
// 2e_i encoded as (i, i, 1).
template <class F>
void forEachPositiveRoot(int g, F&& f) {
  for (int i = 0; i < g; ++i) {
    for (int j = i + 1; j < g; ++j) {
      f(i, j, -1);
      f(i, j, 1);
    }
    f(i, i, 1);
  }
}

long pairing(const Weight& v, int i, int j, int sj) {
  if (i == j) return 2L * v[static_cast<std::size_t>(i)];
  return v[static_cast<std::size_t>(i)] + static_cast<long>(sj) * v[static_cast<std::size_t>(j)];
}

bool strictlyDominant(const Weight& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] <= v[i + 1]) return false;
  return !v.empty() && v.back() > 0;
}

}  // namespace

SignedPermutation SignedPermutation::identity(int g) {
  SignedPermutation w;
  w.perm.resize(static_cast<std::size_t>(g));
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(static_cast<std::size_t>(g), 1);
  return w;
}

Weight SignedPermutation::apply(const Weight& v) const {
  Weight r(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) r[i] = sign[i] * v[static_cast<std::size_t>(perm[i])];
  return r;
}

int SignedPermutation::length() const {
  // l(w) = #{alpha > 0 : w^{-1} alpha < 0} = #{alpha > 0 : <w rho', alpha> < 0}
  // for any strictly dominant rho'; use rho itself.
  const Weight v = apply(rho(rank()));
  int l = 0;
  forEachPositiveRoot(rank(), [&](int i, int j, int sj) { l += pairing(v, i, j, sj) < 0; });
  return l;
}

std::vector<SignedPermutation> weylGroup(int g) {
  checkRank(g);
  std::vector<SignedPermutation> out;
  std::vector<int> perm(static_cast<std::size_t>(g));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int mask = 0; mask < (1 << g); ++mask) {
      SignedPermutation w;
      w.perm = perm;
      for (int i = 0; i < g; ++i) w.sign.push_back((mask >> i) & 1 ? -1 : 1);
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

int wordLength(const SignedPermutation& w) {
  const int g = w.rank();
  const SignedPermutation start = SignedPermutation::identity(g);
  std::map<SignedPermutation, int> dist{{start, 0}};
  std::deque<SignedPermutation> queue{start};
  while (!queue.empty()) {
    SignedPermutation x = queue.front();
    queue.pop_front();
    const int d = dist[x];
    if (x == w) return d;
    for (int s = 0; s < g; ++s) {
      SignedPermutation y = x;
      if (s + 1 < g) {
        std::swap(y.perm[static_cast<std::size_t>(s)], y.perm[static_cast<std::size_t>(s + 1)]);
        std::swap(y.sign[static_cast<std::size_t>(s)], y.sign[static_cast<std::size_t>(s + 1)]);
      } else {
        y.sign[static_cast<std::size_t>(g - 1)] = -y.sign[static_cast<std::size_t>(g - 1)];
      }
      if (dist.emplace(y, d + 1).second) queue.push_back(std::move(y));
    }
  }
  throw InvariantError("signed permutation not reached by simple reflections");
}

Weight rho(int g) {
  if (g < 1) throw UsageError("rank g must be at least 1");
  Weight r(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) r[static_cast<std::size_t>(i)] = g - i;
  return r;
}

bool isDominant(const Weight& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1]) return false;
  return v.empty() || v.back() >= 0;
}

bool isRegular(const Weight& v) {
  std::set<int> seen;
  for (int x : v) {
    if (x == 0 || !seen.insert(std::abs(x)).second) return false;
  }
  return true;
}

int size(const Weight& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::optional<BbwResult> bbw(const Weight& lambda) {
  const int g = static_cast<int>(lambda.size());
  checkRank(g);
  const Weight v = add(lambda, rho(g));
  if (!isRegular(v)) return std::nullopt;
  SignedPermutation w;
  w.perm.resize(static_cast<std::size_t>(g));
  std::iota(w.perm.begin(), w.perm.end(), 0);
  std::sort(w.perm.begin(), w.perm.end(),
            [&](int a, int b) { return std::abs(v[static_cast<std::size_t>(a)]) > std::abs(v[static_cast<std::size_t>(b)]); });
  for (int p : w.perm) w.sign.push_back(v[static_cast<std::size_t>(p)] < 0 ? -1 : 1);
  // w maps v into the dominant chamber; its length equals that of w^{-1},
  // which counts the positive roots alpha with <v, alpha> < 0.
  int degree = 0;
  forEachPositiveRoot(g, [&](int i, int j, int sj) { degree += pairing(v, i, j, sj) < 0; });
  const Weight top = w.apply(v);
  if (!strictlyDominant(top)) throw InvariantError("bbw: w(lambda + rho) is not strictly dominant");
  return BbwResult{degree, sub(top, rho(g)), w};
}

std::vector<SignedPermutation> siegelCosetReps(int g) {
  std::vector<SignedPermutation> out;
  const Weight r = rho(g);
  for (auto& w : weylGroup(g)) {
    const Weight x = w.apply(r);
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) decreasing = decreasing && x[i] > x[i + 1];
    if (decreasing) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Weight> kostant(const Weight& lambda, int i) {
  if (!isDominant(lambda)) throw UsageError("kostant expects a dominant weight, got " + weightText(lambda));
  const int g = static_cast<int>(lambda.size());
  const Weight r = rho(g);
  const Weight v = add(lambda, r);
  std::vector<Weight> out;
  for (const auto& w : siegelCosetReps(g))
    if (w.length() == i) out.push_back(sub(w.apply(v), r));
  std::sort(out.begin(), out.end());
  return out;
}

BigInt weylDim(const Weight& lambda) {
  if (!isDominant(lambda)) throw UsageError("weylDim expects a dominant weight, got " + weightText(lambda));
  const int g = static_cast<int>(lambda.size());
  const Weight r = rho(g);
  const Weight v = add(lambda, r);
  BigInt num = 1, den = 1;
  forEachPositiveRoot(g, [&](int i, int j, int sj) {
    num *= pairing(v, i, j, sj);
    den *= pairing(r, i, j, sj);
  });
  if (num % den != 0) throw InvariantError("Weyl dimension is not an integer");
  return num / den;
}

std::vector<Weight> tensorStandard(const Weight& lambda) {
  if (!isDominant(lambda)) throw UsageError("tensorStandard expects a dominant weight, got " + weightText(lambda));
  std::vector<Weight> out;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (int d : {1, -1}) {
      Weight mu = lambda;
      mu[i] += d;
      if (isDominant(mu)) out.push_back(std::move(mu));
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DecompositionTable decomposePower(int n, int g) {
  checkRank(g);
  if (n < 0) throw UsageError("tensor power must be nonnegative");
  if (n > g)
    throw RefusalError("n = " + std::to_string(n) + " is outside the stable range n <= g = " + std::to_string(g));
  std::map<Weight, BigInt> cur{{Weight(static_cast<std::size_t>(g), 0), 1}};
  for (int step = 0; step < n; ++step) {
    std::map<Weight, BigInt> next;
    for (const auto& [lambda, m] : cur)
      for (auto& mu : tensorStandard(lambda)) next[mu] += m;
    cur = std::move(next);
  }
  DecompositionTable table;
  for (const auto& [lambda, m] : cur) table.emplace(lambda, DecompositionEntry{m, (n - size(lambda)) / 2});
  return table;
}

int fakhruddinR(int g, int i, int l) {
  if (g < 1) throw UsageError("g must be at least 1");
  if (l < 0 || l > g) throw UsageError("l must lie in 0..g");
  if (i < 0) throw UsageError("i must be nonnegative");
  int q = 0;
  while ((q + 1) * (g - l) + (q + 1) * (q + 2) / 2 <= i) ++q;
  return q;
}

bool vanishes(int g, int i, int l) { return 2 * fakhruddinR(g, i, l) + i < l; }

bool atPurityBoundary(int g, int i, int l) { return 2 * fakhruddinR(g, i, l) + i == l; }

int firstNonvanishing(int g, int l) {
  for (int i = 0;; ++i)
    if (!vanishes(g, i, l)) return i;
}

std::vector<LerayPiece> lerayPieces(int g, int n, int k) {
  checkRank(g);
  if (n < 0 || n > 16) throw UsageError("n must lie in 0..16");
  if (k < 0) throw UsageError("k must be nonnegative");
  std::vector<LerayPiece> out;
  for (int i = 0; i <= k; ++i) {
    const int fiber = k - i;
    if (fiber > 2 * n) continue;
    std::vector<int> alpha(static_cast<std::size_t>(n), 0);
    for (;;) {
      if (std::accumulate(alpha.begin(), alpha.end(), 0) == fiber) {
        LerayPiece piece{i, alpha, 0, {}};
        int twos = 0;
        for (int a : alpha) {
          piece.ones += a == 1;
          twos += a == 2;
        }
        for (const auto& [lambda, e] : decomposePower(piece.ones, g)) {
          const int l = size(lambda);
          piece.lambdas.push_back(
              {lambda, e.multiplicity, e.twist + twos, vanishes(g, i, l), atPurityBoundary(g, i, l)});
        }
        out.push_back(std::move(piece));
      }
      int p = n - 1;
      while (p >= 0 && alpha[static_cast<std::size_t>(p)] == 2) alpha[static_cast<std::size_t>(p--)] = 0;
      if (p < 0) break;
      ++alpha[static_cast<std::size_t>(p)];
    }
  }
  return out;
}

Weight parseWeight(std::string_view text, int g) {
  Weight v;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    std::size_t end = text.find(',', pos);
    std::string_view tok = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int x = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("malformed weight entry '" + std::string(tok) + "'", pos, "integer");
    v.push_back(x);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  if (g > 0 && static_cast<int>(v.size()) != g)
    throw UsageError("weight " + std::string(text) + " has " + std::to_string(v.size()) + " entries, expected g = " +
                     std::to_string(g));
  return v;
}

std::string weightText(const Weight& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace taut::weights
