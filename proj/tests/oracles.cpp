#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "widecount/codes.hpp"

namespace oracle {

using namespace widecount;

std::vector<CountVector> compositions(int k, int n) {
  std::vector<CountVector> out;
  CountVector cur(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[static_cast<std::size_t>(i)] = x;
      rec(i + 1, left - x);
    }
  };
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(0, n);
  return out;
}

std::uint64_t fixed_level_count(const DownwardClosedSet& m, const Permutation& g, int n) {
  std::uint64_t c = 0;
  for (const auto& b : compositions(m.dim(), n)) {
    bool fixed = true;
    for (int i = 0; i < m.dim(); ++i) fixed = fixed && b[static_cast<std::size_t>(g(i))] == b[static_cast<std::size_t>(i)];
    if (!fixed) continue;
    bool inside = true;
    for (const auto& o : m.obstructions()) {
      bool above = true;
      for (int i = 0; i < m.dim(); ++i) above = above && b[static_cast<std::size_t>(i)] >= o[static_cast<std::size_t>(i)];
      if (above) inside = false;
    }
    if (inside) ++c;
  }
  return c;
}

std::uint64_t cube_rotation_classes(int d, int n) {
  std::set<CountVector> reps;
  for (auto c : compositions(d, n)) {
    auto best = c;
    for (int s = 0; s < d; ++s) {
      std::rotate(c.begin(), c.begin() + 1, c.end());
      best = std::min(best, c);
    }
    reps.insert(best);
  }
  return reps.size();
}

std::uint64_t unlabeled_trees(int n) {
  if (n <= 2) return 1;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> perms;
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  for (;;) {
    // Decode by the textbook quadratic method.
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++degree[static_cast<std::size_t>(x)];
    std::vector<std::pair<int, int>> edges;
    for (int x : seq) {
      int leaf = 0;
      while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
      edges.push_back({leaf, x});
      --degree[static_cast<std::size_t>(leaf)];
      --degree[static_cast<std::size_t>(x)];
    }
    std::vector<int> last;
    for (int v = 0; v < n; ++v)
      if (degree[static_cast<std::size_t>(v)] == 1) last.push_back(v);
    edges.push_back({last[0], last[1]});
    std::vector<std::pair<int, int>> best;
    for (const auto& p : perms) {
      std::vector<std::pair<int, int>> img;
      for (auto [u, v] : edges) {
        int a = p[static_cast<std::size_t>(u)], b = p[static_cast<std::size_t>(v)];
        img.push_back({std::min(a, b), std::max(a, b)});
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    }
    seen.insert(best);
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return seen.size();
}

int rational_rank(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = rank;
    while (piv < rows && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(rank)]);
    for (int r = rank + 1; r < rows; ++r) {
      const Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
      for (int j = c; j < cols; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t rank_orbits(const std::vector<Rational>& entries, int k, int n, bool symmetric) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) cells.push_back({i, j});
  std::vector<int> choice(cells.size(), 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::vector<int>> seen;
  const int S = static_cast<int>(entries.size());
  for (;;) {
    std::vector<int> idx(static_cast<std::size_t>(n * n), 0);
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto [i, j] = cells[c];
      idx[static_cast<std::size_t>(i * n + j)] = choice[c];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entries[static_cast<std::size_t>(choice[c])];
      if (symmetric) {
        idx[static_cast<std::size_t>(j * n + i)] = choice[c];
        a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(choice[c])];
      }
    }
    if (rational_rank(a) == k) {
      std::vector<int> best;
      for (const auto& p : perms) {
        std::vector<int> img(idx.size());
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            img[static_cast<std::size_t>(p[static_cast<std::size_t>(i)] * n + p[static_cast<std::size_t>(j)])] = idx[static_cast<std::size_t>(i * n + j)];
        if (best.empty() || img < best) best = img;
      }
      seen.insert(best);
    }
    std::size_t c = 0;
    while (c < choice.size() && ++choice[c] == S) choice[c++] = 0;
    if (c == choice.size()) break;
  }
  return seen.size();
}

std::uint64_t model_orbits(const ModelFunctorPresentation& pres, int n) {
  if (n < pres.s0) return 0;
  // Pairs: injective placements of the s0 markers, then letters on the rest.
  std::vector<Pair> pairs;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<int>> placements;
  do placements.insert(std::vector<int>(perm.begin(), perm.begin() + pres.s0));
  while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& place : placements) {
    const int free = n - pres.s0;
    std::vector<int> word(static_cast<std::size_t>(free), 0);
    for (;;) {
      Pair p;
      p.cells.assign(static_cast<std::size_t>(n), -1);
      for (int j = 0; j < pres.s0; ++j) p.cells[static_cast<std::size_t>(place[static_cast<std::size_t>(j)])] = pres.k + j;
      std::size_t w = 0;
      for (auto& x : p.cells)
        if (x < 0) x = word[w++];
      if (pres.countset.contains(p.count_vector(pres.k))) pairs.push_back(p);
      std::size_t i = 0;
      while (i < word.size() && ++word[i] == pres.k) word[i++] = 0;
      if (i == word.size()) break;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  const std::size_t N = pairs.size();
  DisjointSets cls(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (pres.eq(n, pairs[i], pairs[j])) cls.unite(i, j);
  std::map<std::size_t, std::size_t> id;
  for (std::size_t i = 0; i < N; ++i) id.emplace(cls.find(i), id.size());
  DisjointSets orbits(id.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Permutation g(perm);
    for (std::size_t i = 0; i < N; ++i) {
      const auto img = permute_pair(pairs[i], g);
      const auto j = static_cast<std::size_t>(std::lower_bound(pairs.begin(), pairs.end(), img) - pairs.begin());
      orbits.unite(id[cls.find(i)], id[cls.find(j)]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orbits.count();
}

std::uint64_t code_classes(int q, int m, int n) {
  if (m > n) return 0;
  const auto& F = FiniteField::get(q);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(q);
  auto vec = [&](std::size_t code) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(q));
      code /= static_cast<std::size_t>(q);
    }
    return v;
  };
  // Every m-dimensional subspace as a sorted set of codewords.
  std::set<std::vector<std::vector<int>>> spaces;
  std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
  std::function<void(int)> rec = [&](int depth) {
    if (depth == m) {
      std::vector<std::vector<int>> rows;
      for (auto c : pick) rows.push_back(vec(c));
      auto copy = rows;
      if (row_reduce(F, copy) != m) return;
      std::set<std::vector<int>> words;
      std::vector<int> coef(static_cast<std::size_t>(m), 0);
      for (;;) {
        std::vector<int> w(static_cast<std::size_t>(n), 0);
        for (int r = 0; r < m; ++r)
          for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] = F.add(w[static_cast<std::size_t>(i)], F.mul(coef[static_cast<std::size_t>(r)], rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]));
        words.insert(w);
        int r = 0;
        while (r < m && ++coef[static_cast<std::size_t>(r)] == q) coef[static_cast<std::size_t>(r++)] = 0;
        if (r == m) break;
      }
      spaces.insert(std::vector<std::vector<int>>(words.begin(), words.end()));
      return;
    }
    for (std::size_t c = depth ? pick[static_cast<std::size_t>(depth - 1)] + 1 : 1; c < total; ++c) {
      pick[static_cast<std::size_t>(depth)] = c;
      rec(depth + 1);
    }
  };
  rec(0);
  // The monomial semilinear group acting on codewords.
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::vector<std::vector<int>>> reps;
  for (const auto& space : spaces) {
    std::vector<std::vector<int>> best;
    std::vector<int> scal(static_cast<std::size_t>(n), 1);
    for (;;) {
      for (int fr = 0; fr < F.degree(); ++fr)
        for (const auto& p : perms) {
          std::vector<std::vector<int>> img;
          for (const auto& w : space) {
            std::vector<int> x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
              x[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = F.frobenius(F.mul(scal[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]), fr);
            img.push_back(x);
          }
          std::sort(img.begin(), img.end());
          if (best.empty() || img < best) best = img;
        }
      int i = 0;
      while (i < n && ++scal[static_cast<std::size_t>(i)] == q) scal[static_cast<std::size_t>(i++)] = 1;
      if (i == n) break;
    }
    reps.insert(best);
  }
  return reps.size();
}

DownwardClosedSet random_countset(std::mt19937_64& rng, int k, int count, int bound) {
  std::uniform_int_distribution<int> entry(0, bound);
  std::uniform_int_distribution<int> how_many(0, count);
  std::vector<CountVector> obs;
  const int c = how_many(rng);
  for (int i = 0; i < c; ++i) {
    CountVector o(static_cast<std::size_t>(k));
    for (auto& x : o) x = entry(rng);
    obs.push_back(o);
  }
  return DownwardClosedSet(k, obs);
}

}  // namespace oracle
