#include "widecount/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "widecount/actions.hpp"
#include "widecount/errors.hpp"
#include "widecount/functors.hpp"
#include "widecount/lattice.hpp"

namespace widecount {

namespace {

Integer binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer power(long base, long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

}  // namespace

// Planes ---------------------------------------------------------------------

ComponentCount planes_orbit_count(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const auto c = precomp_count(planes_presentation(), n);
  return {c.maximal_classes, c.orbits};
}

ComponentCount planes_brute(int n) {
  if (n < 0 || n > 20) throw TooLarge("planes_brute needs 0 <= n <= 20");
  std::vector<unsigned> triples;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) triples.push_back((1u << a) | (1u << b) | (1u << c));
  auto covers = [&](unsigned mask) {
    return std::all_of(triples.begin(), triples.end(), [&](unsigned t) { return (t & mask) != 0; });
  };
  ComponentCount out{0, 0};
  std::set<int> sizes;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!covers(mask)) continue;
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i)
      if ((mask >> i & 1u) && covers(mask & ~(1u << i))) minimal = false;
    if (!minimal) continue;
    ++out.components;
    sizes.insert(__builtin_popcount(mask));
  }
  // Sym(n)-orbits on subsets are determined by size.
  out.orbits = static_cast<unsigned long>(sizes.size());
  return out;
}

// Points and Galois ----------------------------------------------------------

ComponentCount points_orbit_count(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("points needs d >= 1, n >= 0");
  return {power(d, n), binomial(n + d - 1, d - 1)};
}

Integer points_brute(int d, int n) {
  return elementary_brute(ElementaryModelFunctor(d, PermGroup::trivial(d), DownwardClosedSet::full(d)), n);
}

Integer galois_orbit_count(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  return n / 2 + 1;
}

Integer galois_brute(int n) {
  if (n < 0 || n > 20) throw TooLarge("galois_brute needs 0 <= n <= 20");
  const std::size_t size = std::size_t{1} << n;
  const unsigned full = static_cast<unsigned>(size - 1);
  DisjointSets dsu(size);
  for (unsigned mask = 0; mask < size; ++mask) {
    dsu.unite(mask, mask ^ full);
    if (n >= 2) {
      const unsigned swapped = (mask & ~3u) | ((mask & 1u) << 1) | ((mask >> 1) & 1u);
      const unsigned rotated = ((mask << 1) | (mask >> (n - 1))) & full;
      dsu.unite(mask, swapped);
      dsu.unite(mask, rotated);
    }
  }
  return static_cast<unsigned long>(dsu.count());
}

// Cube -----------------------------------------------------------------------

Integer cube_orbit_count(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("cube needs d >= 1, n >= 0");
  Integer sum = 0;
  for (int e = 0; e < d; ++e) {
    const int f = std::gcd(d, e);
    const int r = d / f;
    if (n % r == 0) sum += binomial(n / r + f - 1, f - 1);
  }
  if (sum % d != 0) throw std::logic_error("cube formula not integral");
  return sum / d;
}

Integer cube_brute(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("cube needs d >= 1, n >= 0");
  std::set<CountVector> seen;
  for_each_composition(d, n, [&](const CountVector& c) {
    CountVector best = c, r = c;
    for (int s = 1; s < d; ++s) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      best = std::min(best, r);
    }
    seen.insert(best);
  });
  return static_cast<unsigned long>(seen.size());
}

Integer cube_via_groupoid(int d, int n) { return mf_count_via_groupoid(roots_of_unity_presentation(d), n); }

// Fixed rank -----------------------------------------------------------------

namespace {

using Wide = __int128;

/// Fraction-free elimination on the leading `size` x `size` block.
int leading_rank(const std::vector<std::int64_t>& a, int n, int size) {
  std::vector<Wide> m(static_cast<std::size_t>(size * size));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m[static_cast<std::size_t>(i * size + j)] = a[static_cast<std::size_t>(i * n + j)];
  auto at = [&](int i, int j) -> Wide& { return m[static_cast<std::size_t>(i * size + j)]; };
  Wide prev = 1;
  int rank = 0;
  std::vector<bool> used_col(static_cast<std::size_t>(size), false);
  for (int col = 0; col < size && rank < size; ++col) {
    int piv = -1;
    for (int r = rank; r < size; ++r)
      if (at(r, col) != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < size; ++j) std::swap(at(piv, j), at(rank, j));
    for (int r = rank + 1; r < size; ++r) {
      for (int j = col + 1; j < size; ++j) at(r, j) = (at(rank, col) * at(r, j) - at(r, col) * at(rank, j)) / prev;
      at(r, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

}  // namespace

Integer fixed_rank_orbit_count(const std::vector<Rational>& entries_in, int k, int n, MatrixShape shape) {
  if (n < 0 || k < 0) throw std::invalid_argument("negative size or rank");
  std::vector<Rational> entries(entries_in);
  for (auto& e : entries) e.canonicalize();
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  if (entries.empty()) return 0;
  // Clear denominators; rank is unchanged.
  Integer l = 1;
  for (const auto& e : entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  std::vector<std::int64_t> values;
  double emax = 1;
  for (const auto& e : entries) {
    Integer v = e.get_num() * (l / e.get_den());
    if (!v.fits_slong_p()) throw TooLarge("matrix entry too large");
    values.push_back(v.get_si());
    emax = std::max(emax, std::fabs(static_cast<double>(v.get_si())));
  }
  // Hadamard bound keeps every Bareiss minor inside 128 bits.
  if (n > 0 && 0.5 * n * std::log2(n * emax * emax) > 120) throw TooLarge("entries too large for exact 128-bit elimination");
  const long cells = shape == MatrixShape::Symmetric ? static_cast<long>(n) * (n + 1) / 2 : static_cast<long>(n) * n;
  if (cells * std::log10(static_cast<double>(entries.size())) > 8 + 1e-9) throw TooLarge("more than 10^8 matrices");
  if (k > n) return 0;

  std::vector<int> idx(static_cast<std::size_t>(n * n), 0);
  std::vector<std::int64_t> a(static_cast<std::size_t>(n * n), 0);
  std::set<std::vector<int>> orbits;
  std::vector<Permutation> perms;
  {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    do perms.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
  }
  auto canonical = [&]() {
    std::vector<int> best, img(idx.size());
    for (const auto& p : perms) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) img[static_cast<std::size_t>(p(i) * n + p(j))] = idx[static_cast<std::size_t>(i * n + j)];
      if (best.empty() || img < best) best = img;
    }
    return best;
  };
  // Cells added when the leading block grows from i to i + 1.
  std::vector<std::vector<std::pair<int, int>>> layer(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      layer[static_cast<std::size_t>(i)].push_back({j, i});
      if (shape == MatrixShape::General && j < i) layer[static_cast<std::size_t>(i)].push_back({i, j});
    }
  const int S = static_cast<int>(values.size());
  auto set_cell = [&](int r, int c, int v) {
    idx[static_cast<std::size_t>(r * n + c)] = v;
    a[static_cast<std::size_t>(r * n + c)] = values[static_cast<std::size_t>(v)];
    if (shape == MatrixShape::Symmetric) {
      idx[static_cast<std::size_t>(c * n + r)] = v;
      a[static_cast<std::size_t>(c * n + r)] = values[static_cast<std::size_t>(v)];
    }
  };
  std::function<void(int, std::size_t)> grow = [&](int i, std::size_t cell) {
    if (i == n) {
      if (leading_rank(a, n, n) == k) orbits.insert(canonical());
      return;
    }
    const auto& cells_i = layer[static_cast<std::size_t>(i)];
    if (cell == cells_i.size()) {
      if (leading_rank(a, n, i + 1) <= k) grow(i + 1, 0);
      return;
    }
    for (int v = 0; v < S; ++v) {
      set_cell(cells_i[cell].first, cells_i[cell].second, v);
      grow(i, cell + 1);
    }
  };
  grow(0, 0);
  return static_cast<unsigned long>(orbits.size());
}

Integer symmetric01_formula(int k, int n) {
  switch (k) {
    case 0: return 1;
    case 1: return n;
    case 2: return 2 * (n / 2) * ((n + 1) / 2) + binomial(n, 2);
    default: return -1;
  }
}

// Trees ----------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> pruefer_decode(const std::vector<int>& seq, int n) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++degree[static_cast<std::size_t>(x)];
  std::set<int> leaves;
  for (int i = 0; i < n; ++i)
    if (degree[static_cast<std::size_t>(i)] == 1) leaves.insert(i);
  auto link = [&](int u, int v) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  };
  for (int x : seq) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    link(leaf, x);
    if (--degree[static_cast<std::size_t>(x)] == 1) leaves.insert(x);
  }
  if (n >= 2) link(*leaves.begin(), *std::next(leaves.begin()));
  return adj;
}

std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[static_cast<std::size_t>(v)])
    if (w != parent) kids.push_back(rooted_code(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& c : kids) s += c;
  return s + ")";
}

/// Rooted at the center; the smaller code when there are two centers.
std::string tree_code(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return "";
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int i = 0; i < n; ++i) {
    degree[static_cast<std::size_t>(i)] = static_cast<int>(adj[static_cast<std::size_t>(i)].size());
    if (degree[static_cast<std::size_t>(i)] <= 1) layer.push_back(i);
  }
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= static_cast<int>(layer.size());
    for (int v : layer)
      for (int w : adj[static_cast<std::size_t>(v)])
        if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    auto s = rooted_code(adj, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

}  // namespace

TreeCount tree_orbit_count(int n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (n > 12) throw TooLarge("tree orbits are enumerated for n <= 12");
  if (n <= 2) return {1, 1};
  std::set<std::string> codes;
  const int len = n - 2;
  TreeCount out;
  out.labeled = power(n, n - 2);
  if (n <= 8) {
    std::vector<int> seq(static_cast<std::size_t>(len), 0);
    Integer decoded = 0;
    for (;;) {
      codes.insert(tree_code(pruefer_decode(seq, n)));
      ++decoded;
      int i = 0;
      while (i < len && ++seq[static_cast<std::size_t>(i)] == n) seq[static_cast<std::size_t>(i++)] = 0;
      if (i == len) break;
    }
    if (decoded != out.labeled) throw std::logic_error("Pruefer enumeration count mismatch");
  } else {
    // Every tree has a labeling with non-increasing degrees, whose sequence has
    // non-increasing label multiplicities.
    std::vector<int> counts;
    std::function<void(int, int)> parts = [&](int left, int cap) {
      if (left == 0) {
        std::vector<int> seq;
        for (std::size_t label = 0; label < counts.size(); ++label)
          seq.insert(seq.end(), static_cast<std::size_t>(counts[label]), static_cast<int>(label));
        do codes.insert(tree_code(pruefer_decode(seq, n)));
        while (std::next_permutation(seq.begin(), seq.end()));
        return;
      }
      if (static_cast<int>(counts.size()) == n) return;
      for (int c = std::min(left, cap); c >= 1; --c) {
        counts.push_back(c);
        parts(left - c, c);
        counts.pop_back();
      }
    };
    parts(len, len);
  }
  out.orbits = static_cast<unsigned long>(codes.size());
  return out;
}

Sequence tree_orbit_sequence(int n_max) {
  Sequence seq;
  for (int n = 0; n <= n_max; ++n) seq[n] = tree_orbit_count(n).orbits;
  return seq;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"planes", "points", "galois", "cube", "ranks", "trees"};
  return names;
}

}  // namespace widecount
