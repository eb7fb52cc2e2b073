#include "widecount/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace widecount {

bool dominates(const CountVector& b, const CountVector& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

std::vector<CountVector> antichain(std::vector<CountVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<CountVector> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < v.size() && !redundant; ++j) redundant = j != i && dominates(v[i], v[j]);
    if (!redundant) out.push_back(v[i]);
  }
  return out;
}

}  // namespace

// DownwardClosedSet ----------------------------------------------------------

DownwardClosedSet::DownwardClosedSet(int k, std::vector<CountVector> obstructions) : k_(k) {
  if (k < 0) throw std::invalid_argument("negative dimension");
  for (const auto& o : obstructions) {
    if (static_cast<int>(o.size()) != k) throw std::invalid_argument("obstruction has wrong dimension");
    for (int x : o)
      if (x < 0) throw std::invalid_argument("obstruction has a negative entry");
  }
  obstructions_ = antichain(std::move(obstructions));
}

bool DownwardClosedSet::contains(const CountVector& beta) const {
  if (static_cast<int>(beta.size()) != k_) throw std::invalid_argument("membership: wrong dimension");
  for (const auto& o : obstructions_)
    if (dominates(beta, o)) return false;
  return true;
}

bool DownwardClosedSet::is_empty() const {
  return obstructions_.size() == 1 && std::all_of(obstructions_[0].begin(), obstructions_[0].end(), [](int x) { return x == 0; });
}

DownwardClosedSet DownwardClosedSet::with_obstructions(const std::vector<CountVector>& extra) const {
  std::vector<CountVector> all(obstructions_);
  all.insert(all.end(), extra.begin(), extra.end());
  return DownwardClosedSet(k_, std::move(all));
}

bool DownwardClosedSet::stable_under(const Permutation& g) const {
  if (g.degree() != k_) throw std::invalid_argument("stable_under: permutation degree differs");
  std::vector<CountVector> moved;
  for (const auto& o : obstructions_) moved.push_back(permute_positions(o, g));
  std::sort(moved.begin(), moved.end());
  return moved == obstructions_;
}

nlohmann::json DownwardClosedSet::to_json() const { return {{"k", k_}, {"obstructions", obstructions_}}; }

DownwardClosedSet DownwardClosedSet::from_json(const nlohmann::json& j) {
  return DownwardClosedSet(j.at("k").get<int>(), j.at("obstructions").get<std::vector<CountVector>>());
}

// Stanley decomposition ------------------------------------------------------

bool StanleyPiece::contains(const CountVector& beta) const {
  std::vector<char> is_free(offset.size(), 0);
  for (int i : free) is_free[static_cast<std::size_t>(i)] = 1;
  for (std::size_t i = 0; i < offset.size(); ++i) {
    if (is_free[i] ? beta[i] < offset[i] : beta[i] != offset[i]) return false;
  }
  return true;
}

namespace {

void decompose(std::vector<char>& active, std::vector<int>& free, CountVector& offset,
               const std::vector<CountVector>& obs, std::vector<StanleyPiece>& out) {
  const std::size_t k = offset.size();
  for (const auto& o : obs) {
    bool zero = true;
    for (std::size_t i = 0; i < k && zero; ++i) zero = !active[i] || o[i] == 0;
    if (zero) return;
  }
  int j = -1;
  for (int i = static_cast<int>(k) - 1; i >= 0 && j < 0; --i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    for (const auto& o : obs)
      if (o[static_cast<std::size_t>(i)] > 0) {
        j = i;
        break;
      }
  }
  if (j < 0) {
    StanleyPiece p{offset, free};
    for (std::size_t i = 0; i < k; ++i)
      if (active[i]) p.free.push_back(static_cast<int>(i));
    std::sort(p.free.begin(), p.free.end());
    out.push_back(std::move(p));
    return;
  }
  const auto ju = static_cast<std::size_t>(j);
  int top = 0;
  for (const auto& o : obs) top = std::max(top, o[ju]);
  active[ju] = 0;
  for (int v = 0; v < top; ++v) {
    std::vector<CountVector> sub;
    for (const auto& o : obs)
      if (o[ju] <= v) sub.push_back(o);
    offset[ju] = v;
    decompose(active, free, offset, sub, out);
  }
  offset[ju] = top;
  free.push_back(j);
  decompose(active, free, offset, obs, out);
  free.pop_back();
  offset[ju] = 0;
  active[ju] = 1;
}

}  // namespace

std::vector<StanleyPiece> stanley_decompose(const DownwardClosedSet& m) {
  const auto k = static_cast<std::size_t>(m.dim());
  std::vector<char> active(k, 1);
  std::vector<int> free;
  CountVector offset(k, 0);
  std::vector<StanleyPiece> out;
  decompose(active, free, offset, m.obstructions(), out);
  return out;
}

// Contraction and level counting ---------------------------------------------

WeightedLevelProblem cycle_contract(const DownwardClosedSet& m, const Permutation& g) {
  if (g.degree() != m.dim()) throw std::invalid_argument("cycle_contract: permutation degree differs");
  const auto cycles = g.cycles();
  WeightedLevelProblem p;
  for (const auto& c : cycles) p.weights.push_back(static_cast<int>(c.size()));
  std::vector<CountVector> obs;
  for (const auto& o : m.obstructions()) {
    CountVector r;
    for (const auto& c : cycles) {
      int mx = 0;
      for (int i : c) mx = std::max(mx, o[static_cast<std::size_t>(i)]);
      r.push_back(mx);
    }
    obs.push_back(std::move(r));
  }
  p.feasible = DownwardClosedSet(static_cast<int>(cycles.size()), std::move(obs));
  return p;
}

namespace {
std::mutex denumerant_mutex;
std::map<std::vector<int>, std::vector<Integer>> denumerant_cache;
}  // namespace

Integer denumerant(std::vector<int> weights, std::int64_t n) {
  if (n < 0) return 0;
  for (int w : weights)
    if (w <= 0) throw std::invalid_argument("denumerant: weights must be positive");
  std::sort(weights.begin(), weights.end());
  std::lock_guard<std::mutex> lock(denumerant_mutex);
  auto& table = denumerant_cache[weights];
  if (static_cast<std::int64_t>(table.size()) <= n) {
    // Recompute to the new size; the coin-change DP is not incremental across weights.
    const auto size = static_cast<std::size_t>(std::max<std::int64_t>(n + 1, 2 * static_cast<std::int64_t>(table.size())));
    std::vector<Integer> t(size, Integer(0));
    t[0] = 1;
    for (int w : weights)
      for (std::size_t s = static_cast<std::size_t>(w); s < size; ++s) t[s] += t[s - static_cast<std::size_t>(w)];
    table = std::move(t);
  }
  return table[static_cast<std::size_t>(n)];
}

LevelCounter::LevelCounter(WeightedLevelProblem problem) : problem_(std::move(problem)) {
  if (static_cast<int>(problem_.weights.size()) != problem_.feasible.dim())
    throw std::invalid_argument("weights and feasible set dimensions differ");
  pieces_ = stanley_decompose(problem_.feasible);
}

Integer LevelCounter::count(std::int64_t n) const {
  Integer total = 0;
  for (const auto& p : pieces_) {
    std::int64_t base = 0;
    for (std::size_t c = 0; c < p.offset.size(); ++c) base += static_cast<std::int64_t>(problem_.weights[c]) * p.offset[c];
    if (base > n) continue;
    std::vector<int> w;
    for (int c : p.free) w.push_back(problem_.weights[static_cast<std::size_t>(c)]);
    total += denumerant(std::move(w), n - base);
  }
  return total;
}

Integer count_level(const WeightedLevelProblem& problem, std::int64_t n) { return LevelCounter(problem).count(n); }

Integer count_level_difference(const WeightedLevelProblem& n_set, const DownwardClosedSet& removed, std::int64_t n) {
  WeightedLevelProblem both{n_set.weights, n_set.feasible.with_obstructions(removed.obstructions())};
  return count_level(n_set, n) - count_level(both, n);
}

FittedQuasipolynomial level_quasipolynomial(const DownwardClosedSet& m, const Permutation& g) {
  LevelCounter counter(cycle_contract(m, g));
  std::size_t period = 1;
  int degree = 0;
  std::int64_t onset_bound = 0;
  for (const auto& p : counter.pieces()) {
    std::int64_t base = 0;
    for (std::size_t c = 0; c < p.offset.size(); ++c)
      base += static_cast<std::int64_t>(counter.problem().weights[c]) * p.offset[c];
    onset_bound = std::max(onset_bound, base);
    for (int c : p.free) period = std::lcm(period, static_cast<std::size_t>(counter.problem().weights[static_cast<std::size_t>(c)]));
    degree = std::max(degree, static_cast<int>(p.free.size()) - 1);
  }
  const std::int64_t hi = onset_bound + 2 * static_cast<std::int64_t>(period) * (degree + 3);
  Sequence seq;
  for (std::int64_t n = 0; n <= hi; ++n) seq[n] = counter.count(n);
  FitWitness w;
  auto fitted = try_fit(seq, period, degree, &w);
  if (!fitted) throw std::logic_error("level_quasipolynomial: internal fit failure: " + w.detail);
  return *fitted;
}

void for_each_composition(int k, int n, const std::function<void(const CountVector&)>& f) {
  if (k == 0) {
    if (n == 0) f({});
    return;
  }
  CountVector beta(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      beta[static_cast<std::size_t>(i)] = left;
      f(beta);
      return;
    }
    for (int v = left; v >= 0; --v) {
      beta[static_cast<std::size_t>(i)] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, n);
}

}  // namespace widecount
