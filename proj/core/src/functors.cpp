#include "widecount/functors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "functors_internal.hpp"

namespace widecount {

// Elementary model functors --------------------------------------------------

ElementaryModelFunctor::ElementaryModelFunctor(int k_, PermGroup group_, DownwardClosedSet countset_)
    : k(k_), group(std::move(group_)), countset(std::move(countset_)) {
  if (group.degree() != k) throw std::invalid_argument("letter group degree differs from alphabet size");
  if (countset.dim() != k) throw std::invalid_argument("count set dimension differs from alphabet size");
  for (const auto& g : group.generators())
    if (!countset.stable_under(g))
      throw std::invalid_argument("count set is not stable under generator " + g.to_string());
}

namespace {

/// Contracted problems shared by conjugate-looking elements are counted once.
std::vector<std::pair<WeightedLevelProblem, std::size_t>> contracted_problems(const ElementaryModelFunctor& emf) {
  std::map<std::pair<std::vector<int>, std::vector<CountVector>>, std::size_t> mult;
  std::map<std::pair<std::vector<int>, std::vector<CountVector>>, WeightedLevelProblem> rep;
  for (const auto& g : emf.group.elements()) {
    auto p = cycle_contract(emf.countset, g);
    auto key = std::make_pair(p.weights, p.feasible.obstructions());
    ++mult[key];
    rep.emplace(key, std::move(p));
  }
  std::vector<std::pair<WeightedLevelProblem, std::size_t>> out;
  for (auto& [key, m] : mult) out.emplace_back(rep.at(key), m);
  return out;
}

}  // namespace

Integer elementary_count(const ElementaryModelFunctor& emf, std::int64_t n) {
  Integer total = 0;
  for (const auto& [p, m] : contracted_problems(emf)) total += count_level(p, n) * Integer(static_cast<unsigned long>(m));
  const Integer order(static_cast<unsigned long>(emf.group.order()));
  if (total % order != 0) throw std::logic_error("elementary_count: Burnside sum not divisible by |G|");
  return total / order;
}

FittedQuasipolynomial elementary_quasipolynomial(const ElementaryModelFunctor& emf) {
  Quasipolynomial qp;
  std::int64_t onset = 0;
  for (const auto& g : emf.group.elements()) {
    auto f = level_quasipolynomial(emf.countset, g);
    qp = qp + f.qp;
    onset = std::max(onset, f.onset);
  }
  qp = qp.scaled(Rational(1, static_cast<unsigned long>(emf.group.order())));
  const std::int64_t hi = onset + 2 * static_cast<std::int64_t>(qp.period()) * (std::max(qp.degree(), 0) + 3);
  for (std::int64_t n = onset; n <= hi; ++n)
    if (qp.evaluate(n) != Rational(elementary_count(emf, n)))
      throw std::logic_error("elementary_quasipolynomial: disagreement with elementary_count at n=" + std::to_string(n));
  return {qp, onset, onset, hi};
}

Integer elementary_brute(const ElementaryModelFunctor& emf, int n) {
  double words = std::pow(static_cast<double>(emf.k), n);
  if (words > 1e7) throw TooLarge("elementary_brute: k^n exceeds 10^7");
  if (emf.k == 0) return n == 0 && emf.countset.contains({}) ? 1 : 0;
  std::set<std::vector<int>> seen;
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  CountVector beta(static_cast<std::size_t>(emf.k), 0);
  for (;;) {
    std::fill(beta.begin(), beta.end(), 0);
    for (int x : w) ++beta[static_cast<std::size_t>(x)];
    if (emf.countset.contains(beta)) seen.insert(canonical_form_unordered(w, &emf.group));
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == emf.k - 1) w[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return Integer(static_cast<unsigned long>(seen.size()));
}

// Pairs ----------------------------------------------------------------------

std::vector<int> Pair::sigma(int k, int s0) const {
  std::vector<int> s(static_cast<std::size_t>(s0), -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] >= k) s[static_cast<std::size_t>(cells[i] - k)] = static_cast<int>(i);
  return s;
}

CountVector Pair::count_vector(int k) const {
  CountVector c(static_cast<std::size_t>(k), 0);
  for (int x : cells)
    if (x < k) ++c[static_cast<std::size_t>(x)];
  return c;
}

std::optional<Pair> restrict_pair(const Pair& p, const std::vector<int>& pi, int k) {
  Pair out;
  out.cells.reserve(pi.size());
  int markers = 0;
  for (int i : pi) {
    const int c = p.cells[static_cast<std::size_t>(i)];
    markers += c >= k;
    out.cells.push_back(c);
  }
  int total = 0;
  for (int c : p.cells) total += c >= k;
  if (markers != total) return std::nullopt;
  return out;
}

Pair permute_pair(const Pair& p, const Permutation& perm) { return Pair{permute_positions(p.cells, perm)}; }

namespace detail {

void for_each_injection(int m, int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> img(static_cast<std::size_t>(m));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      f(img);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      img[static_cast<std::size_t>(i)] = v;
      rec(i + 1);
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  if (m <= n) rec(0);
}

std::string pair_to_string(const Pair& p, int k) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (i) os << ' ';
    if (p.cells[i] >= k)
      os << 's' << p.cells[i] - k + 1;
    else
      os << p.cells[i];
  }
  os << ']';
  return os.str();
}

PairIndex::PairIndex(const std::vector<Pair>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) index_.emplace(pairs[i].cells, i);
}

std::size_t PairIndex::find(const Pair& p) const {
  auto it = index_.find(p.cells);
  return it == index_.end() ? npos : it->second;
}

std::size_t VectorHash::operator()(const std::vector<int>& v) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ULL;
  return h;
}

}  // namespace detail

std::vector<Pair> enumerate_pairs(const ModelFunctorPresentation& pres, int n, std::size_t budget) {
  std::vector<Pair> out;
  if (n < pres.s0) return out;
  double est = 1;
  for (int i = 0; i < pres.s0; ++i) est *= n - i;
  est *= std::pow(static_cast<double>(std::max(pres.k, 1)), n - pres.s0);
  if (est > static_cast<double>(budget)) throw TooLarge("F([" + std::to_string(n) + "]) exceeds the enumeration budget");
  const int k = pres.k;
  detail::for_each_injection(pres.s0, n, [&](const std::vector<int>& sigma) {
    Pair p;
    p.cells.assign(static_cast<std::size_t>(n), -1);
    for (int j = 0; j < pres.s0; ++j) p.cells[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = k + j;
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (p.cells[static_cast<std::size_t>(i)] < 0) free.push_back(i);
    CountVector beta(static_cast<std::size_t>(k), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
      if (idx == free.size()) {
        out.push_back(p);
        return;
      }
      for (int l = 0; l < k; ++l) {
        ++beta[static_cast<std::size_t>(l)];
        if (pres.countset.contains(beta)) {
          p.cells[static_cast<std::size_t>(free[idx])] = l;
          rec(idx + 1);
        }
        --beta[static_cast<std::size_t>(l)];
      }
    };
    if (pres.countset.contains(beta)) rec(0);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Pair representative_pair(const CountVector& beta, int k, int s0) {
  Pair p;
  for (int j = 0; j < s0; ++j) p.cells.push_back(k + j);
  for (int l = 0; l < k; ++l)
    for (int c = 0; c < beta[static_cast<std::size_t>(l)]; ++c) p.cells.push_back(l);
  return p;
}

std::vector<Pair> class_of(const ModelFunctorPresentation& pres, int n, const Pair& p) {
  std::vector<Pair> out;
  if (pres.class_of) {
    out = pres.class_of(n, p);
  } else {
    for (const auto& q : enumerate_pairs(pres, n))
      if (pres.eq(n, p, q)) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!std::binary_search(out.begin(), out.end(), p))
    throw std::logic_error("class enumeration of " + pres.name + " omits the pair itself");
  return out;
}

std::vector<std::vector<Pair>> mf_classes(const ModelFunctorPresentation& pres, int n, std::size_t budget) {
  auto pairs = enumerate_pairs(pres, n, budget);
  std::vector<std::vector<Pair>> classes;
  if (pres.class_of) {
    detail::PairIndex index(pairs);
    DisjointSets dsu(pairs.size());
    std::vector<char> done(pairs.size(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (done[i]) continue;
      for (const auto& q : class_of(pres, n, pairs[i])) {
        const std::size_t j = index.find(q);
        if (j == detail::PairIndex::npos)
          throw std::logic_error("class enumeration of " + pres.name + " leaves F([n])");
        dsu.unite(i, j);
        done[j] = 1;
      }
    }
    for (const auto& block : dsu.blocks()) {
      std::vector<Pair> c;
      for (std::size_t i : block) c.push_back(pairs[i]);
      classes.push_back(std::move(c));
    }
    return classes;
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < reps.size() && !placed; ++c)
      if (pres.eq(n, pairs[reps[c]], pairs[i])) {
        classes[c].push_back(pairs[i]);
        placed = true;
      }
    if (!placed) {
      reps.push_back(i);
      classes.push_back({pairs[i]});
    }
  }
  return classes;
}

Integer mf_orbit_count_direct(const ModelFunctorPresentation& pres, int n) {
  if (n > 8) throw TooLarge("mf_orbit_count_direct is limited to n <= 8");
  auto pairs = enumerate_pairs(pres, n);
  if (pairs.empty()) return 0;
  auto classes = mf_classes(pres, n);
  detail::PairIndex index(pairs);
  DisjointSets dsu(pairs.size());
  for (const auto& c : classes)
    for (std::size_t i = 1; i < c.size(); ++i) dsu.unite(index.find(c[0]), index.find(c[i]));
  std::vector<Permutation> gens = PermGroup::symmetric(n).generators();
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (const auto& g : gens) {
      const std::size_t j = index.find(permute_pair(pairs[i], g));
      if (j == detail::PairIndex::npos) throw std::logic_error("F([n]) is not closed under Sym(n)");
      dsu.unite(i, j);
    }
  return Integer(static_cast<unsigned long>(dsu.count()));
}

Integer mf_orbit_count_by_count_vectors(const ModelFunctorPresentation& pres, int n) {
  if (n < pres.s0) return 0;
  const int level = n - pres.s0;
  std::vector<CountVector> betas;
  for_each_composition(pres.k, level, [&](const CountVector& b) {
    if (pres.countset.contains(b)) betas.push_back(b);
  });
  std::sort(betas.begin(), betas.end());
  DisjointSets dsu(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (const auto& q : class_of(pres, n, representative_pair(betas[i], pres.k, pres.s0))) {
      auto it = std::lower_bound(betas.begin(), betas.end(), q.count_vector(pres.k));
      if (it == betas.end() || *it != q.count_vector(pres.k)) throw std::logic_error("class member outside M");
      dsu.unite(i, static_cast<std::size_t>(it - betas.begin()));
    }
  return Integer(static_cast<unsigned long>(dsu.count()));
}

// Axiom verification ---------------------------------------------------------

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json j{{"ok", ok}, {"checks", checks}};
  if (violation) j["violation"] = {{"axiom", violation->axiom}, {"n", violation->n}, {"detail", violation->detail}};
  return j;
}

namespace {

struct Level {
  std::vector<Pair> pairs;
  std::unique_ptr<detail::PairIndex> index;
  std::vector<std::size_t> class_id;
  std::vector<std::vector<std::size_t>> classes;
};

}  // namespace

AxiomReport verify_axioms(const ModelFunctorPresentation& pres, int n_max) {
  AxiomReport report;
  const int k = pres.k;
  auto fail = [&](const std::string& axiom, int n, const std::string& detail) {
    report.ok = false;
    report.violation = AxiomViolation{axiom, n, detail};
    return report;
  };
  auto str = [&](const Pair& p) { return detail::pair_to_string(p, k); };
  std::vector<Level> levels;
  for (int n = 0; n <= n_max; ++n) {
    Level lv;
    lv.pairs = enumerate_pairs(pres, n);
    lv.index = std::make_unique<detail::PairIndex>(lv.pairs);
    const std::size_t N = lv.pairs.size();
    std::vector<std::vector<std::size_t>> related(N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        ++report.checks;
        if (pres.eq(n, lv.pairs[i], lv.pairs[j])) related[i].push_back(j);
      }
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::binary_search(related[i].begin(), related[i].end(), i))
        return fail("reflexivity", n, str(lv.pairs[i]) + " is not equivalent to itself");
      for (std::size_t j : related[i]) {
        if (!std::binary_search(related[j].begin(), related[j].end(), i))
          return fail("symmetry", n, str(lv.pairs[i]) + " ~ " + str(lv.pairs[j]) + " but not conversely");
        if (related[j] != related[i]) {
          for (std::size_t h : related[j])
            if (!std::binary_search(related[i].begin(), related[i].end(), h))
              return fail("transitivity", n,
                          str(lv.pairs[i]) + " ~ " + str(lv.pairs[j]) + " ~ " + str(lv.pairs[h]) + " but not " +
                              str(lv.pairs[i]) + " ~ " + str(lv.pairs[h]));
        }
      }
    }
    lv.class_id.assign(N, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < N; ++i) {
      if (lv.class_id[i] != static_cast<std::size_t>(-1)) continue;
      for (std::size_t j : related[i]) lv.class_id[j] = lv.classes.size();
      lv.classes.push_back(related[i]);
    }
    // Axiom (3): equality patterns agree off both sigma images.
    for (const auto& c : lv.classes)
      for (std::size_t a : c)
        for (std::size_t b : c) {
          if (b <= a) continue;
          const auto& pa = lv.pairs[a];
          const auto& pb = lv.pairs[b];
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
              if (pa.is_marker(i, k) || pa.is_marker(j, k) || pb.is_marker(i, k) || pb.is_marker(j, k)) continue;
              ++report.checks;
              const bool ea = pa.cells[static_cast<std::size_t>(i)] == pa.cells[static_cast<std::size_t>(j)];
              const bool eb = pb.cells[static_cast<std::size_t>(i)] == pb.cells[static_cast<std::size_t>(j)];
              if (ea != eb)
                return fail("Axiom (3)", n,
                            str(pa) + " ~ " + str(pb) + " but positions " + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + " have different equality patterns");
            }
        }
    levels.push_back(std::move(lv));
    const Level& top = levels.back();
    // Axioms (1) and (2): along every injection [m] -> [n] the restricted members of a class
    // form exactly one class.
    for (int m = 0; m <= n; ++m) {
      const Level& low = levels[static_cast<std::size_t>(m)];
      std::optional<AxiomReport> early;
      detail::for_each_injection(m, n, [&](const std::vector<int>& pi) {
        if (early) return;
        for (const auto& c : top.classes) {
          std::vector<std::size_t> images;
          std::size_t first_member = 0;
          for (std::size_t a : c) {
            auto r = restrict_pair(top.pairs[a], pi, k);
            if (!r) continue;
            const std::size_t idx = low.index->find(*r);
            if (idx == detail::PairIndex::npos) {
              early = fail("functoriality", n, "restriction of " + str(top.pairs[a]) + " leaves F([" + std::to_string(m) + "])");
              return;
            }
            if (images.empty()) first_member = a;
            images.push_back(idx);
            ++report.checks;
          }
          if (images.empty()) continue;
          std::ostringstream inj;
          for (std::size_t t = 0; t < pi.size(); ++t) inj << (t ? "," : "") << pi[t] + 1;
          const std::size_t cls = low.class_id[images[0]];
          for (std::size_t idx : images)
            if (low.class_id[idx] != cls) {
              early = fail("Axiom (1)", n,
                           "restricting along (" + inj.str() + ") sends the class of " + str(top.pairs[first_member]) +
                               " to " + str(low.pairs[images[0]]) + " and " + str(low.pairs[idx]) +
                               ", which are not equivalent");
              return;
            }
          std::sort(images.begin(), images.end());
          images.erase(std::unique(images.begin(), images.end()), images.end());
          if (images != low.classes[cls]) {
            std::size_t missing = low.classes[cls][0];
            for (std::size_t x : low.classes[cls])
              if (!std::binary_search(images.begin(), images.end(), x)) {
                missing = x;
                break;
              }
            early = fail("Axiom (2)", n,
                         str(low.pairs[missing]) + " is equivalent to the restriction of " + str(top.pairs[first_member]) +
                             " along (" + inj.str() + ") but is not the restriction of any equivalent pair");
            return;
          }
        }
      });
      if (early) return *early;
    }
  }
  return report;
}

}  // namespace widecount
