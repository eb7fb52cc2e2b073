#include <algorithm>
#include <memory>

#include "functors_internal.hpp"
#include "widecount/functors.hpp"

namespace widecount {

namespace {

struct Tagged {
  int b;
  Pair pair;
};

/// All pairs of the disjoint union at one size, with class ids per part.
struct UnionLevel {
  std::vector<Tagged> items;
  std::vector<std::unique_ptr<detail::PairIndex>> index;  ///< per part
  std::vector<std::size_t> offset;                        ///< first item of each part
  std::vector<std::size_t> class_id;                      ///< global class of each item
  std::vector<std::size_t> class_rep;                     ///< first item of each class

  std::size_t find(int b, const Pair& p) const {
    const auto i = index[static_cast<std::size_t>(b)]->find(p);
    return i == detail::PairIndex::npos ? i : offset[static_cast<std::size_t>(b)] + i;
  }
};

UnionLevel build_level(const PreComponentPresentation& pc, int n) {
  UnionLevel lv;
  for (std::size_t b = 0; b < pc.parts.size(); ++b) {
    const auto pairs = enumerate_pairs(pc.parts[b], n);
    lv.offset.push_back(lv.items.size());
    lv.index.push_back(std::make_unique<detail::PairIndex>(pairs));
    for (const auto& p : pairs) lv.items.push_back({static_cast<int>(b), p});
  }
  lv.class_id.assign(lv.items.size(), detail::PairIndex::npos);
  for (std::size_t b = 0; b < pc.parts.size(); ++b) {
    for (const auto& cls : mf_classes(pc.parts[b], n)) {
      const std::size_t id = lv.class_rep.size();
      lv.class_rep.push_back(lv.find(static_cast<int>(b), cls.front()));
      for (const auto& p : cls) lv.class_id[lv.find(static_cast<int>(b), p)] = id;
    }
  }
  return lv;
}

}  // namespace

PreComponentCount precomp_count(const PreComponentPresentation& pc, int n) {
  const auto lv = build_level(pc, n);
  const std::size_t C = lv.class_rep.size();
  auto leq = [&](std::size_t x, std::size_t y) {
    const auto& a = lv.items[lv.class_rep[x]];
    const auto& c = lv.items[lv.class_rep[y]];
    return pc.preceq(n, a.b, a.pair, c.b, c.pair);
  };
  std::vector<std::size_t> maximal;
  std::vector<std::size_t> slot(C, detail::PairIndex::npos);
  for (std::size_t x = 0; x < C; ++x) {
    bool top = true;
    for (std::size_t y = 0; y < C && top; ++y)
      if (y != x && leq(x, y) && !leq(y, x)) top = false;
    if (top) {
      slot[x] = maximal.size();
      maximal.push_back(x);
    }
  }

  DisjointSets dsu(maximal.size());
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::parse("(1 2)", n));
    std::vector<int> shift(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % n;
    gens.emplace_back(shift);
  }
  for (std::size_t m = 0; m < maximal.size(); ++m) {
    const auto& item = lv.items[lv.class_rep[maximal[m]]];
    for (const auto& g : gens) {
      const auto image = lv.find(item.b, permute_pair(item.pair, g));
      if (image == detail::PairIndex::npos) throw std::logic_error("part is not Sym(n)-stable");
      const auto target = slot[lv.class_id[image]];
      if (target == detail::PairIndex::npos) throw std::logic_error("quasi-order is not Sym(n)-invariant");
      dsu.unite(m, target);
    }
  }
  return {Integer(static_cast<unsigned long>(dsu.count())), Integer(static_cast<unsigned long>(maximal.size()))};
}

AxiomReport verify_compatibility(const PreComponentPresentation& pc, int n_max) {
  AxiomReport report;
  for (const auto& part : pc.parts) {
    auto sub = verify_axioms(part, n_max);
    report.checks += sub.checks;
    if (!sub.ok) {
      sub.violation->axiom = part.name + ": " + sub.violation->axiom;
      sub.checks = report.checks;
      return sub;
    }
  }
  auto fail = [&](const std::string& what, int n, const std::string& detail) {
    report.ok = false;
    report.violation = AxiomViolation{what, n, detail};
    return report;
  };
  auto str = [&](const Tagged& t) {
    return "F" + std::to_string(t.b) + ":" + detail::pair_to_string(t.pair, pc.parts[static_cast<std::size_t>(t.b)].k);
  };

  std::vector<UnionLevel> levels;
  std::vector<std::vector<std::vector<bool>>> rel;
  for (int n = 0; n <= n_max; ++n) {
    levels.push_back(build_level(pc, n));
    const auto& lv = levels.back();
    const std::size_t N = lv.items.size();
    std::vector<std::vector<bool>> r(N, std::vector<bool>(N));
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y) {
        ++report.checks;
        r[x][y] = pc.preceq(n, lv.items[x].b, lv.items[x].pair, lv.items[y].b, lv.items[y].pair);
      }
    for (std::size_t x = 0; x < N; ++x) {
      if (!r[x][x]) return fail("reflexivity", n, str(lv.items[x]) + " is not below itself");
      for (std::size_t y = 0; y < N; ++y) {
        if (!r[x][y]) continue;
        const auto& a = lv.items[x];
        const auto& c = lv.items[y];
        if (a.b > c.b) return fail("Compatibility (1)", n, str(a) + " <= " + str(c));
        for (std::size_t z = 0; z < N; ++z)
          if (r[y][z] && !r[x][z])
            return fail("transitivity", n, str(a) + " <= " + str(c) + " <= " + str(lv.items[z]));
      }
      for (std::size_t y = 0; y < N; ++y) {
        if (lv.items[x].b != lv.items[y].b) continue;
        const bool same = lv.class_id[x] == lv.class_id[y];
        if (r[x][y] != same)
          return fail("Compatibility (2)", n,
                      str(lv.items[x]) + (same ? " ~ " : " !~ ") + str(lv.items[y]) + " disagrees with the quasi-order");
      }
    }
    rel.push_back(std::move(r));
  }

  for (int n = 0; n <= n_max; ++n) {
    const auto& high = levels[static_cast<std::size_t>(n)];
    const auto& r = rel[static_cast<std::size_t>(n)];
    for (int m = 0; m <= n; ++m) {
      const auto& low = levels[static_cast<std::size_t>(m)];
      const auto& r_low = rel[static_cast<std::size_t>(m)];
      std::string witness;
      detail::for_each_injection(m, n, [&](const std::vector<int>& pi) {
        if (!witness.empty()) return;
        std::vector<std::size_t> image(high.items.size(), detail::PairIndex::npos);
        for (std::size_t x = 0; x < high.items.size(); ++x) {
          const auto& it = high.items[x];
          const auto res = restrict_pair(it.pair, pi, pc.parts[static_cast<std::size_t>(it.b)].k);
          if (res) image[x] = low.find(it.b, *res);
        }
        for (std::size_t x = 0; x < image.size() && witness.empty(); ++x) {
          if (image[x] == detail::PairIndex::npos) continue;
          for (std::size_t y = 0; y < image.size(); ++y) {
            ++report.checks;
            if (image[y] == detail::PairIndex::npos || !r[x][y]) continue;
            if (!r_low[image[x]][image[y]]) {
              witness = str(high.items[x]) + " <= " + str(high.items[y]) + " but not after restriction to size " +
                        std::to_string(m);
              break;
            }
          }
        }
      });
      if (!witness.empty()) return fail("Compatibility (3)", n, witness);
    }
  }
  return report;
}

FittedQuasipolynomial precomp_quasipolynomial(const PreComponentPresentation& pc, int n_lo, int n_hi,
                                              std::size_t max_period, int max_degree) {
  Sequence seq;
  for (int n = n_lo; n <= n_hi; ++n) seq[n] = precomp_count(pc, n).orbits;
  return fit(seq, max_period, max_degree);
}

}  // namespace widecount
