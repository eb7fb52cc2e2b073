#include <algorithm>
#include <set>

#include "widecount/functors.hpp"

namespace widecount {

namespace {

int marker_position(const Pair& p, int k, int j = 0) {
  for (int i = 0; i < p.size(); ++i)
    if (p.cells[static_cast<std::size_t>(i)] == k + j) return i;
  return -1;
}

/// Exponents of x_i / x_base: zero at the base, the letter elsewhere.
std::vector<int> ratios(const Pair& p, int d) {
  std::vector<int> r(p.cells);
  for (auto& x : r)
    if (x >= d) x = 0;
  return r;
}

bool roots_equivalent(int d, const Pair& a, const Pair& b) {
  if (a.size() != b.size()) return false;
  const int jb = marker_position(b, d);
  if (jb < 0 || marker_position(a, d) < 0) return false;
  const auto ra = ratios(a, d);
  const auto rb = ratios(b, d);
  const int shift = ra[static_cast<std::size_t>(jb)];
  for (std::size_t j = 0; j < ra.size(); ++j)
    if (rb[j] != ((ra[j] - shift) % d + d) % d) return false;
  return true;
}

std::set<int> marker_set(const Pair& p, int k) {
  std::set<int> s;
  for (int i = 0; i < p.size(); ++i)
    if (p.cells[static_cast<std::size_t>(i)] >= k) s.insert(i);
  return s;
}

}  // namespace

ModelFunctorPresentation roots_of_unity_presentation(int d) {
  if (d < 1) throw std::invalid_argument("roots-of-unity needs d >= 1");
  ModelFunctorPresentation p;
  p.name = "roots-of-unity(d=" + std::to_string(d) + ")";
  p.s0 = 1;
  p.k = d;
  p.countset = DownwardClosedSet::full(d);
  p.provenance = "builtin";
  p.eq = [d](int, const Pair& a, const Pair& b) { return roots_equivalent(d, a, b); };
  p.class_of = [d](int n, const Pair& a) {
    std::vector<Pair> out;
    const auto ra = ratios(a, d);
    for (int j0 = 0; j0 < n; ++j0) {
      Pair b;
      const int shift = ra[static_cast<std::size_t>(j0)];
      for (int j = 0; j < n; ++j) b.cells.push_back(j == j0 ? d : ((ra[static_cast<std::size_t>(j)] - shift) % d + d) % d);
      out.push_back(std::move(b));
    }
    return out;
  };
  return p;
}

ModelFunctorPresentation elementary_presentation(const ElementaryModelFunctor& emf) {
  ModelFunctorPresentation p;
  p.name = "elementary(k=" + std::to_string(emf.k) + ")";
  p.s0 = 0;
  p.k = emf.k;
  p.countset = emf.countset;
  p.provenance = "builtin";
  auto elements = std::make_shared<std::vector<Permutation>>(emf.group.elements());
  auto image = [](const Permutation& g, const Pair& a) {
    Pair b(a);
    for (auto& x : b.cells) x = g(x);
    return b;
  };
  p.eq = [elements, image](int, const Pair& a, const Pair& b) {
    for (const auto& g : *elements)
      if (image(g, a) == b) return true;
    return false;
  };
  p.class_of = [elements, image](int, const Pair& a) {
    std::vector<Pair> out;
    for (const auto& g : *elements) out.push_back(image(g, a));
    return out;
  };
  return p;
}

ModelFunctorPresentation broken_asymmetric_presentation(int d) {
  ModelFunctorPresentation p = roots_of_unity_presentation(d);
  p.name = "broken-asymmetric(d=" + std::to_string(d) + ")";
  p.provenance = "negative-control";
  p.class_of = nullptr;
  p.eq = [d](int, const Pair& a, const Pair& b) {
    return a == b || (roots_equivalent(d, a, b) && marker_position(a, d) < marker_position(b, d));
  };
  return p;
}

ModelFunctorPresentation broken_count_presentation(int k) {
  ModelFunctorPresentation p;
  p.name = "broken-count(k=" + std::to_string(k) + ")";
  p.s0 = 0;
  p.k = k;
  p.countset = DownwardClosedSet::full(k);
  p.provenance = "negative-control";
  p.eq = [k](int, const Pair& a, const Pair& b) { return a.count_vector(k) == b.count_vector(k); };
  return p;
}

namespace {

ModelFunctorPresentation subspace_part(int s0, bool unordered) {
  ModelFunctorPresentation p;
  p.name = "coordinate-subspaces(dim=" + std::to_string(s0) + ")";
  p.s0 = s0;
  p.k = 1;
  p.countset = DownwardClosedSet::full(1);
  p.provenance = "builtin";
  if (unordered) {
    p.eq = [](int, const Pair& a, const Pair& b) { return marker_set(a, 1) == marker_set(b, 1); };
    p.class_of = [s0](int, const Pair& a) {
      std::vector<int> pos;
      for (int j = 0; j < s0; ++j) pos.push_back(marker_position(a, 1, j));
      std::sort(pos.begin(), pos.end());
      std::vector<Pair> out;
      do {
        Pair b;
        b.cells.assign(a.cells.size(), 0);
        for (int j = 0; j < s0; ++j) b.cells[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])] = 1 + j;
        out.push_back(std::move(b));
      } while (std::next_permutation(pos.begin(), pos.end()));
      return out;
    };
  } else {
    p.eq = [](int, const Pair& a, const Pair& b) { return a == b; };
    p.class_of = [](int, const Pair& a) { return std::vector<Pair>{a}; };
  }
  return p;
}

PreComponentPresentation planes_like(bool broken) {
  PreComponentPresentation pc;
  pc.name = broken ? "broken-planes" : "planes";
  pc.parts = {subspace_part(0, false), subspace_part(1, false), subspace_part(2, true)};
  pc.parts[0].name = "origin";
  pc.parts[1].name = "coordinate-lines";
  pc.parts[2].name = "coordinate-planes";
  pc.preceq = [broken](int, int b, const Pair& a, int b2, const Pair& c) {
    const auto sa = marker_set(a, 1);
    const auto sc = marker_set(c, 1);
    if (b == b2) return sa == sc;
    if (broken) return b > b2 && std::includes(sa.begin(), sa.end(), sc.begin(), sc.end());
    return b < b2 && std::includes(sc.begin(), sc.end(), sa.begin(), sa.end());
  };
  return pc;
}

}  // namespace

PreComponentPresentation planes_presentation() { return planes_like(false); }
PreComponentPresentation broken_planes_presentation() { return planes_like(true); }

}  // namespace widecount
