#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "functors_internal.hpp"
#include "widecount/errors.hpp"
#include "widecount/functors.hpp"

namespace widecount {

// Calibration ----------------------------------------------------------------

CountVector Calibration::v() const {
  CountVector out(v0);
  for (int l : frequent) out[static_cast<std::size_t>(l)] += t;
  return out;
}

CountVector Calibration::v_tilde() const {
  CountVector out(v0);
  for (int l : frequent) out[static_cast<std::size_t>(l)] += 2 * t;
  return out;
}

namespace {

bool in_cone(const Calibration& c, const CountVector& beta, int scale) {
  std::vector<bool> is_free(c.v0.size(), false);
  for (int l : c.frequent) is_free[static_cast<std::size_t>(l)] = true;
  for (std::size_t l = 0; l < beta.size(); ++l) {
    if (is_free[l] ? beta[l] < scale * c.t : beta[l] != c.v0[l]) return false;
  }
  return true;
}

int sum(const CountVector& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

bool Calibration::in_tilde_region(const CountVector& beta) const { return in_cone(*this, beta, 2); }
bool Calibration::in_region(const CountVector& beta) const { return in_cone(*this, beta, 1); }

nlohmann::json Calibration::to_json() const {
  return {{"frequent", frequent}, {"v0", v0}, {"d", d}, {"t", t}, {"v", v()}, {"v_tilde", v_tilde()}};
}

Calibration initial_calibration(const DownwardClosedSet& m, int s0) {
  if (m.is_empty()) throw std::invalid_argument("calibration of an empty count set");
  const int k = m.dim();
  Calibration c;

  // Largest free set among the Stanley pieces; it is maximal in A.
  for (const auto& piece : stanley_decompose(m)) {
    if (piece.free.size() > c.frequent.size() || (piece.free.size() == c.frequent.size() && piece.free < c.frequent))
      c.frequent = piece.free;
  }

  std::vector<int> rest;
  std::vector<bool> is_free(static_cast<std::size_t>(k), false);
  for (int l : c.frequent) is_free[static_cast<std::size_t>(l)] = true;
  for (int l = 0; l < k; ++l)
    if (!is_free[static_cast<std::size_t>(l)]) rest.push_back(l);

  // v0 + Z^I lies in M iff no obstruction restricted to the complement of I is below v0.
  std::vector<CountVector> projected;
  for (const auto& o : m.obstructions()) {
    CountVector p;
    for (int l : rest) p.push_back(o[static_cast<std::size_t>(l)]);
    projected.push_back(std::move(p));
  }
  const DownwardClosedSet valid(static_cast<int>(rest.size()), projected);
  CountVector best;
  bool found = false;
  for (const auto& piece : stanley_decompose(valid)) {
    if (!piece.free.empty()) throw std::logic_error("frequent set is not maximal");
    const int s = sum(piece.offset);
    if (!found || s > sum(best) || (s == sum(best) && piece.offset > best)) {
      best = piece.offset;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no infrequent part");
  c.v0.assign(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < rest.size(); ++i) c.v0[static_cast<std::size_t>(rest[i])] = best[i];
  c.d = sum(c.v0);

  // Least t with v + e_l outside M for every infrequent l.
  int bound = 1;
  for (const auto& o : m.obstructions())
    for (int x : o) bound = std::max(bound, x + 1);
  int t_exact = 0;
  for (;; ++t_exact) {
    c.t = t_exact;
    const auto v = c.v();
    bool ok = true;
    for (int l : rest) {
      auto w = v;
      ++w[static_cast<std::size_t>(l)];
      if (m.contains(w)) ok = false;
    }
    if (ok || t_exact > bound) break;
  }
  c.t = std::max({t_exact, 1, (s0 + 2) / 2});
  return c;
}

// Quadruples -----------------------------------------------------------------

Quadruple Quadruple::relabeled(const Permutation& pi) const {
  Quadruple q(*this);
  for (auto& x : q.sigma0)
    if (x >= 0) x = pi(x);
  for (std::size_t c = 0; c < alpha_bar.size(); ++c) q.alpha_bar[static_cast<std::size_t>(pi(static_cast<int>(c)))] = alpha_bar[c];
  return q;
}

namespace {

std::vector<Permutation> all_permutations(int e) {
  if (e > 8) throw TooLarge("core of size " + std::to_string(e));
  std::vector<int> images(static_cast<std::size_t>(e));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(images);
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace

Quadruple Quadruple::canonical() const {
  Quadruple best(*this);
  for (const auto& pi : all_permutations(core_size())) best = std::min(best, relabeled(pi));
  return best;
}

nlohmann::json Quadruple::to_json() const {
  return {{"J", J}, {"sigma0", sigma0}, {"sigma1", sigma1}, {"alpha_bar", alpha_bar}};
}

nlohmann::json Quintuple::to_json() const {
  return {{"quadruple", quad.to_json()}, {"u", u}, {"core", core}, {"tau", tau}};
}

// Class analysis -------------------------------------------------------------

namespace {

struct MemberData {
  Quadruple quad;  ///< core relabeled in increasing position order
  std::vector<int> g;  ///< g[idx] = letter standing for frequent letter I[idx]
  Quintuple quint;
};

struct ClassData {
  std::vector<int> core;
  std::vector<MemberData> members;
};

/// Frequent-letter matching, core and tau for one class. Throws NotCalibrated if no
/// member reaches the region, Unstable if the structure does not hold.
ClassData analyze_class(const ModelFunctorPresentation& pres, int n, const std::vector<Pair>& cls, const Calibration& cal) {
  const int k = pres.k;
  const auto& I = cal.frequent;
  const Pair* w = nullptr;
  for (const auto& a : cls)
    if (cal.in_tilde_region(a.count_vector(k))) { w = &a; break; }
  if (!w)
    for (const auto& a : cls)
      if (cal.in_region(a.count_vector(k))) { w = &a; break; }
  if (!w) throw NotCalibrated("class of " + detail::pair_to_string(cls.front(), k) + " misses the calibrated region");

  auto fail = [&](const std::string& what) {
    throw Unstable(what + " in class of " + detail::pair_to_string(*w, k) + " at t=" + std::to_string(cal.t));
  };

  // g_b(l) is the letter b shows on the positions where the witness has l.
  std::vector<std::vector<int>> g(cls.size());
  for (std::size_t m = 0; m < cls.size(); ++m) {
    const auto& b = cls[m];
    for (int l : I) {
      int letter = -1;
      for (int i = 0; i < n; ++i) {
        const int x = b.cells[static_cast<std::size_t>(i)];
        if (w->cells[static_cast<std::size_t>(i)] != l || x >= k) continue;
        if (letter >= 0 && letter != x) fail("frequent letter split");
        letter = x;
      }
      if (letter < 0) fail("frequent letter hidden by sigma");
      g[m].push_back(letter);
    }
    auto sorted = g[m];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("frequent letters merged");
  }

  DisjointSets dsu(static_cast<std::size_t>(n));
  for (std::size_t m = 0; m < cls.size(); ++m)
    for (int letter : g[m]) {
      int first = -1;
      for (int i = 0; i < n; ++i) {
        if (cls[m].cells[static_cast<std::size_t>(i)] != letter) continue;
        if (first < 0) first = i;
        else dsu.unite(static_cast<std::size_t>(first), static_cast<std::size_t>(i));
      }
    }
  std::vector<int> block_size(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) ++block_size[dsu.find(static_cast<std::size_t>(i))];

  ClassData out;
  std::vector<int> core_index(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    if (block_size[dsu.find(static_cast<std::size_t>(i))] == 1) {
      core_index[static_cast<std::size_t>(i)] = static_cast<int>(out.core.size());
      out.core.push_back(i);
    }
  if (static_cast<int>(out.core.size()) > pres.s0 + cal.d) fail("core larger than s0 + d");

  // tau_w: which frequent letter each non-core position carries.
  std::vector<int> tau_w(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (core_index[static_cast<std::size_t>(i)] >= 0) continue;
    for (std::size_t m = 0; m < cls.size(); ++m) {
      auto it = std::find(g[m].begin(), g[m].end(), cls[m].cells[static_cast<std::size_t>(i)]);
      if (it == g[m].end()) continue;
      const int idx = static_cast<int>(it - g[m].begin());
      if (tau_w[static_cast<std::size_t>(i)] >= 0 && tau_w[static_cast<std::size_t>(i)] != idx) fail("inconsistent tau");
      tau_w[static_cast<std::size_t>(i)] = idx;
    }
    if (tau_w[static_cast<std::size_t>(i)] < 0) fail("position outside the core without a frequent letter");
  }

  for (std::size_t m = 0; m < cls.size(); ++m) {
    const auto& a = cls[m];
    MemberData md;
    md.g = g[m];
    auto& q = md.quint;
    q.quad.J = g[m];
    std::sort(q.quad.J.begin(), q.quad.J.end());
    auto j_index = [&](int letter) {
      return static_cast<std::size_t>(std::lower_bound(q.quad.J.begin(), q.quad.J.end(), letter) - q.quad.J.begin());
    };
    q.core = out.core;
    q.u.assign(q.quad.J.size(), 0);
    q.tau.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      const int idx = tau_w[static_cast<std::size_t>(i)];
      if (idx < 0) continue;
      const int letter = g[m][static_cast<std::size_t>(idx)];
      q.tau[static_cast<std::size_t>(i)] = letter;
      ++q.u[j_index(letter)];
      const int x = a.cells[static_cast<std::size_t>(i)];
      if (x < k && x != letter) fail("alpha disagrees with tau off the core");
    }
    q.quad.sigma0.assign(static_cast<std::size_t>(pres.s0), -1);
    q.quad.sigma1.assign(static_cast<std::size_t>(pres.s0), -1);
    for (int i = 0; i < n; ++i) {
      const int x = a.cells[static_cast<std::size_t>(i)];
      if (x < k) continue;
      const auto j = static_cast<std::size_t>(x - k);
      if (core_index[static_cast<std::size_t>(i)] >= 0) q.quad.sigma0[j] = core_index[static_cast<std::size_t>(i)];
      else q.quad.sigma1[j] = q.tau[static_cast<std::size_t>(i)];
    }
    for (int i : out.core) {
      const int x = a.cells[static_cast<std::size_t>(i)];
      if (x < k && std::binary_search(q.quad.J.begin(), q.quad.J.end(), x)) fail("core letter inside J");
      q.quad.alpha_bar.push_back(x < k ? x : -1);
    }
    md.quad = q.quad;
    out.members.push_back(std::move(md));
  }
  return out;
}

/// Letter map J_a -> J_b as indices into b's sorted J.
std::vector<int> transition(const MemberData& a, const MemberData& b) {
  std::vector<int> map(a.quad.J.size());
  for (std::size_t idx = 0; idx < a.g.size(); ++idx) {
    const auto pos = std::find(a.quad.J.begin(), a.quad.J.end(), a.g[idx]) - a.quad.J.begin();
    map[static_cast<std::size_t>(pos)] = b.g[idx];
  }
  return map;
}

bool class_is_tilde(const std::vector<Pair>& cls, const Calibration& cal, int k) {
  for (const auto& a : cls)
    if (cal.in_tilde_region(a.count_vector(k))) return true;
  return false;
}

/// Visits one class per Sym(n)-orbit at level `level`, with the count vectors it covers.
void for_each_orbit_class(const ModelFunctorPresentation& pres, int level,
                          const std::function<void(const std::vector<Pair>&, const std::set<CountVector>&)>& f) {
  const int n = level + pres.s0;
  std::set<CountVector> seen;
  std::vector<CountVector> betas;
  for_each_composition(pres.k, level, [&](const CountVector& b) {
    if (pres.countset.contains(b)) betas.push_back(b);
  });
  std::sort(betas.begin(), betas.end());
  for (const auto& beta : betas) {
    if (seen.count(beta)) continue;
    const auto cls = class_of(pres, n, representative_pair(beta, pres.k, pres.s0));
    std::set<CountVector> counts;
    for (const auto& a : cls) counts.insert(a.count_vector(pres.k));
    for (const auto& c : counts) {
      if (!pres.countset.contains(c)) throw std::logic_error("class member outside M");
      seen.insert(c);
    }
    f(cls, counts);
  }
}

std::string map_label(const std::vector<int>& src_J, const std::vector<int>& map) {
  std::ostringstream os;
  for (std::size_t i = 0; i < map.size(); ++i) os << (i ? "," : "") << src_J[i] << "->" << map[i];
  return os.str();
}

}  // namespace

Quintuple analyze_pair(const ModelFunctorPresentation& pres, int n, const Pair& pair, const Calibration& cal) {
  if (!pres.countset.contains(pair.count_vector(pres.k)) || pair.size() != n)
    throw std::invalid_argument("pair not in F([n])");
  const auto cls = class_of(pres, n, pair);
  const auto data = analyze_class(pres, n, cls, cal);
  const auto it = std::lower_bound(cls.begin(), cls.end(), pair);
  return data.members[static_cast<std::size_t>(it - cls.begin())].quint;
}

// Extraction -----------------------------------------------------------------

bool ExtractedGroupoid::same_structure(const ExtractedGroupoid& other) const {
  return objects == other.objects && arrows == other.arrows;
}

nlohmann::json ExtractedGroupoid::to_json() const {
  nlohmann::json j;
  j["objects"] = nlohmann::json::array();
  for (const auto& q : objects) j["objects"].push_back(q.to_json());
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : arrows) j["arrows"].push_back({{"src", a.src}, {"dst", a.dst}, {"map", a.map}});
  j["carrier_size"] = carrier.size();
  j["validated"] = groupoid.has_value() && action.has_value();
  return j;
}

ExtractedGroupoid extract_groupoid(const ModelFunctorPresentation& pres, int e, const Calibration& cal) {
  const auto perms = all_permutations(e);
  std::set<Quadruple> objects;
  std::set<std::tuple<Quadruple, Quadruple, std::vector<int>>> arrows;
  std::set<std::pair<Quadruple, CountVector>> carrier;
  const int base = sum(cal.v_tilde());
  for (int level = base; level <= base + 1; ++level) {
    for_each_orbit_class(pres, level, [&](const std::vector<Pair>& cls, const std::set<CountVector>&) {
      if (!class_is_tilde(cls, cal, pres.k)) return;
      const auto data = analyze_class(pres, level + pres.s0, cls, cal);
      if (static_cast<int>(data.core.size()) != e) return;
      std::set<std::pair<Quadruple, std::vector<int>>> keys;
      std::vector<const MemberData*> distinct;
      for (const auto& md : data.members)
        if (keys.insert({md.quad, md.g}).second) distinct.push_back(&md);
      for (const auto& pi : perms) {
        for (const auto& md : data.members) carrier.insert({md.quad.relabeled(pi), md.quint.u});
        for (const auto* a : distinct) {
          const auto qa = a->quad.relabeled(pi);
          objects.insert(qa);
          for (const auto* b : distinct) arrows.insert({qa, b->quad.relabeled(pi), transition(*a, *b)});
        }
      }
    });
  }

  ExtractedGroupoid out;
  out.objects.assign(objects.begin(), objects.end());
  auto object_index = [&](const Quadruple& q) {
    return static_cast<std::size_t>(std::lower_bound(out.objects.begin(), out.objects.end(), q) - out.objects.begin());
  };
  std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, std::size_t> arrow_index;
  std::vector<Arrow> raw;
  for (const auto& [src, dst, map] : arrows) {
    ExtractedGroupoid::ArrowData a{object_index(src), object_index(dst), map};
    arrow_index[{a.src, a.dst, a.map}] = out.arrows.size();
    raw.push_back({a.src, a.dst, map_label(src.J, map)});
    out.arrows.push_back(std::move(a));
  }
  for (const auto& [q, u] : carrier) {
    Quintuple x;
    x.quad = q;
    x.u = u;
    out.carrier.push_back(std::move(x));
  }

  auto apply_map = [](const std::vector<int>& src_J, const std::vector<int>& map, const std::vector<int>& x) {
    // Letter x[i] of src_J goes to map[pos of x[i]].
    std::vector<int> y;
    for (int letter : x) {
      const auto pos = std::find(src_J.begin(), src_J.end(), letter) - src_J.begin();
      y.push_back(map[static_cast<std::size_t>(pos)]);
    }
    return y;
  };
  try {
    out.groupoid.emplace(out.objects.size(), raw, [&](std::size_t h, std::size_t g) -> std::size_t {
      const auto& ag = out.arrows[g];
      const auto& ah = out.arrows[h];
      const auto composite = apply_map(out.objects[ah.src].J, ah.map, ag.map);
      auto it = arrow_index.find({ag.src, ah.dst, composite});
      if (it == arrow_index.end()) throw std::invalid_argument("composite arrow not realized");
      return it->second;
    });
    std::vector<std::size_t> anchor;
    std::map<std::pair<Quadruple, CountVector>, std::size_t> carrier_index;
    for (std::size_t x = 0; x < out.carrier.size(); ++x) {
      anchor.push_back(object_index(out.carrier[x].quad));
      carrier_index[{out.carrier[x].quad, out.carrier[x].u}] = x;
    }
    out.action.emplace(*out.groupoid, anchor, [&](std::size_t a, std::size_t x) -> std::size_t {
      const auto& arrow = out.arrows[a];
      const auto& src_J = out.objects[arrow.src].J;
      const auto& dst_J = out.objects[arrow.dst].J;
      CountVector u(dst_J.size(), 0);
      for (std::size_t i = 0; i < src_J.size(); ++i) {
        const auto pos = std::lower_bound(dst_J.begin(), dst_J.end(), arrow.map[i]) - dst_J.begin();
        u[static_cast<std::size_t>(pos)] = out.carrier[x].u[i];
      }
      auto it = carrier_index.find({out.objects[arrow.dst], u});
      if (it == carrier_index.end()) throw NotAnAction("image of a quintuple not observed");
      return it->second;
    });
  } catch (const std::invalid_argument& ex) {
    throw Unstable(std::string("extracted groupoid: ") + ex.what());
  } catch (const NotAnAction& ex) {
    throw Unstable(std::string("extracted action: ") + ex.what());
  }
  return out;
}

namespace {

std::vector<ExtractedGroupoid> extract_all(const ModelFunctorPresentation& pres, const Calibration& cal) {
  std::vector<ExtractedGroupoid> out;
  for (int e = 0; e <= pres.s0 + cal.d; ++e) out.push_back(extract_groupoid(pres, e, cal));
  return out;
}

}  // namespace

Calibration calibrate(const ModelFunctorPresentation& pres, int max_steps) {
  Calibration cal = initial_calibration(pres.countset, pres.s0);
  if (cal.frequent.empty()) return cal;
  for (int step = 0; step < max_steps; ++step) {
    try {
      auto next = cal;
      ++next.t;
      const auto a = extract_all(pres, cal);
      const auto b = extract_all(pres, next);
      bool same = true;
      for (std::size_t e = 0; e < a.size(); ++e) same = same && a[e].same_structure(b[e]);
      if (same) return cal;
    } catch (const Unstable&) {
    }
    ++cal.t;
  }
  throw Unstable("no stable calibration for " + pres.name + " up to t=" + std::to_string(cal.t));
}

// Counting -------------------------------------------------------------------

nlohmann::json GroupoidCountTrace::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json x{{"countset", s.countset.to_json()}, {"route", s.route}, {"contribution", s.contribution.get_str()}};
    if (s.calibration) x["calibration"] = s.calibration->to_json();
    j.push_back(std::move(x));
  }
  return j;
}

namespace {

struct GroupoidStep {
  Integer count;
  std::vector<CountVector> new_obstructions;
};

/// Orbits of Sym(n) on the classes of F~ at size n by groupoid Burnside sums, plus the
/// minimal count vectors of F~ seen up to level n - s0.
GroupoidStep groupoid_step(const ModelFunctorPresentation& pres, int n, const Calibration& cal) {
  const int L = n - pres.s0;
  const int k = pres.k;
  std::set<CountVector> tilde, plain;
  // (e, canonical quadruple) -> realized u at every level; arrows at size n.
  std::map<Quadruple, std::set<CountVector>> realized;
  std::map<Quadruple, std::set<std::pair<Quadruple, std::vector<int>>>> out_arrows;
  std::size_t tilde_orbits_at_n = 0;

  for (int level = sum(cal.v_tilde()); level <= L; ++level) {
    for_each_orbit_class(pres, level, [&](const std::vector<Pair>& cls, const std::set<CountVector>& counts) {
      if (!class_is_tilde(cls, cal, k)) {
        plain.insert(counts.begin(), counts.end());
        return;
      }
      tilde.insert(counts.begin(), counts.end());
      const auto data = analyze_class(pres, level + pres.s0, cls, cal);
      const auto perms = all_permutations(static_cast<int>(data.core.size()));
      if (level == L) ++tilde_orbits_at_n;
      std::set<std::pair<Quadruple, std::vector<int>>> keys;
      std::vector<const MemberData*> distinct;
      for (const auto& md : data.members) {
        realized[md.quad.canonical()].insert(md.quint.u);
        if (keys.insert({md.quad, md.g}).second) distinct.push_back(&md);
      }
      if (level != L) return;
      for (const auto* a : distinct) {
        const auto canon = a->quad.canonical();
        for (const auto& pi : perms) {
          if (a->quad.relabeled(pi) != canon) continue;
          for (const auto* b : distinct) out_arrows[canon].insert({b->quad.relabeled(pi), transition(*a, *b)});
        }
      }
    });
  }

  for (const auto& beta : plain)
    for (const auto& t : tilde)
      if (dominates(beta, t)) throw Unstable("F~ is not upward closed at t=" + std::to_string(cal.t));

  Rational total = 0;
  for (const auto& [q, arrows] : out_arrows) {
    const int e = q.core_size();
    const auto& us = realized.at(q);
    const int target = n - e;
    std::vector<CountVector> at_n;
    for (const auto& u : us)
      if (sum(u) == target) at_n.push_back(u);
    if (at_n.empty()) continue;
    const int j = static_cast<int>(q.J.size());
    const DownwardClosedSet complement(j, std::vector<CountVector>(us.begin(), us.end()));
    Rational loops = 0;
    for (const auto& [dst, map] : arrows) {
      if (dst.canonical() != q) continue;
      std::vector<int> images;
      for (int letter : map)
        images.push_back(static_cast<int>(std::lower_bound(q.J.begin(), q.J.end(), letter) - q.J.begin()));
      const Permutation g(images);
      const Integer fix = count_level(cycle_contract(DownwardClosedSet::full(j), g), target) -
                          count_level(cycle_contract(complement, g), target);
      Integer direct = 0;
      for (const auto& u : at_n)
        if (permute_positions(u, g) == u) ++direct;
      if (fix != direct) throw Unstable("realized quintuples are not upward closed at t=" + std::to_string(cal.t));
      loops += fix;
    }
    total += loops / Rational(static_cast<unsigned long>(arrows.size()));
  }
  total.canonicalize();
  if (total.get_den() != 1) throw Unstable("non-integral Burnside sum at t=" + std::to_string(cal.t));
  if (total.get_num() != static_cast<unsigned long>(tilde_orbits_at_n))
    throw Unstable("Burnside sum disagrees with the count-vector orbits at t=" + std::to_string(cal.t));

  GroupoidStep step;
  step.count = total.get_num();
  step.new_obstructions = DownwardClosedSet(k, std::vector<CountVector>(tilde.begin(), tilde.end())).obstructions();
  if (step.new_obstructions.empty()) throw std::logic_error("F~ is empty although |v~| <= n - s0");
  return step;
}

}  // namespace

Integer mf_count_via_groupoid(const ModelFunctorPresentation& pres, int n, GroupoidCountTrace* trace) {
  Integer total = 0;
  ModelFunctorPresentation state(pres);
  auto record = [&](const std::optional<Calibration>& cal, const std::string& route, const Integer& c) {
    if (trace) trace->steps.push_back({state.countset, cal, route, c});
  };
  if (n < pres.s0) {
    record(std::nullopt, "empty", 0);
    return 0;
  }
  const int L = n - pres.s0;
  for (;;) {
    bool level_empty = true;
    for_each_composition(state.k, L, [&](const CountVector& b) {
      if (level_empty && state.countset.contains(b)) level_empty = false;
    });
    if (level_empty) {
      record(std::nullopt, "empty", 0);
      return total;
    }
    const auto start = initial_calibration(state.countset, state.s0);
    if (start.frequent.empty() || sum(start.v_tilde()) > L) {
      const auto leaf = mf_orbit_count_by_count_vectors(state, n);
      record(start, "count-vectors", leaf);
      return total + leaf;
    }
    Calibration cal = start;
    try {
      cal = calibrate(state);
    } catch (const Unstable&) {
    }
    std::optional<GroupoidStep> step;
    for (; sum(cal.v_tilde()) <= L; ++cal.t) {
      try {
        step = groupoid_step(state, n, cal);
        break;
      } catch (const Unstable&) {
      }
    }
    if (!step) {
      const auto leaf = mf_orbit_count_by_count_vectors(state, n);
      record(cal, "count-vectors", leaf);
      return total + leaf;
    }
    record(cal, "groupoid", step->count);
    total += step->count;
    state.countset = state.countset.with_obstructions(step->new_obstructions);
  }
}

}  // namespace widecount
