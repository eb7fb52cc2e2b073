#include "widecount/actions.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace widecount {

// Permutation ----------------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation image table is not a bijection");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  return Permutation(std::move(id));
}

Permutation Permutation::parse(std::string_view text, int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw std::invalid_argument("cycle notation: unclosed '('");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("cycle notation: unexpected character '" + std::string(1, text[i]) + "'");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > degree)
        throw std::invalid_argument("cycle notation: point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[static_cast<std::size_t>(v - 1)]) throw std::invalid_argument("cycle notation: repeated point " + std::to_string(v));
      used[static_cast<std::size_t>(v - 1)] = 1;
      cycle.push_back(v - 1);
    }
    for (std::size_t c = 0; c < cycle.size(); ++c)
      img[static_cast<std::size_t>(cycle[c])] = cycle[(c + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (degree() != other.degree()) throw std::invalid_argument("permutation degrees differ");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = images_[static_cast<std::size_t>(other.images_[i])];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t Permutation::order() const {
  std::size_t o = 1;
  for (const auto& c : cycles()) o = std::lcm(o, c.size());
  return o;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

// PermGroup ------------------------------------------------------------------

PermGroup::PermGroup(int degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw std::invalid_argument("generator degree does not match group degree");
  std::set<Permutation> seen{Permutation::identity(degree_)};
  std::queue<Permutation> todo;
  todo.push(Permutation::identity(degree_));
  while (!todo.empty()) {
    Permutation x = todo.front();
    todo.pop();
    for (const auto& g : generators_) {
      Permutation y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > kMaxOrder) throw TooLarge("permutation group exceeds " + std::to_string(kMaxOrder) + " elements");
        todo.push(std::move(y));
      }
    }
  }
  elements_.assign(seen.begin(), seen.end());
}

PermGroup PermGroup::symmetric(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(degree)), cyc(static_cast<std::size_t>(degree));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < degree; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % degree;
    gens.emplace_back(std::move(swap));
    if (degree > 2) gens.emplace_back(std::move(cyc));
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::cyclic(int degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    std::vector<int> cyc(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % degree;
    gens.emplace_back(std::move(cyc));
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermGroup::is_symmetric() const {
  std::size_t f = 1;
  for (int i = 2; i <= degree_; ++i) f *= static_cast<std::size_t>(i);
  return order() == f;
}

nlohmann::json PermGroup::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators_) gens.push_back(g.to_string());
  return {{"degree", degree_}, {"generators", gens}};
}

PermGroup PermGroup::from_json(const nlohmann::json& j) {
  const int k = j.at("degree").get<int>();
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) gens.push_back(Permutation::parse(g.get<std::string>(), k));
  return PermGroup(k, std::move(gens));
}

// DisjointSets ---------------------------------------------------------------

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

std::vector<std::vector<std::size_t>> DisjointSets::blocks() {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(parent_.size(), static_cast<std::size_t>(-1));
  for (std::size_t x = 0; x < parent_.size(); ++x) {
    const std::size_t r = find(x);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

// Group orbit counting -------------------------------------------------------

Integer group_orbit_count(const PermGroup& group, std::size_t set_size, const GroupActionMap& act) {
  auto image = [&](const Permutation& g) {
    std::vector<std::size_t> img(set_size);
    for (std::size_t x = 0; x < set_size; ++x) {
      img[x] = act(g, x);
      if (img[x] >= set_size)
        throw NotAnAction("generator " + g.to_string() + " maps " + std::to_string(x) + " outside the set");
    }
    return img;
  };
  const Permutation id = Permutation::identity(group.degree());
  if (image(id) != [&] {
        std::vector<std::size_t> v(set_size);
        std::iota(v.begin(), v.end(), std::size_t{0});
        return v;
      }())
    throw NotAnAction("identity does not act trivially");
  std::vector<std::vector<std::size_t>> gen_images;
  for (const auto& g : group.generators()) {
    auto img = image(g);
    std::vector<char> hit(set_size, 0);
    for (std::size_t x = 0; x < set_size; ++x) {
      if (hit[img[x]]) throw NotAnAction("generator " + g.to_string() + " is not injective on the set");
      hit[img[x]] = 1;
    }
    gen_images.push_back(std::move(img));
  }
  const auto& gens = group.generators();
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      auto prod = image(gens[a] * gens[b]);
      for (std::size_t x = 0; x < set_size; ++x)
        if (prod[x] != gen_images[a][gen_images[b][x]])
          throw NotAnAction("action of " + gens[a].to_string() + " * " + gens[b].to_string() +
                            " differs from the composite at element " + std::to_string(x));
    }
  Integer total = 0;
  for (const auto& g : group.elements())
    for (std::size_t x = 0; x < set_size; ++x)
      if (act(g, x) == x) ++total;
  if (total % Integer(static_cast<unsigned long>(group.order())) != 0)
    throw NotAnAction("fixed-point sum is not divisible by the group order");
  return total / Integer(static_cast<unsigned long>(group.order()));
}

// Groupoid -------------------------------------------------------------------

Groupoid::Groupoid(std::size_t num_objects, std::vector<Arrow> arrows,
                   const std::function<std::size_t(std::size_t, std::size_t)>& compose)
    : num_objects_(num_objects), arrows_(std::move(arrows)) {
  const std::size_t m = arrows_.size();
  for (std::size_t a = 0; a < m; ++a)
    if (arrows_[a].src >= num_objects_ || arrows_[a].dst >= num_objects_)
      throw std::invalid_argument("arrow " + std::to_string(a) + " has an endpoint outside the object set");
  table_.assign(m, std::vector<std::size_t>(m, npos));
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t g = 0; g < m; ++g) {
      if (arrows_[g].dst != arrows_[h].src) continue;
      const std::size_t c = compose(h, g);
      if (c >= m || arrows_[c].src != arrows_[g].src || arrows_[c].dst != arrows_[h].dst)
        throw std::invalid_argument("composite of arrows " + std::to_string(h) + " o " + std::to_string(g) +
                                    " has wrong endpoints");
      table_[h][g] = c;
    }
  identities_.assign(num_objects_, npos);
  for (std::size_t a = 0; a < m; ++a)
    if (arrows_[a].src == arrows_[a].dst && table_[a][a] == a) {
      if (identities_[arrows_[a].src] != npos)
        throw std::invalid_argument("object " + std::to_string(arrows_[a].src) + " has two idempotent arrows");
      identities_[arrows_[a].src] = a;
    }
  for (std::size_t p = 0; p < num_objects_; ++p)
    if (identities_[p] == npos) throw std::invalid_argument("object " + std::to_string(p) + " has no identity arrow");
  for (std::size_t a = 0; a < m; ++a) {
    if (table_[identities_[arrows_[a].dst]][a] != a || table_[a][identities_[arrows_[a].src]] != a)
      throw std::invalid_argument("identity law fails at arrow " + std::to_string(a));
  }
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t g = 0; g < m; ++g) {
      if (table_[h][g] == npos) continue;
      for (std::size_t f = 0; f < m; ++f) {
        if (table_[g][f] == npos) continue;
        if (table_[table_[h][g]][f] != table_[h][table_[g][f]])
          throw std::invalid_argument("associativity fails at arrows (" + std::to_string(h) + ", " +
                                      std::to_string(g) + ", " + std::to_string(f) + ")");
      }
    }
  inverses_.assign(m, npos);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m && inverses_[a] == npos; ++b)
      if (table_[b][a] == identities_[arrows_[a].src] && table_[a][b] == identities_[arrows_[a].dst]) inverses_[a] = b;
    if (inverses_[a] == npos) throw std::invalid_argument("arrow " + std::to_string(a) + " has no inverse");
  }
}

Groupoid Groupoid::from_group(const PermGroup& group) {
  const auto& el = group.elements();
  std::vector<Arrow> arrows;
  for (const auto& g : el) arrows.push_back({0, 0, g.to_string()});
  return Groupoid(1, std::move(arrows), [&](std::size_t h, std::size_t g) {
    const auto it = std::lower_bound(el.begin(), el.end(), el[h] * el[g]);
    return static_cast<std::size_t>(it - el.begin());
  });
}

std::vector<std::size_t> Groupoid::hom(std::size_t p, std::size_t q) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].src == p && arrows_[a].dst == q) out.push_back(a);
  return out;
}

std::size_t Groupoid::out_degree(std::size_t p) const {
  std::size_t c = 0;
  for (const auto& a : arrows_) c += a.src == p;
  return c;
}

// GroupoidAction -------------------------------------------------------------

GroupoidAction::GroupoidAction(const Groupoid& groupoid, std::vector<std::size_t> anchor,
                               const std::function<std::size_t(std::size_t, std::size_t)>& act)
    : anchor_(std::move(anchor)) {
  const std::size_t n = anchor_.size();
  const std::size_t m = groupoid.num_arrows();
  fibers_.assign(groupoid.num_objects(), {});
  local_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (anchor_[x] >= groupoid.num_objects())
      throw NotAnAction("element " + std::to_string(x) + " is anchored outside the object set");
    local_[x] = fibers_[anchor_[x]].size();
    fibers_[anchor_[x]].push_back(x);
  }
  arrow_src_.resize(m);
  images_.assign(m, {});
  for (std::size_t a = 0; a < m; ++a) {
    const Arrow& ar = groupoid.arrow(a);
    arrow_src_[a] = ar.src;
    std::vector<char> hit(n, 0);
    for (std::size_t x : fibers_[ar.src]) {
      const std::size_t y = act(a, x);
      if (y >= n || anchor_[y] != ar.dst)
        throw NotAnAction("arrow " + std::to_string(a) + " sends element " + std::to_string(x) +
                          " outside the fiber over its target");
      if (hit[y]) throw NotAnAction("arrow " + std::to_string(a) + " is not injective (element " + std::to_string(y) + ")");
      hit[y] = 1;
      images_[a].push_back(y);
    }
    if (fibers_[ar.src].size() != fibers_[ar.dst].size())
      throw NotAnAction("arrow " + std::to_string(a) + " joins fibers of different sizes");
  }
  for (std::size_t p = 0; p < groupoid.num_objects(); ++p)
    for (std::size_t x : fibers_[p])
      if (apply(groupoid.identity(p), x) != x)
        throw NotAnAction("identity at object " + std::to_string(p) + " moves element " + std::to_string(x));
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t g = 0; g < m; ++g) {
      const std::size_t c = groupoid.compose(h, g);
      if (c == Groupoid::npos) continue;
      for (std::size_t x : fibers_[groupoid.arrow(g).src])
        if (apply(c, x) != apply(h, apply(g, x)))
          throw NotAnAction("composition law fails for arrows " + std::to_string(h) + " o " + std::to_string(g) +
                            " at element " + std::to_string(x));
    }
}

std::size_t GroupoidAction::apply(std::size_t arrow, std::size_t x) const {
  if (anchor_[x] != arrow_src_[arrow]) throw std::invalid_argument("element is not anchored at the arrow's source");
  return images_[arrow][local_[x]];
}

Integer groupoid_orbit_count(const Groupoid& groupoid, const GroupoidAction& action) {
  Rational total = 0;
  for (std::size_t p = 0; p < groupoid.num_objects(); ++p) {
    if (action.fiber(p).empty()) continue;
    std::size_t fixed = 0;
    for (std::size_t g : groupoid.hom(p, p))
      for (std::size_t x : action.fiber(p)) fixed += action.apply(g, x) == x;
    total += Rational(Integer(static_cast<unsigned long>(fixed)), Integer(static_cast<unsigned long>(groupoid.out_degree(p))));
  }
  total.canonicalize();
  if (total.get_den() != 1) throw NotAnAction("groupoid orbit sum is not an integer: " + total.get_str());
  return total.get_num();
}

std::vector<std::vector<std::size_t>> groupoid_orbits_enumerate(const Groupoid& groupoid,
                                                                const GroupoidAction& action) {
  DisjointSets dsu(action.size());
  for (std::size_t a = 0; a < groupoid.num_arrows(); ++a)
    for (std::size_t x : action.fiber(groupoid.arrow(a).src)) dsu.unite(x, action.apply(a, x));
  return dsu.blocks();
}

// Canonical forms ------------------------------------------------------------

std::vector<int> canonical_form(const std::vector<int>& x, const PermGroup* positions, const PermGroup* alphabet,
                                std::size_t budget) {
  if (positions && static_cast<std::size_t>(positions->degree()) != x.size())
    throw std::invalid_argument("canonical_form: position group degree differs from the word length");
  const PermGroup* alph = alphabet;
  auto relabel = [&](const Permutation& a) {
    std::vector<int> y(x);
    for (auto& s : y) {
      if (s < 0 || s >= a.degree()) throw std::invalid_argument("canonical_form: symbol outside the alphabet");
      s = a(s);
    }
    return y;
  };
  std::vector<Permutation> alph_elems = alph ? alph->elements() : std::vector<Permutation>{};
  const std::size_t na = alph ? alph->order() : 1;
  std::vector<int> best;
  if (!positions || positions->order() == 1) {
    if (na > budget) throw TooLarge("canonical_form: alphabet group exceeds budget");
    if (!alph) return x;
    for (const auto& a : alph_elems) {
      auto y = relabel(a);
      if (best.empty() || y < best) best = std::move(y);
    }
    return best;
  }
  if (positions->is_symmetric()) return canonical_form_unordered(x, alph);
  if (positions->order() > budget / na) throw TooLarge("canonical_form: orbit search exceeds budget");
  std::vector<std::vector<int>> relabeled;
  if (alph)
    for (const auto& a : alph_elems) relabeled.push_back(relabel(a));
  else
    relabeled.push_back(x);
  for (const auto& p : positions->elements())
    for (const auto& y : relabeled) {
      auto z = permute_positions(y, p);
      if (best.empty() || z < best) best = std::move(z);
    }
  return best;
}

std::vector<int> canonical_form_unordered(const std::vector<int>& x, const PermGroup* alphabet) {
  std::vector<int> best = x;
  std::sort(best.begin(), best.end());
  if (!alphabet) return best;
  for (const auto& a : alphabet->elements()) {
    std::vector<int> y(x);
    for (auto& s : y) {
      if (s < 0 || s >= a.degree()) throw std::invalid_argument("canonical_form: symbol outside the alphabet");
      s = a(s);
    }
    std::sort(y.begin(), y.end());
    if (y < best) best = std::move(y);
  }
  return best;
}

}  // namespace widecount
