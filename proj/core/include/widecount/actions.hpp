#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "widecount/errors.hpp"
#include "widecount/quasipoly.hpp"

namespace widecount {

/// Bijection of {0, ..., k-1}. Text form is 1-based cycle notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree);
  /// Parses "(1 2)(3 4 5)"; "()" or "" is the identity.
  static Permutation parse(std::string_view cycles, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  /// (a * b)(i) = a(b(i)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// All cycles including fixed points, each led by its minimum, ordered by that minimum.
  std::vector<std::vector<int>> cycles() const;
  std::size_t order() const;

  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Positional action: result[p(i)] = x[i].
template <typename T>
std::vector<T> permute_positions(const std::vector<T>& x, const Permutation& p) {
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(p(static_cast<int>(i)))] = x[i];
  return out;
}

/// Finite permutation group with all elements materialized.
class PermGroup {
 public:
  static constexpr std::size_t kMaxOrder = 1'000'000;

  /// Throws TooLarge beyond kMaxOrder elements.
  PermGroup(int degree, std::vector<Permutation> generators);

  static PermGroup symmetric(int degree);
  static PermGroup cyclic(int degree);
  static PermGroup trivial(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  /// Sorted; the identity comes first.
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const Permutation& p) const;
  bool is_symmetric() const;

  nlohmann::json to_json() const;
  static PermGroup from_json(const nlohmann::json& j);

 private:
  int degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t count() const { return components_; }
  /// Blocks sorted internally and ordered by their least element.
  std::vector<std::vector<std::size_t>> blocks();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

/// Action of a PermGroup on {0, ..., size-1}: act(g, x).
using GroupActionMap = std::function<std::size_t(const Permutation&, std::size_t)>;

/// Cauchy-Frobenius count. Checks bijectivity of generators, the identity,
/// and compatibility with products of generator pairs; throws NotAnAction.
Integer group_orbit_count(const PermGroup& group, std::size_t set_size, const GroupActionMap& act);

struct Arrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::string label;
};

/// Finite groupoid on objects {0, ..., Q-1} with a materialized composition table.
class Groupoid {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// compose(h, g) = h o g, called only when dst(g) == src(h). Throws std::invalid_argument
  /// with a witness if the groupoid axioms fail.
  Groupoid(std::size_t num_objects, std::vector<Arrow> arrows,
           const std::function<std::size_t(std::size_t, std::size_t)>& compose);

  /// One object whose arrows are the group elements.
  static Groupoid from_group(const PermGroup& group);

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_arrows() const { return arrows_.size(); }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t compose(std::size_t h, std::size_t g) const { return table_[h][g]; }
  std::size_t identity(std::size_t p) const { return identities_[p]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  /// Arrows p -> q.
  std::vector<std::size_t> hom(std::size_t p, std::size_t q) const;
  /// |G(p)| = number of arrows with source p.
  std::size_t out_degree(std::size_t p) const;

 private:
  std::size_t num_objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> inverses_;
};

/// Action of a groupoid on {0, ..., N-1} with an anchor map into the objects.
class GroupoidAction {
 public:
  /// act(a, x) is only queried for x anchored at src(a). Throws NotAnAction with a witness.
  GroupoidAction(const Groupoid& groupoid, std::vector<std::size_t> anchor,
                 const std::function<std::size_t(std::size_t, std::size_t)>& act);

  std::size_t size() const { return anchor_.size(); }
  std::size_t anchor(std::size_t x) const { return anchor_[x]; }
  const std::vector<std::size_t>& fiber(std::size_t p) const { return fibers_[p]; }
  std::size_t apply(std::size_t arrow, std::size_t x) const;

 private:
  std::vector<std::size_t> arrow_src_;
  std::vector<std::size_t> anchor_;
  std::vector<std::vector<std::size_t>> fibers_;
  std::vector<std::size_t> local_;                // position of x in its fiber
  std::vector<std::vector<std::size_t>> images_;  // per arrow, indexed by local position
};

/// sum_p 1/|G(p)| sum_{g in G(p,p)} |X_p^g|.
Integer groupoid_orbit_count(const Groupoid& groupoid, const GroupoidAction& action);

/// Orbits as explicit blocks, by union-find over all arrow applications.
std::vector<std::vector<std::size_t>> groupoid_orbits_enumerate(const Groupoid& groupoid,
                                                                const GroupoidAction& action);

/// Lexicographic minimum of the orbit of x under positions x alphabet.
/// Symbols are 0-based; either group may be null (trivial). Throws TooLarge
/// when |positions| * |alphabet| exceeds the budget and no fast path applies.
std::vector<int> canonical_form(const std::vector<int>& x, const PermGroup* positions, const PermGroup* alphabet,
                                std::size_t budget = 20'000'000);
/// canonical_form with the full symmetric group on positions, without materializing it.
std::vector<int> canonical_form_unordered(const std::vector<int>& x, const PermGroup* alphabet);

}  // namespace widecount
