#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "json.hpp"
#include "widecount/actions.hpp"
#include "widecount/quasipoly.hpp"

namespace widecount {

using CountVector = std::vector<int>;

/// Componentwise a <= b.
bool dominates(const CountVector& b, const CountVector& a);

/// Subset of Z_{>=0}^k given by the minimal vectors of its complement.
class DownwardClosedSet {
 public:
  DownwardClosedSet() = default;
  /// Obstructions are reduced to a sorted antichain.
  DownwardClosedSet(int k, std::vector<CountVector> obstructions);

  static DownwardClosedSet full(int k) { return DownwardClosedSet(k, {}); }
  static DownwardClosedSet empty(int k) { return DownwardClosedSet(k, {CountVector(static_cast<std::size_t>(k), 0)}); }

  int dim() const { return k_; }
  const std::vector<CountVector>& obstructions() const { return obstructions_; }
  bool contains(const CountVector& beta) const;
  bool is_full() const { return obstructions_.empty(); }
  bool is_empty() const;

  /// Intersection with the set cut out by further obstructions.
  DownwardClosedSet with_obstructions(const std::vector<CountVector>& extra) const;
  /// The obstruction set is permuted onto itself by coordinate permutation g.
  bool stable_under(const Permutation& g) const;

  bool operator==(const DownwardClosedSet& o) const { return k_ == o.k_ && obstructions_ == o.obstructions_; }
  bool operator<(const DownwardClosedSet& o) const {
    return k_ != o.k_ ? k_ < o.k_ : obstructions_ < o.obstructions_;
  }

  nlohmann::json to_json() const;
  static DownwardClosedSet from_json(const nlohmann::json& j);

 private:
  int k_ = 0;
  std::vector<CountVector> obstructions_;
};

/// offset + Z_{>=0}^free, coordinates outside `free` frozen at the offset.
struct StanleyPiece {
  CountVector offset;
  std::vector<int> free;  ///< sorted 0-based coordinates

  bool contains(const CountVector& beta) const;
  bool operator==(const StanleyPiece&) const = default;
};

/// Disjoint cover of M by coordinate cones. Splits on the highest coordinate
/// that carries a positive obstruction entry.
std::vector<StanleyPiece> stanley_decompose(const DownwardClosedSet& m);

/// Points y of `feasible` with sum_c weights[c] * y[c] = n.
struct WeightedLevelProblem {
  std::vector<int> weights;
  DownwardClosedSet feasible;
};

/// Fixed vectors of g are constant on its cycles; one coordinate per cycle.
WeightedLevelProblem cycle_contract(const DownwardClosedSet& m, const Permutation& g);

/// Number of nonnegative solutions of sum w_i z_i = n; cached per weight multiset.
Integer denumerant(std::vector<int> weights, std::int64_t n);

/// Precomputed Stanley pieces for repeated level queries.
class LevelCounter {
 public:
  explicit LevelCounter(WeightedLevelProblem problem);
  Integer count(std::int64_t n) const;
  const std::vector<StanleyPiece>& pieces() const { return pieces_; }
  const WeightedLevelProblem& problem() const { return problem_; }

 private:
  WeightedLevelProblem problem_;
  std::vector<StanleyPiece> pieces_;
};

Integer count_level(const WeightedLevelProblem& problem, std::int64_t n);

/// Level count of N minus N' as |N_n| - |(N cap N')_n|.
Integer count_level_difference(const WeightedLevelProblem& n_set, const DownwardClosedSet& removed, std::int64_t n);

/// |{beta in M : |beta| = n, g beta = beta}| as a quasipolynomial in n.
FittedQuasipolynomial level_quasipolynomial(const DownwardClosedSet& m, const Permutation& g);

/// Calls f on every beta in Z_{>=0}^k with |beta| = n, in lexicographically decreasing order.
void for_each_composition(int k, int n, const std::function<void(const CountVector&)>& f);

}  // namespace widecount
