#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "widecount/actions.hpp"
#include "widecount/lattice.hpp"
#include "widecount/quasipoly.hpp"

namespace widecount {

// Elementary model functors --------------------------------------------------

/// Words in [k]^S with count vector in M, modulo the letter group G.
struct ElementaryModelFunctor {
  int k = 0;
  PermGroup group = PermGroup::trivial(0);
  DownwardClosedSet countset;

  ElementaryModelFunctor(int k, PermGroup group, DownwardClosedSet countset);
};

/// (1/|G|) sum_g |M_n^g| through cycle contraction and level counting.
Integer elementary_count(const ElementaryModelFunctor& emf, std::int64_t n);
FittedQuasipolynomial elementary_quasipolynomial(const ElementaryModelFunctor& emf);
/// Enumerates [k]^n and deduplicates by canonical form under G x Sym(n). TooLarge above 10^7 words.
Integer elementary_brute(const ElementaryModelFunctor& emf, int n);

// Pairs ----------------------------------------------------------------------

/// A pair (sigma, alpha) on [n] stored as one row: cells[i] < k is the letter
/// alpha(i); cells[i] == k + j marks i == sigma(j).
struct Pair {
  std::vector<int> cells;

  int size() const { return static_cast<int>(cells.size()); }
  bool is_marker(int i, int k) const { return cells[static_cast<std::size_t>(i)] >= k; }
  /// sigma as a vector of positions.
  std::vector<int> sigma(int k, int s0) const;
  CountVector count_vector(int k) const;

  auto operator<=>(const Pair&) const = default;
};

/// Pull-back along an injection pi: [m] -> [n] given by its images; nullopt when im(sigma) is not in im(pi).
std::optional<Pair> restrict_pair(const Pair& p, const std::vector<int>& pi, int k);
/// Sym(n) action: result.cells[perm(i)] = p.cells[i].
Pair permute_pair(const Pair& p, const Permutation& perm);

using EquivalenceOracle = std::function<bool(int n, const Pair&, const Pair&)>;
/// Optional fast enumerator of the full equivalence class of a pair.
using ClassEnumerator = std::function<std::vector<Pair>(int n, const Pair&)>;

/// (S0, k, M, ~) with a black-box equivalence oracle.
struct ModelFunctorPresentation {
  std::string name;
  int s0 = 0;
  int k = 0;
  DownwardClosedSet countset;
  EquivalenceOracle eq;
  ClassEnumerator class_of;  ///< may be empty
  std::string provenance = "user";
};

/// All of F([n]) in increasing order. TooLarge above `budget` pairs.
std::vector<Pair> enumerate_pairs(const ModelFunctorPresentation& pres, int n, std::size_t budget = 1'000'000);
/// The pair with sigma(j) = j and letters ascending afterwards.
Pair representative_pair(const CountVector& beta, int k, int s0);

/// Equivalence classes of F([n]), each sorted, ordered by least element.
std::vector<std::vector<Pair>> mf_classes(const ModelFunctorPresentation& pres, int n, std::size_t budget = 1'000'000);
/// Class of one pair; uses the enumerator when present, else scans F([n]).
std::vector<Pair> class_of(const ModelFunctorPresentation& pres, int n, const Pair& p);

/// Sym(n)-orbits on F([n])/~ by union-find over all pairs. TooLarge for n > 8.
Integer mf_orbit_count_direct(const ModelFunctorPresentation& pres, int n);
/// Same count through the graph on count vectors at level n - s0 whose edges come from classes.
Integer mf_orbit_count_by_count_vectors(const ModelFunctorPresentation& pres, int n);

struct AxiomViolation {
  std::string axiom;
  int n = 0;
  std::string detail;
};

struct AxiomReport {
  bool ok = true;
  std::optional<AxiomViolation> violation;
  std::uint64_t checks = 0;
  nlohmann::json to_json() const;
};

/// Exhaustive check of equivalence-relation properties and Axioms (1)-(3) for all n <= n_max.
AxiomReport verify_axioms(const ModelFunctorPresentation& pres, int n_max);

// Builtins -------------------------------------------------------------------

/// Components of x_j^d = x_l^d: sigma marks the base coordinate, letters are exponents mod d.
ModelFunctorPresentation roots_of_unity_presentation(int d);
/// s0 = 0 and alpha ~ alpha' iff alpha' in G alpha.
ModelFunctorPresentation elementary_presentation(const ElementaryModelFunctor& emf);
/// Negative control: the roots-of-unity relation made asymmetric.
ModelFunctorPresentation broken_asymmetric_presentation(int d);
/// Negative control: words with equal count vectors identified (breaks Axioms (1) and (3)).
ModelFunctorPresentation broken_count_presentation(int k);

// Frequent sets, cores, quintuples -------------------------------------------

/// Frequent set I, infrequent part v0 and threshold t: v = v0 + t 1_I, v~ = v0 + 2t 1_I.
struct Calibration {
  std::vector<int> frequent;  ///< sorted I
  CountVector v0;             ///< full length k, zero on I
  int d = 0;                  ///< |v0|
  int t = 0;

  CountVector v() const;
  CountVector v_tilde() const;
  /// beta in v~ + Z^I.
  bool in_tilde_region(const CountVector& beta) const;
  bool in_region(const CountVector& beta) const;
  nlohmann::json to_json() const;
};

/// Deterministic frequent set and v0 for M; t is the least value making the region exact.
/// Throws std::invalid_argument for empty M.
Calibration initial_calibration(const DownwardClosedSet& m, int s0);

struct Quadruple {
  std::vector<int> J;        ///< sorted frequent letters
  std::vector<int> sigma0;   ///< per S0 element: core index or -1
  std::vector<int> sigma1;   ///< per S0 element: letter of J or -1
  std::vector<int> alpha_bar;  ///< per core index: letter outside J or -1 on sigma

  auto operator<=>(const Quadruple&) const = default;
  int core_size() const { return static_cast<int>(alpha_bar.size()); }
  Quadruple relabeled(const Permutation& pi) const;  ///< Sym([e]) action
  Quadruple canonical() const;                       ///< least Sym([e]) image
  nlohmann::json to_json() const;
};

struct Quintuple {
  Quadruple quad;
  CountVector u;  ///< counts of tau, indexed like quad.J
  std::vector<int> core;  ///< core positions in [n], sorted
  std::vector<int> tau;   ///< per position: letter of J, -1 on the core

  nlohmann::json to_json() const;
};

/// Quintuple of a pair whose class meets v~ + Z^I (or v + Z^I). NotCalibrated otherwise; Unstable
/// if the class violates the structure the counting relies on.
Quintuple analyze_pair(const ModelFunctorPresentation& pres, int n, const Pair& pair, const Calibration& cal);

/// Objects are quadruples with core [e]; arrow labels are the bijections J -> J'.
struct ExtractedGroupoid {
  std::vector<Quadruple> objects;
  struct ArrowData {
    std::size_t src, dst;
    std::vector<int> map;  ///< map[i] = letter of dst.J hit by src.J[i]
    bool operator==(const ArrowData&) const = default;
  };
  std::vector<ArrowData> arrows;
  std::vector<Quintuple> carrier;  ///< observed quintuples, tau forgotten
  std::optional<Groupoid> groupoid;
  std::optional<GroupoidAction> action;

  bool same_structure(const ExtractedGroupoid& other) const;
  nlohmann::json to_json() const;
};

/// Groupoid on quadruples from the classes at levels |v~| and |v~|+1, validated by the action checkers.
ExtractedGroupoid extract_groupoid(const ModelFunctorPresentation& pres, int e, const Calibration& cal);

/// Least t >= the initial one with identical extractions at t and t+1 for every core size.
Calibration calibrate(const ModelFunctorPresentation& pres, int max_steps = 4);

struct GroupoidCountTrace {
  struct Step {
    DownwardClosedSet countset;
    std::optional<Calibration> calibration;
    std::string route;  ///< "groupoid", "count-vectors" or "empty"
    Integer contribution;
  };
  std::vector<Step> steps;
  nlohmann::json to_json() const;
};

/// Dickson recursion: sub-model functor by induction plus groupoid Burnside sums for the rest.
Integer mf_count_via_groupoid(const ModelFunctorPresentation& pres, int n, GroupoidCountTrace* trace = nullptr);

// Pre-component functors -----------------------------------------------------

using QuasiOrderOracle = std::function<bool(int n, int b, const Pair&, int b2, const Pair&)>;

struct PreComponentPresentation {
  std::string name;
  std::vector<ModelFunctorPresentation> parts;  ///< index b = 0 .. a-1
  QuasiOrderOracle preceq;
};

struct PreComponentCount {
  Integer orbits;
  Integer maximal_classes;
};

PreComponentCount precomp_count(const PreComponentPresentation& pc, int n);
AxiomReport verify_compatibility(const PreComponentPresentation& pc, int n_max);
FittedQuasipolynomial precomp_quasipolynomial(const PreComponentPresentation& pc, int n_lo, int n_hi,
                                              std::size_t max_period, int max_degree);

/// Coordinate subspaces of dimension <= 2 ordered by inclusion; maximal ones are the planes.
PreComponentPresentation planes_presentation();
/// Negative control: the planes quasi-order with the part indices reversed.
PreComponentPresentation broken_planes_presentation();

}  // namespace widecount
