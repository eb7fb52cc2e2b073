#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "widecount/quasipoly.hpp"

namespace widecount {

struct ComponentCount {
  Integer components;
  Integer orbits;
};

// Coordinate planes: x_i x_j x_l = 0 for distinct i, j, l.

/// Through the pre-component functor of points, lines and planes.
ComponentCount planes_orbit_count(int n);
/// Minimal vertex covers of the 3-uniform complete hypergraph by subset enumeration (n <= 20).
ComponentCount planes_brute(int n);

// d-th roots of unity coordinatewise.

/// binom(n+d-1, d-1) orbits and d^n components.
ComponentCount points_orbit_count(int d, int n);
/// Sym(n)-orbits on [d]^n by elementary_brute.
Integer points_brute(int d, int n);

// x_i^2 = t: unordered two-part partitions.

Integer galois_orbit_count(int n);
/// Union-find over subsets of [n] under Sym(n) and complementation (n <= 20).
Integer galois_brute(int n);

// x_i^d = x_j^d: rotation classes of ordered partitions.

/// (1/d) sum over e in Z/d with (d/gcd(d,e)) | n of binom(n/(d/f) + f - 1, f - 1), f = gcd(d,e).
Integer cube_orbit_count(int d, int n);
/// Z/d-rotation orbits on compositions of n into d parts.
Integer cube_brute(int d, int n);
/// The roots-of-unity model functor counted through groupoids.
Integer cube_via_groupoid(int d, int n);

// Fixed-rank matrices under simultaneous row and column permutation.

enum class MatrixShape { General, Symmetric };

/// Exact rank over Q; orbits by least image under Sym(n). TooLarge above 10^8 matrices.
Integer fixed_rank_orbit_count(const std::vector<Rational>& entries, int k, int n, MatrixShape shape);
/// 1, n and 2 floor(n/2) ceil(n/2) + binom(n,2) for k = 0, 1, 2 with entries {0,1}; -1 otherwise.
Integer symmetric01_formula(int k, int n);

// Trees: a width-two contrast.

struct TreeCount {
  Integer labeled;
  Integer orbits;
};

/// Labeled count n^(n-2); orbits by rooted canonical codes over Pruefer sequences.
/// Full labeled enumeration for n <= 8, else the orbit search uses non-increasing degree labelings.
TreeCount tree_orbit_count(int n);
/// Sequence of tree orbit counts for n = 0..n_max.
Sequence tree_orbit_sequence(int n_max);

/// Names accepted by the example registry.
const std::vector<std::string>& example_names();

}  // namespace widecount
