#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "widecount/actions.hpp"
#include "widecount/functors.hpp"
#include "widecount/quasipoly.hpp"

namespace widecount {

/// F_q for prime powers q <= 9. Elements are 0..q-1, read as base-p coefficient
/// vectors of a polynomial modulo a fixed Conway polynomial.
class FiniteField {
 public:
  explicit FiniteField(int q);
  /// Shared instance per q.
  static const FiniteField& get(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return f_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int inv(int a) const;
  /// x -> x^(p^power)
  int frobenius(int a, int power = 1) const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * q_ + b); }
  int q_, p_, f_;
  std::vector<int> add_, mul_, neg_, inv_;
};

/// m x n generator matrix in reduced row echelon form with rank m.
struct LinearCode {
  int q = 2;
  int m = 0;
  int n = 0;
  std::vector<std::vector<int>> rows;

  bool operator==(const LinearCode&) const = default;
  auto operator<=>(const LinearCode&) const = default;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

/// Rank of a matrix over F_q; reduces `rows` to RREF in place (zero rows removed).
int row_reduce(const FiniteField& field, std::vector<std::vector<int>>& rows);

/// Row space of `generator`; throws std::invalid_argument unless its rank equals its row count.
LinearCode make_code(int q, std::vector<std::vector<int>> generator);

/// Deletes coordinate `coordinate` (1-based); nullopt when the dimension drops.
std::optional<LinearCode> puncture(const LinearCode& code, int coordinate);

/// Column permutation (new column perm(i) is old column i), column scaling, then Frobenius power.
LinearCode transform_code(const LinearCode& code, const Permutation& perm, const std::vector<int>& scalars,
                          int frobenius_power);

/// P = (F_q^m \ 0)/F_q^* with the zero vector added as index 0; the rest in increasing encoding.
class ProjectiveAlphabet {
 public:
  ProjectiveAlphabet(int q, int m);
  static const ProjectiveAlphabet& get(int q, int m);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<int>& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
  /// Index of the class of a column vector.
  int index_of(const std::vector<int>& column) const;
  /// Index of the class of the standard basis vector e_j.
  int basis_index(int j) const { return index_of(unit(j)); }
  /// Permutations of P induced by GammaL_m(q) = GL_m(q) x| Aut(F_q), one per group element.
  const std::vector<std::vector<int>>& semilinear_action() const;

  int q() const { return q_; }
  int m() const { return m_; }

 private:
  std::vector<int> unit(int j) const;
  int q_, m_;
  std::vector<std::vector<int>> points_;
  std::vector<int> lookup_;  ///< base-q encoding -> index
  mutable std::vector<std::vector<int>> action_;
};

/// Lexicographically least sorted column-class vector over GammaL, as a code in RREF.
/// Equal results iff the codes are equivalent. TooLarge above 10^6 semilinear maps.
LinearCode canonical_code(const LinearCode& code);

/// Equivalence classes of m-dimensional codes of length n by canonical forms over all RREF matrices.
/// TooLarge above `budget` subspaces.
Integer count_codes_direct(int q, int m, int n, std::uint64_t budget = 2'000'000);

/// Orbits of GammaL_m(q) on size-n multisets over P whose support spans, by Burnside with
/// Moebius inclusion-exclusion over subspaces.
Integer count_codes_burnside(int q, int m, int n);

/// Fit over count_codes_burnside for n = 0..n_max. Throws NoFit when the window is too small.
FittedQuasipolynomial codes_quasipolynomial(int q, int m, int n_max = 14, std::size_t max_period = 12);

/// Model functor with s0 = m, k = |P|: sigma places the unit columns, alpha the remaining classes;
/// pairs are equivalent iff their column classes differ by an element of GammaL_m(q).
ModelFunctorPresentation codes_presentation(int q, int m);

}  // namespace widecount
