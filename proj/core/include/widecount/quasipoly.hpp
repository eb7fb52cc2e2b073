#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace widecount {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial with exact rational coefficients, ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;
  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }

  /// Unique interpolant of degree < xs.size() through the points.
  static Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// f(n) = constituent[n mod period](n). Always stored with minimal period.
class Quasipolynomial {
 public:
  Quasipolynomial();
  Quasipolynomial(std::vector<Polynomial> constituents);

  static Quasipolynomial constant(const Rational& c);
  static Quasipolynomial polynomial(const Polynomial& p);

  std::size_t period() const { return constituents_.size(); }
  const std::vector<Polynomial>& constituents() const { return constituents_; }
  const Polynomial& constituent(std::int64_t n) const;
  int degree() const;

  Rational evaluate(std::int64_t n) const;
  Rational operator()(std::int64_t n) const { return evaluate(n); }

  Quasipolynomial operator+(const Quasipolynomial& other) const;
  Quasipolynomial scaled(const Rational& c) const;

  /// Constituents re-expressed over a multiple of the period.
  std::vector<Polynomial> refined(std::size_t new_period) const;

  bool operator==(const Quasipolynomial& other) const { return constituents_ == other.constituents_; }

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Polynomial> constituents_;
};

inline Quasipolynomial add(const Quasipolynomial& a, const Quasipolynomial& b) { return a + b; }
inline Quasipolynomial scale(const Quasipolynomial& a, const Rational& c) { return a.scaled(c); }
/// True iff both describe the same function on all integers (after period alignment).
bool equal_eventually(const Quasipolynomial& a, const Quasipolynomial& b);

/// A quasipolynomial together with the onset from which it was checked.
struct FittedQuasipolynomial {
  Quasipolynomial qp;
  std::int64_t onset = 0;
  std::int64_t validated_lo = 0;
  std::int64_t validated_hi = 0;
};

/// Why a fit failed: the candidate that survived longest before a mismatch.
struct FitWitness {
  std::size_t period = 0;
  int degree = -1;
  std::int64_t onset = 0;
  std::size_t residue = 0;
  std::int64_t n = 0;  ///< first mismatching argument, or the class start if too few points
  std::string detail;
};

class NoFit : public std::runtime_error {
 public:
  explicit NoFit(FitWitness witness);
  const FitWitness& witness() const { return witness_; }

 private:
  FitWitness witness_;
};

using Sequence = std::map<std::int64_t, Integer>;

/// Exact per-residue interpolation with hold-out verification.
/// Searches period, then degree, then onset in ascending order; throws NoFit.
FittedQuasipolynomial fit(const Sequence& seq, std::size_t max_period, int max_degree);

/// Same search, but returns std::nullopt and fills `witness` instead of throwing.
std::optional<FittedQuasipolynomial> try_fit(const Sequence& seq, std::size_t max_period, int max_degree,
                                             FitWitness* witness = nullptr);

// Serialization --------------------------------------------------------------

/// CSV with header `n,count`.
Sequence read_sequence_csv(std::istream& in);
void write_sequence_csv(std::ostream& out, const Sequence& seq);

nlohmann::json to_json(const Quasipolynomial& qp);
nlohmann::json to_json(const FittedQuasipolynomial& fitted);
nlohmann::json to_json(const FitWitness& witness);
FittedQuasipolynomial fitted_from_json(const nlohmann::json& j);

}  // namespace widecount
