#include <random>
#include <sstream>

#include "doctest.h"
#include "widecount/quasipoly.hpp"

using namespace widecount;

namespace {

// Integer-valued on n >= 0: integer combinations of binomials n choose j.
Quasipolynomial random_qp(std::mt19937_64& rng, std::size_t period, int degree) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::vector<Polynomial> parts;
  for (std::size_t r = 0; r < period; ++r) {
    Polynomial p;
    Polynomial falling = Polynomial::constant(1);
    for (int j = 0; j <= degree; ++j) {
      p = p + falling * Rational(coef(rng));
      std::vector<Rational> shift{Rational(-j, j + 1), Rational(1, j + 1)};
      shift[0].canonicalize();
      // falling * (n - j) / (j + 1)
      std::vector<Rational> next(falling.coefficients().size() + 1);
      for (std::size_t i = 0; i < falling.coefficients().size(); ++i) {
        next[i] += falling.coefficients()[i] * shift[0];
        next[i + 1] += falling.coefficients()[i] * shift[1];
      }
      falling = Polynomial(next);
    }
    parts.push_back(p);
  }
  return Quasipolynomial(parts);
}

}  // namespace

TEST_SUITE("quasipoly") {
  TEST_CASE("polynomial basics") {
    Polynomial p({Rational(1), Rational(0), Rational(1, 2)});
    CHECK(p.degree() == 2);
    CHECK(p(Rational(2)) == 3);
    CHECK(Polynomial({Rational(0), Rational(0)}).is_zero());
    auto q = Polynomial::interpolate({0, 1, 2}, {1, 2, 5});
    CHECK(q == Polynomial({Rational(1), Rational(0), Rational(1)}));
  }

  TEST_CASE("minimal period normalization") {
    Polynomial a({Rational(1), Rational(1)});
    Quasipolynomial qp({a, a, a});
    CHECK(qp.period() == 1);
    CHECK(qp(7) == 8);
    Quasipolynomial alt({Polynomial::constant(1), Polynomial::constant(0)});
    CHECK(alt.period() == 2);
    CHECK(alt(3) == 0);
    CHECK(alt(-2) == 1);
    CHECK(equal_eventually(alt + alt, alt.scaled(2)));
  }

  TEST_CASE("floor(n/2)+1 fits with period 2") {
    Sequence s;
    for (int n = 0; n <= 20; ++n) s[n] = n / 2 + 1;
    auto f = fit(s, 6, 3);
    CHECK(f.qp.period() == 2);
    CHECK(f.qp.degree() == 1);
    for (int n = 0; n <= 40; ++n) CHECK(f.qp(n) == n / 2 + 1);
  }

  TEST_CASE("round trip on random quasipolynomials") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t period = 1 + rng() % 6;
      const int degree = static_cast<int>(rng() % 5);
      const auto qp = random_qp(rng, period, degree);
      Sequence s;
      for (int n = 0; n < 60; ++n) {
        const Rational v = qp(n);
        REQUIRE(v.get_den() == 1);
        s[n] = v.get_num();
      }
      const auto f = fit(s, 6, 4);
      CHECK(equal_eventually(f.qp, qp));
      // Nothing in the checked range may disagree.
      for (auto [n, v] : s)
        if (n >= f.onset) CHECK(f.qp(n) == Rational(v));
    }
  }

  TEST_CASE("NoFit carries a witness") {
    Sequence s;
    Integer x = 1;
    for (int n = 0; n <= 12; ++n, x *= 2) s[n] = x;
    FitWitness w;
    CHECK_FALSE(try_fit(s, 3, 3, &w).has_value());
    CHECK(w.period >= 1);
    CHECK_THROWS_AS(fit(s, 3, 3), NoFit);
  }

  TEST_CASE("too few points is NoFit, not a guess") {
    Sequence s{{0, 1}, {1, 2}, {2, 3}};
    CHECK_FALSE(try_fit(s, 2, 2).has_value());
  }

  TEST_CASE("a late mismatch is never hidden") {
    Sequence s;
    for (int n = 0; n <= 30; ++n) s[n] = n;
    s[30] = 31;
    auto f = try_fit(s, 1, 2);
    if (f) {
      for (auto [n, v] : s)
        if (n >= f->onset) CHECK(f->qp(n) == Rational(v));
    }
  }

  TEST_CASE("csv and json round trip") {
    Sequence s{{0, 1}, {1, 1}, {2, Integer("123456789012345678901234567890")}};
    std::stringstream ss;
    write_sequence_csv(ss, s);
    CHECK(ss.str().rfind("n,count\n", 0) == 0);
    CHECK(read_sequence_csv(ss) == s);

    Sequence t;
    for (int n = 0; n <= 20; ++n) t[n] = (n * n) / 3;
    auto f = fit(t, 6, 2);
    auto j = to_json(f);
    CHECK(j.contains("period"));
    CHECK(j.contains("constituents"));
    CHECK(j.contains("onset"));
    CHECK(j["constituents"][0][0].is_array());
    auto back = fitted_from_json(j);
    CHECK(back.qp == f.qp);
    CHECK(back.onset == f.onset);
  }
}
