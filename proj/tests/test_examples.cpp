// Worked examples with known answers, one block per module.

#include <algorithm>
#include <set>

#include "doctest.h"
#include "widecount/actions.hpp"
#include "widecount/codes.hpp"
#include "widecount/errors.hpp"
#include "widecount/functors.hpp"
#include "widecount/gallery.hpp"
#include "widecount/lattice.hpp"
#include "widecount/quasipoly.hpp"

using namespace widecount;

namespace {

Polynomial poly(std::vector<Rational> c) { return Polynomial(std::move(c)); }

const Quasipolynomial galois_qp() {
  return Quasipolynomial({poly({1, Rational(1, 2)}), poly({Rational(1, 2), Rational(1, 2)})});
}

Sequence seq_of(std::int64_t lo, const std::vector<int>& v) {
  Sequence s;
  for (std::size_t i = 0; i < v.size(); ++i) s[lo + static_cast<std::int64_t>(i)] = v[i];
  return s;
}

}  // namespace

TEST_SUITE("quasipoly") {
  TEST_CASE("examples: evaluation and arithmetic") {
    CHECK(galois_qp()(5) == 3);
    CHECK(Quasipolynomial::constant(1)(100) == 1);
    CHECK(Quasipolynomial()(17) == 0);
    const Quasipolynomial ceil_half({poly({0, Rational(1, 2)}), poly({Rational(1, 2), Rational(1, 2)})});
    CHECK(add(galois_qp(), ceil_half) == Quasipolynomial::polynomial(poly({1, 1})));
    CHECK(scale(Quasipolynomial::constant(1), 3) == Quasipolynomial::constant(3));
    const auto p = galois_qp();
    CHECK(equal_eventually(p, Quasipolynomial(p.refined(4))));
  }

  TEST_CASE("examples: fitting") {
    const auto a = fit(seq_of(0, {1, 1, 2, 2, 3, 3, 4, 4, 5, 5}), 4, 2);
    CHECK(a.qp.period() == 2);
    CHECK(a.onset == 0);
    CHECK(a.qp.constituents()[0] == poly({1, Rational(1, 2)}));
    CHECK(a.qp.constituents()[1] == poly({Rational(1, 2), Rational(1, 2)}));
    const auto b = fit(seq_of(0, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), 4, 2);
    CHECK(b.qp.period() == 1);
    CHECK(b.qp.degree() == 1);
    CHECK_THROWS_AS(fit(seq_of(1, {1, 1, 1, 1, 2, 3, 6, 11, 23, 47}), 6, 6), NoFit);
  }
}

TEST_SUITE("actions") {
  TEST_CASE("examples: group and groupoid counts") {
    // {11,12,21,22} as two bits, coordinates swapped.
    auto swap_act = [](const Permutation& g, std::size_t x) {
      std::size_t y = 0;
      for (int i = 0; i < 2; ++i)
        if (x >> i & 1) y |= std::size_t{1} << g(i);
      return y;
    };
    CHECK(group_orbit_count(PermGroup::symmetric(2), 4, swap_act) == 3);

    std::vector<std::vector<int>> comps;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) comps.push_back({a, b, 3 - a - b});
    REQUIRE(comps.size() == 10);
    auto rot = [&](const Permutation& g, std::size_t x) {
      const auto y = permute_positions(comps[x], g);
      return static_cast<std::size_t>(std::find(comps.begin(), comps.end(), y) - comps.begin());
    };
    CHECK(group_orbit_count(PermGroup::cyclic(3), 10, rot) == 4);
    CHECK(group_orbit_count(PermGroup::trivial(3), 10, rot) == 10);

    // Compositions of 4 into 2 parts under the swap, as a one-object groupoid.
    const auto z2 = PermGroup::symmetric(2);
    const auto g1 = Groupoid::from_group(z2);
    GroupoidAction a1(g1, std::vector<std::size_t>(5, 0), [](std::size_t a, std::size_t x) { return a == 0 ? x : 4 - x; });
    CHECK(groupoid_orbit_count(g1, a1) == 3);

    // p -> q by a single arrow: X_p = {a, b}, X_q = {c, d}.
    std::vector<Arrow> arrows{{0, 0, "1p"}, {1, 1, "1q"}, {0, 1, "f"}, {1, 0, "f^-1"}};
    auto compose = [](std::size_t h, std::size_t g) -> std::size_t {
      if (h == 0 || h == 1) return g;
      if (g == 0 || g == 1) return h;
      return h == 2 ? 1 : 0;  // f o f^-1 = 1q, f^-1 o f = 1p
    };
    const Groupoid g2(2, arrows, compose);
    GroupoidAction a2(g2, {0, 0, 1, 1}, [](std::size_t arrow, std::size_t x) {
      if (arrow <= 1) return x;
      return arrow == 2 ? x + 2 : x - 2;
    });
    CHECK(groupoid_orbit_count(g2, a2) == 2);
    GroupoidAction empty(g2, {}, [](std::size_t, std::size_t x) { return x; });
    CHECK(groupoid_orbit_count(g2, empty) == 0);
  }

  TEST_CASE("examples: canonical forms") {
    const auto s3 = PermGroup::symmetric(3), s2 = PermGroup::symmetric(2), s4 = PermGroup::symmetric(4);
    CHECK(canonical_form({1, 0, 1}, &s3, nullptr) == std::vector<int>{0, 1, 1});
    CHECK(canonical_form({0, 1}, &s2, &s2) == std::vector<int>{0, 1});
    CHECK(canonical_form({2, 0, 2, 1}, &s4, &s3) == std::vector<int>{0, 0, 1, 2});
  }
}

TEST_SUITE("lattice") {
  TEST_CASE("examples: membership and decomposition") {
    CHECK(DownwardClosedSet::full(2).contains({4, 9}));
    const DownwardClosedSet a(2, {{2, 0}});
    CHECK(a.contains({1, 5}));
    CHECK_FALSE(a.contains({2, 0}));
    CHECK(DownwardClosedSet(3, {{1, 1, 1}}).contains({0, 7, 7}));

    CHECK(stanley_decompose(DownwardClosedSet::full(2)) == std::vector<StanleyPiece>{{{0, 0}, {0, 1}}});
    CHECK(stanley_decompose(a) == std::vector<StanleyPiece>{{{0, 0}, {1}}, {{1, 0}, {1}}});
    CHECK(stanley_decompose(DownwardClosedSet(2, {{1, 1}})) == std::vector<StanleyPiece>{{{0, 0}, {0}}, {{0, 1}, {1}}});
  }

  TEST_CASE("examples: contraction and level counts") {
    const auto swap = Permutation::parse("(1 2)", 2);
    const auto full = cycle_contract(DownwardClosedSet::full(2), swap);
    CHECK(full.weights == std::vector<int>{2});
    CHECK(full.feasible.is_full());
    const auto id3 = cycle_contract(DownwardClosedSet::full(3), Permutation::identity(3));
    CHECK(id3.weights == std::vector<int>{1, 1, 1});
    const auto c = cycle_contract(DownwardClosedSet(2, {{2, 1}}), swap);
    CHECK(c.feasible.obstructions() == std::vector<CountVector>{{2}});

    CHECK(count_level({{1, 2}, DownwardClosedSet::full(2)}, 5) == 3);
    CHECK(count_level({{1, 1, 1}, DownwardClosedSet::full(3)}, 7) == 36);
    CHECK(count_level({{2}, DownwardClosedSet(1, {{2}})}, 2) == 1);

    const auto three = level_quasipolynomial(DownwardClosedSet::full(3), Permutation::parse("(1 2 3)", 3));
    CHECK(three.qp.period() == 3);
    for (int n = 0; n <= 30; ++n) CHECK(three.qp(n) == (n % 3 == 0 ? 1 : 0));
  }
}

TEST_SUITE("functors") {
  TEST_CASE("examples: elementary counts") {
    CHECK(elementary_count(ElementaryModelFunctor(3, PermGroup::trivial(3), DownwardClosedSet::full(3)), 5) == 21);
    CHECK(elementary_count(ElementaryModelFunctor(2, PermGroup::symmetric(2), DownwardClosedSet::full(2)), 7) == 4);
    CHECK(elementary_count(ElementaryModelFunctor(2, PermGroup::trivial(2), DownwardClosedSet(2, {{3, 0}})), 10) == 3);
    const auto pts = elementary_quasipolynomial(ElementaryModelFunctor(3, PermGroup::trivial(3), DownwardClosedSet::full(3)));
    CHECK(pts.qp.period() == 1);
    CHECK(pts.qp(10) == 66);
    const auto none = elementary_quasipolynomial(ElementaryModelFunctor(2, PermGroup::trivial(2), DownwardClosedSet::empty(2)));
    CHECK(none.qp == Quasipolynomial());
  }

  TEST_CASE("examples: classes and direct counts") {
    const auto r2 = roots_of_unity_presentation(2);
    CHECK(enumerate_pairs(r2, 2).size() == 4);
    CHECK(mf_classes(r2, 2).size() == 2);
    CHECK(mf_classes(r2, 0).empty());
    CHECK(mf_orbit_count_direct(roots_of_unity_presentation(3), 3) == 4);
    CHECK(mf_orbit_count_direct(r2, 4) == 3);
    const ElementaryModelFunctor emf(3, PermGroup::cyclic(3), DownwardClosedSet::full(3));
    const auto ep = elementary_presentation(emf);
    for (int n = 0; n <= 5; ++n) {
      CHECK(mf_orbit_count_direct(ep, n) == elementary_count(emf, n));
      // Classes are the G-orbits of words.
      for (const auto& cls : mf_classes(ep, n)) {
        std::set<Pair> orbit;
        for (const auto& g : emf.group.elements()) {
          Pair img = cls.front();
          for (auto& c : img.cells) c = g(c);
          orbit.insert(img);
        }
        CHECK(std::vector<Pair>(orbit.begin(), orbit.end()) == cls);
      }
    }
  }

  TEST_CASE("examples: pre-component reductions") {
    const auto r3 = roots_of_unity_presentation(3);
    PreComponentPresentation single{"single", {r3}, [r3](int n, int, const Pair& a, int, const Pair& b) { return r3.eq(n, a, b); }};
    for (int n = 0; n <= 5; ++n) {
      CHECK(precomp_count(single, n).orbits == mf_orbit_count_direct(r3, n));
      CHECK(precomp_count(single, n).maximal_classes == Integer(static_cast<unsigned long>(mf_classes(r3, n).size())));
    }
    // Two copies of a one-point functor, the first dominated by the second.
    const auto point = elementary_presentation(ElementaryModelFunctor(1, PermGroup::trivial(1), DownwardClosedSet::full(1)));
    PreComponentPresentation dom{"dominated", {point, point}, [](int, int b, const Pair&, int b2, const Pair&) { return b <= b2; }};
    CHECK(verify_compatibility(dom, 4).ok);
    for (int n = 0; n <= 5; ++n) CHECK(precomp_count(dom, n).orbits == 1);
    for (int n = 2; n <= 8; ++n) CHECK(precomp_count(planes_presentation(), n).orbits == 1);
  }
}

TEST_SUITE("groupoid") {
  TEST_CASE("examples: cores and quintuples") {
    const auto r2 = roots_of_unity_presentation(2);
    const auto cal = calibrate(r2);
    const int n = 2 * cal.t + 5;
    int analyzed = 0;
    for (const auto& cls : mf_classes(r2, n)) {
      bool tilde = false;
      for (const auto& p : cls) tilde = tilde || cal.in_tilde_region(p.count_vector(r2.k));
      if (!tilde) continue;
      const auto q = analyze_pair(r2, n, cls.front(), cal);
      CHECK(q.core.empty());
      CHECK(q.quad.J == std::vector<int>{0, 1});
      CHECK(q.quad.sigma0 == std::vector<int>{-1});
      CHECK(q.quad.sigma1 == std::vector<int>{0});  // the base exponent, d mod d
      ++analyzed;
    }
    CHECK(analyzed > 0);
    // All letters equal: no member reaches the calibrated region.
    Pair flat{std::vector<int>(static_cast<std::size_t>(n - 1), 0)};
    flat.cells.push_back(r2.k);
    CHECK_THROWS_AS(analyze_pair(r2, n, flat, cal), NotCalibrated);
  }

  TEST_CASE("examples: elementary cores are the infrequent positions") {
    const auto ep = elementary_presentation(ElementaryModelFunctor(2, PermGroup::trivial(2), DownwardClosedSet(2, {{0, 2}})));
    const auto cal = calibrate(ep);
    REQUIRE(cal.frequent == std::vector<int>{0});
    const int n = 2 * cal.t + 3;
    for (const auto& cls : mf_classes(ep, n)) {
      const auto& p = cls.front();
      if (!cal.in_region(p.count_vector(2))) continue;
      const auto q = analyze_pair(ep, n, p, cal);
      std::vector<int> rare;
      for (int i = 0; i < n; ++i)
        if (p.cells[static_cast<std::size_t>(i)] == 1) rare.push_back(i);
      CHECK(q.core == rare);
    }
  }

  TEST_CASE("examples: extracted groupoids") {
    const auto r3 = roots_of_unity_presentation(3);
    const auto ex = extract_groupoid(r3, 0, calibrate(r3));
    REQUIRE(ex.groupoid.has_value());
    // Composition is addition mod 3 on the letter shifts.
    for (std::size_t a = 0; a < ex.arrows.size(); ++a)
      for (std::size_t b = 0; b < ex.arrows.size(); ++b) {
        const auto c = ex.groupoid->compose(a, b);
        for (std::size_t i = 0; i < 3; ++i)
          CHECK(ex.arrows[c].map[i] == ex.arrows[a].map[static_cast<std::size_t>(ex.arrows[b].map[i])]);
      }
    // Equality as the relation: only identity arrows.
    auto plain = elementary_presentation(ElementaryModelFunctor(2, PermGroup::trivial(2), DownwardClosedSet::full(2)));
    const auto cal = calibrate(plain);
    for (int e = 0; e <= cal.d; ++e) {
      const auto x = extract_groupoid(plain, e, cal);
      CHECK(x.arrows.size() == x.objects.size());
    }
  }

  TEST_CASE("examples: groupoid counts") {
    CHECK(mf_count_via_groupoid(roots_of_unity_presentation(3), 9) == 19);
    for (int n = 0; n <= 14; ++n) CHECK(mf_count_via_groupoid(roots_of_unity_presentation(2), n) == (n == 0 ? 0 : n / 2 + 1));
    auto none = roots_of_unity_presentation(2);
    none.countset = DownwardClosedSet::empty(2);
    CHECK(mf_count_via_groupoid(none, 5) == 0);
  }
}

TEST_SUITE("gallery") {
  TEST_CASE("examples: symmetric ranks") {
    const std::vector<Rational> e{0, 1};
    CHECK(fixed_rank_orbit_count(e, 2, 4, MatrixShape::Symmetric) == 14);
    CHECK(fixed_rank_orbit_count(e, 1, 5, MatrixShape::Symmetric) == 5);
    for (int n = 0; n <= 5; ++n) CHECK(fixed_rank_orbit_count(e, 0, n, MatrixShape::Symmetric) == 1);
    CHECK(cube_orbit_count(3, 3) == 4);
  }
}

TEST_SUITE("codes") {
  TEST_CASE("examples: puncturing") {
    const auto a = puncture(make_code(2, {{1, 0, 1}, {0, 1, 1}}), 3);
    REQUIRE(a);
    CHECK(*a == make_code(2, {{1, 0}, {0, 1}}));
    const auto b = puncture(make_code(2, {{1, 1}}), 2);
    REQUIRE(b);
    CHECK(*b == make_code(2, {{1}}));
    CHECK_FALSE(puncture(make_code(2, {{1, 0}}), 1).has_value());
  }

  TEST_CASE("examples: canonical codes") {
    const auto whole = canonical_code(make_code(3, {{1, 2, 0}, {0, 1, 1}, {1, 1, 1}}));
    CHECK(whole.rows == std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(canonical_code(make_code(2, {{1, 1, 0}})) == canonical_code(make_code(2, {{0, 1, 1}})));
    // In F_4, omega is the class of x (2) and omega^2 = x + 1 (3).
    CHECK(canonical_code(make_code(4, {{1, 2}})) == canonical_code(make_code(4, {{1, 3}})));
    CHECK(FiniteField::get(4).mul(2, 2) == 3);
  }

  TEST_CASE("examples: counts") {
    CHECK(count_codes_direct(2, 2, 2) == 1);
    CHECK(count_codes_direct(2, 2, 3) == 3);
    CHECK(count_codes_direct(2, 1, 4) == 4);
  }
}
