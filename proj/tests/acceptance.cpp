// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>

#include "builtins.hpp"
#include "oracles.hpp"
#include "random_actions.hpp"
#include "widecount/codes.hpp"
#include "widecount/errors.hpp"
#include "widecount/functors.hpp"
#include "widecount/gallery.hpp"
#include "widecount/lattice.hpp"
#include "widecount/quasipoly.hpp"

using namespace widecount;

namespace {

int failures = 0;

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer big(std::uint64_t x) { return Integer(static_cast<unsigned long>(x)); }

/// Runs body; it returns an empty string on success or the first witness.
void criterion(const std::string& id, const std::string& what, double budget_s,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string witness;
  try {
    witness = body();
  } catch (const std::exception& ex) {
    witness = std::string("exception: ") + ex.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (witness.empty() && secs > budget_s) witness = "over time budget";
  const bool ok = witness.empty();
  if (!ok) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << what << " (" << t << ", budget " << budget_s << "s)";
  if (!ok) std::cout << ": " << witness;
  std::cout << std::endl;
}

std::string mismatch(const std::string& where, const Integer& got, const Integer& want) {
  return where + ": got " + got.get_str() + ", expected " + want.get_str();
}

}  // namespace

int main() {
  criterion("1.points", "binom(n+d-1,d-1) for d<=5, n<=20; brute force for n<=8", 10, [] {
    for (int d = 1; d <= 5; ++d)
      for (int n = 0; n <= 20; ++n) {
        const auto c = points_orbit_count(d, n);
        const auto want = binom(n + d - 1, d - 1);
        const std::string at = "d=" + std::to_string(d) + " n=" + std::to_string(n);
        if (c.orbits != want) return mismatch(at, c.orbits, want);
        // The direct Burnside count through the library too.
        const ElementaryModelFunctor emf(d, PermGroup::trivial(d), DownwardClosedSet::full(d));
        if (elementary_count(emf, n) != want) return mismatch(at + " elementary_count", elementary_count(emf, n), want);
        if (n <= 8 && points_brute(d, n) != want) return mismatch(at + " brute", points_brute(d, n), want);
      }
    return std::string();
  });

  criterion("1.galois", "floor(n/2)+1 for 0<=n<=20 via elementary_count with Sym(2)", 1, [] {
    const ElementaryModelFunctor emf(2, PermGroup::symmetric(2), DownwardClosedSet::full(2));
    for (int n = 0; n <= 20; ++n)
      if (elementary_count(emf, n) != n / 2 + 1) return mismatch("n=" + std::to_string(n), elementary_count(emf, n), n / 2 + 1);
    return std::string();
  });

  criterion("1.cube", "gcd-sum formula vs rotation brute force (d<=6, n<=20) and vs groupoid count (d<=4, 1<=n<=12)", 60, [] {
    for (int d = 1; d <= 6; ++d)
      for (int n = 0; n <= 20; ++n) {
        const auto f = cube_orbit_count(d, n);
        const auto want = big(oracle::cube_rotation_classes(d, n));
        if (f != want) return mismatch("d=" + std::to_string(d) + " n=" + std::to_string(n), f, want);
      }
    for (int d = 1; d <= 4; ++d) {
      const auto pres = roots_of_unity_presentation(d);
      for (int n = 1; n <= 12; ++n) {
        const auto g = mf_count_via_groupoid(pres, n);
        if (g != cube_orbit_count(d, n))
          return mismatch("groupoid d=" + std::to_string(d) + " n=" + std::to_string(n), g, cube_orbit_count(d, n));
      }
    }
    return std::string();
  });

  criterion("1.planes", "one orbit and binom(n,2) components for 3<=n<=30", 1, [] {
    for (int n = 3; n <= 30; ++n) {
      const auto c = planes_orbit_count(n);
      if (c.orbits != 1) return mismatch("orbits n=" + std::to_string(n), c.orbits, 1);
      if (c.components != binom(n, 2)) return mismatch("components n=" + std::to_string(n), c.components, binom(n, 2));
    }
    return std::string();
  });

  criterion("1.ranks", "symmetric {0,1} rank counts for k=0,1,2 match enumeration for n<=6", 120, [] {
    const std::vector<Rational> e01{0, 1};
    for (int n = 0; n <= 6; ++n)
      for (int k = 0; k <= std::min(2, n); ++k) {
        const auto got = fixed_rank_orbit_count(e01, k, n, MatrixShape::Symmetric);
        const auto want = symmetric01_formula(k, n);
        if (got != want) return mismatch("k=" + std::to_string(k) + " n=" + std::to_string(n), got, want);
        if (n <= 4 && got != big(oracle::rank_orbits(e01, k, n, true)))
          return mismatch("rational oracle k=" + std::to_string(k) + " n=" + std::to_string(n), got,
                          big(oracle::rank_orbits(e01, k, n, true)));
      }
    return std::string();
  });

  criterion("2.extraction", "roots-of-unity groupoid is Z/d for d in {2,3,4}", 30, [] {
    for (int d = 2; d <= 4; ++d) {
      const auto pres = roots_of_unity_presentation(d);
      const auto ex = extract_groupoid(pres, 0, calibrate(pres));
      const std::string at = "d=" + std::to_string(d);
      if (!ex.groupoid) return at + ": not validated";
      const auto& g = *ex.groupoid;
      if (g.num_objects() != 1) return at + ": " + std::to_string(g.num_objects()) + " objects";
      if (g.num_arrows() != static_cast<std::size_t>(d)) return at + ": " + std::to_string(g.num_arrows()) + " arrows";
      bool cyclic = false;
      for (std::size_t a = 0; a < g.num_arrows() && !cyclic; ++a) {
        std::set<std::size_t> seen;
        std::size_t x = g.identity(0);
        for (int i = 0; i < d; ++i, x = g.compose(a, x)) seen.insert(x);
        cyclic = seen.size() == static_cast<std::size_t>(d);
      }
      if (!cyclic) return at + ": no generating arrow";
    }
    return std::string();
  });

  criterion("2.actions", "groupoid Burnside equals union-find on 200 random actions", 30, [] {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      auto ra = testkit::make_random_action(rng);
      const auto blocks = groupoid_orbits_enumerate(*ra.groupoid, *ra.action);
      const auto c = groupoid_orbit_count(*ra.groupoid, *ra.action);
      if (c != big(blocks.size())) return mismatch("trial " + std::to_string(trial), c, big(blocks.size()));
    }
    return std::string();
  });

  criterion("3.stanley", "50 random sets: pieces disjoint, covering, level counts exact for n<=12", 60, [] {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = 1 + static_cast<int>(rng() % 4);
      const auto m = oracle::random_countset(rng, k, 4, 4);
      const auto pieces = stanley_decompose(m);
      for (int n = 0; n <= 12; ++n) {
        std::uint64_t direct = 0;
        for (const auto& b : oracle::compositions(k, n)) {
          int hits = 0;
          for (const auto& p : pieces) hits += p.contains(b) ? 1 : 0;
          if (hits != (m.contains(b) ? 1 : 0)) return "trial " + std::to_string(trial) + ": vector covered " + std::to_string(hits) + " times";
          direct += m.contains(b) ? 1 : 0;
        }
        const auto c = count_level({std::vector<int>(static_cast<std::size_t>(k), 1), m}, n);
        if (c != big(direct)) return mismatch("trial " + std::to_string(trial) + " n=" + std::to_string(n), c, big(direct));
      }
    }
    return std::string();
  });

  criterion("3.contraction", "fixed-point counts for all g in Sym(k), n<=12", 60, [] {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const int k = 1 + static_cast<int>(rng() % 4);
      const auto m = oracle::random_countset(rng, k, 4, 4);
      const auto sym = PermGroup::symmetric(k);
      for (const auto& g : sym.elements()) {
        const LevelCounter counter(cycle_contract(m, g));
        for (int n = 0; n <= 12; ++n) {
          const auto want = big(oracle::fixed_level_count(m, g, n));
          if (counter.count(n) != want) return mismatch("trial " + std::to_string(trial) + " g=" + g.to_string() + " n=" + std::to_string(n), counter.count(n), want);
        }
      }
    }
    return std::string();
  });

  criterion("4.codes-grid", "direct == Burnside for q in {2,3}, m in {1,2}, 2<=n<=6", 120, [] {
    for (int q : {2, 3})
      for (int m = 1; m <= 2; ++m)
        for (int n = 2; n <= 6; ++n) {
          const auto a = count_codes_direct(q, m, n), b = count_codes_burnside(q, m, n);
          if (a != b) return mismatch("q=" + std::to_string(q) + " m=" + std::to_string(m) + " n=" + std::to_string(n), a, b);
        }
    return std::string();
  });

  criterion("4.codes-q2m2n3", "q=2, m=2, n=3 gives 3", 5, [] {
    const auto a = count_codes_direct(2, 2, 3);
    return a == 3 ? std::string() : mismatch("direct", a, 3);
  });

  criterion("4.codes-fit", "fit of q=2, m=1 on n<=9 predicts n=10..14", 120, [] {
    const auto f = codes_quasipolynomial(2, 1, 9);
    for (int n = 10; n <= 14; ++n) {
      const auto want = count_codes_direct(2, 1, n);
      if (f.qp(n) != Rational(want)) return "n=" + std::to_string(n) + ": predicted " + f.qp(n).get_str() + ", counted " + want.get_str();
    }
    return std::string();
  });

  criterion("5.trees", "fit on unlabeled tree counts for n<=10 is NoFit", 60, [] {
    const auto seq = tree_orbit_sequence(10);
    for (int n = 0; n <= 7; ++n)
      if (seq.at(n) != big(oracle::unlabeled_trees(n))) return mismatch("n=" + std::to_string(n), seq.at(n), big(oracle::unlabeled_trees(n)));
    try {
      const auto f = fit(seq, 6, 4);
      return "unexpected fit with period " + std::to_string(f.qp.period());
    } catch (const NoFit&) {
      return std::string();
    }
  });

  criterion("6.properties", "unit property suites with fixed seeds", 1200, [] {
    const std::string cmd = std::string("\"") + WIDECOUNT_UNIT_TESTS + "\" --minimal";
    const int rc = std::system(cmd.c_str());
    return rc == 0 ? std::string() : "unit suites exited with status " + std::to_string(rc);
  });

  criterion("6.axioms", "Axioms (1)-(3) on every builtin for n<=5; Compatibility (1)-(3) on planes", 300, [] {
    for (const auto& pres : testkit::builtin_presentations()) {
      const auto r = verify_axioms(pres, 5);
      if (!r.ok) return pres.name + ": " + (r.violation ? r.violation->axiom + " " + r.violation->detail : "");
    }
    const auto c = verify_compatibility(planes_presentation(), 5);
    if (!c.ok) return "planes: " + (c.violation ? c.violation->axiom + " " + c.violation->detail : "");
    return std::string();
  });

  criterion("6.groupoid-axioms", "extracted groupoids validate for every builtin core size", 120, [] {
    for (const auto& pres : testkit::builtin_presentations()) {
      if (pres.countset.is_empty()) continue;
      Calibration cal;
      try {
        cal = calibrate(pres);
      } catch (const Unstable&) {
        continue;
      }
      for (int e = 0; e <= pres.s0 + cal.d; ++e) {
        const auto ex = extract_groupoid(pres, e, cal);
        if (!ex.objects.empty() && !ex.groupoid) return pres.name + ": e=" + std::to_string(e) + " not validated";
      }
    }
    return std::string();
  });

  criterion("6.negative-controls", "broken presentations fail with a witness", 60, [] {
    const auto a = verify_axioms(broken_asymmetric_presentation(3), 5);
    if (a.ok || !a.violation || a.violation->detail.empty()) return std::string("broken-asymmetric accepted");
    const auto b = verify_axioms(broken_count_presentation(2), 5);
    if (b.ok || !b.violation || b.violation->detail.empty()) return std::string("broken-count accepted");
    const auto c = verify_compatibility(broken_planes_presentation(), 5);
    if (c.ok || !c.violation || c.violation->detail.empty()) return std::string("broken-planes accepted");
    std::cout << "  witness broken-asymmetric: " << a.violation->axiom << " n=" << a.violation->n << " " << a.violation->detail << "\n";
    std::cout << "  witness broken-count: " << b.violation->axiom << " n=" << b.violation->n << " " << b.violation->detail << "\n";
    std::cout << "  witness broken-planes: " << c.violation->axiom << " n=" << c.violation->n << " " << c.violation->detail << "\n";
    return std::string();
  });

  std::cout << (failures ? "FAILED " + std::to_string(failures) + " criteria" : std::string("ALL CRITERIA PASSED")) << std::endl;
  return failures ? 1 : 0;
}
