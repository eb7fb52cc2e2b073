#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "widecount/codes.hpp"
#include "widecount/errors.hpp"
#include "widecount/functors.hpp"
#include "widecount/gallery.hpp"
#include "widecount/lattice.hpp"

namespace widecount::cli {

namespace {

using nlohmann::json;

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& s) {
  Range r;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, dots));
      r.hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n", "expected N or LO..HI, got '" + s + "'");
  }
  if (r.lo < 0 || r.hi < r.lo) throw CLI::ValidationError("--n", "empty or negative range '" + s + "'");
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

PermGroup parse_group(const std::string& spec, int k) {
  if (spec == "trivial") return PermGroup::trivial(k);
  if (spec == "sym") return PermGroup::symmetric(k);
  if (spec == "cyclic") return PermGroup::cyclic(k);
  std::vector<Permutation> gens;
  for (const auto& g : split(spec, ';')) gens.push_back(Permutation::parse(g, k));
  return PermGroup(k, gens);
}

DownwardClosedSet parse_obstructions(const std::string& spec, int k) {
  std::vector<CountVector> obs;
  for (const auto& o : split(spec, ';')) {
    CountVector v;
    for (const auto& x : split(o, ',')) v.push_back(std::stoi(x));
    if (static_cast<int>(v.size()) != k) throw std::invalid_argument("obstruction '" + o + "' needs " + std::to_string(k) + " entries");
    obs.push_back(std::move(v));
  }
  return DownwardClosedSet(k, obs);
}

std::vector<Rational> parse_entries(const std::string& spec) {
  std::vector<Rational> out;
  for (const auto& x : split(spec, ',')) {
    Rational r(x);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

struct Common {
  std::string n = "0..10";
  bool verify = false;
  bool fit = false;
  bool timings = false;
  std::size_t max_period = 12;
  int max_degree = 6;
  std::uint64_t max_states = 1'000'000;
  double time_limit = 0;
  int threads = 0;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--n", c.n, "Size or range LO..HI")->capture_default_str();
  sub->add_flag("--verify", c.verify, "Run oracle cross-checks");
  sub->add_flag("--fit", c.fit, "Fit a quasipolynomial to the sequence");
  sub->add_option("--max-period", c.max_period, "Largest period tried by --fit")->capture_default_str();
  sub->add_option("--max-degree", c.max_degree, "Largest degree tried by --fit")->capture_default_str();
  sub->add_option("--max-states", c.max_states, "Enumeration budget for brute-force oracles")->capture_default_str();
  sub->add_option("--time-limit", c.time_limit, "Stop after this many seconds (0: none); marks the report truncated");
  sub->add_option("--threads", c.threads, "Worker cap (falls back to WIDECOUNT_THREADS)");
  sub->add_flag("--timings", c.timings, "Include wall time per n (breaks byte-stability)");
  sub->add_option("--out", c.out, "Write the JSON report here and n,count CSV next to it");
}

/// Report accumulated by one command.
class Report {
 public:
  Report(const std::vector<std::string>& args, std::string command) {
    std::string echo;
    for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
    j_["command"] = echo;
    j_["subcommand"] = std::move(command);
    j_["parameters"] = json::object();
    j_["checks"] = json::array();
    j_["truncated"] = false;
  }

  json& params() { return j_["parameters"]; }
  const Sequence& sequence() const { return seq_; }

  void check(const std::string& name, bool pass, const std::string& witness = "") {
    json c{{"name", name}, {"pass", pass}};
    if (!witness.empty()) c["witness"] = witness;
    j_["checks"].push_back(std::move(c));
    if (!pass) failed_ = true;
  }

  /// Per-n cross-check: mismatches are collected into one check entry.
  void compare(const std::string& name, int n, const Integer& got, const Integer& expected) {
    auto& entry = pending_[name];
    entry.second = true;
    if (got != expected && entry.first.empty())
      entry.first = "n=" + std::to_string(n) + ": " + got.get_str() + " vs " + expected.get_str();
  }

  void extra(int n, const std::string& key, const json& value) { extras_[n][key] = value; }

  void truncate(const std::string& why) {
    j_["truncated"] = true;
    j_["truncation"] = why;
  }

  /// Evaluates f over the range; budget overruns and the time limit truncate.
  void run_range(const Common& c, const std::function<Integer(int)>& f) {
    const auto r = parse_range(c.n);
    params()["n"] = {{"lo", r.lo}, {"hi", r.hi}};
    const auto start = std::chrono::steady_clock::now();
    for (int n = r.lo; n <= r.hi; ++n) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        seq_[n] = f(n);
      } catch (const TooLarge& ex) {
        truncate("n=" + std::to_string(n) + ": " + ex.what());
        break;
      }
      if (c.timings) timing_[n] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (c.time_limit > 0 && std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > c.time_limit &&
          n < r.hi) {
        truncate("time limit reached after n=" + std::to_string(n));
        break;
      }
    }
  }

  void set_sequence(Sequence seq) { seq_ = std::move(seq); }

  void attach_fit(std::size_t max_period, int max_degree) {
    FitWitness witness;
    if (auto fitted = try_fit(seq_, max_period, max_degree, &witness)) {
      j_["fit"] = {{"status", "fit"}, {"quasipolynomial", to_json(*fitted)}, {"text", fitted->qp.to_string()}};
    } else {
      j_["fit"] = {{"status", "nofit"}, {"witness", to_json(witness)}};
    }
  }

  int emit(const Common& c, std::ostream& out) {
    for (const auto& [name, entry] : pending_)
      if (entry.second) check(name, entry.first.empty(), entry.first);
    pending_.clear();
    json seq = json::array();
    for (const auto& [n, v] : seq_) {
      json row{{"n", n}, {"count", v.get_str()}};
      if (auto it = extras_.find(n); it != extras_.end())
        for (const auto& [k, x] : it->second.items()) row[k] = x;
      if (auto it = timing_.find(n); it != timing_.end()) row["seconds"] = it->second;
      seq.push_back(std::move(row));
    }
    j_["sequence"] = std::move(seq);
    j_["verdict"] = failed_ ? "fail" : "pass";
    const int threads = c.threads > 0 ? c.threads : (std::getenv("WIDECOUNT_THREADS") ? std::atoi(std::getenv("WIDECOUNT_THREADS")) : 1);
    j_["parameters"]["threads"] = threads;
    if (c.out.empty()) {
      out << j_.dump(2) << "\n";
    } else {
      std::ofstream f(c.out);
      f << j_.dump(2) << "\n";
      std::string csv = c.out;
      if (csv.size() > 5 && csv.substr(csv.size() - 5) == ".json") csv.resize(csv.size() - 5);
      std::ofstream g(csv + ".csv");
      write_sequence_csv(g, seq_);
    }
    return failed_ ? 2 : 0;
  }

  json& raw() { return j_; }

 private:
  json j_;
  Sequence seq_;
  std::map<int, json> extras_;
  std::map<int, double> timing_;
  std::map<std::string, std::pair<std::string, bool>> pending_;
  bool failed_ = false;
};

std::uint64_t pow_bound(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 40)) return r;
    r *= static_cast<std::uint64_t>(base);
  }
  return r;
}

// Subcommands ----------------------------------------------------------------

int cmd_elementary(const std::vector<std::string>& args, const Common& c, int k, const std::string& group,
                   const std::string& obstructions, std::ostream& out) {
  const ElementaryModelFunctor emf(k, parse_group(group, k), parse_obstructions(obstructions, k));
  Report rep(args, "elementary");
  rep.params()["k"] = k;
  rep.params()["group"] = emf.group.to_json();
  rep.params()["countset"] = emf.countset.to_json();
  rep.run_range(c, [&](int n) { return elementary_count(emf, n); });
  if (c.verify) {
    for (const auto& [n, v] : rep.sequence())
      if (pow_bound(k, static_cast<int>(n)) <= c.max_states)
        rep.compare("elementary_count == elementary_brute", static_cast<int>(n), v, elementary_brute(emf, static_cast<int>(n)));
    const auto closed = elementary_quasipolynomial(emf);
    for (const auto& [n, v] : rep.sequence())
      if (n >= closed.onset) {
        const Rational r = closed.qp(n);
        rep.compare("closed-form quasipolynomial", static_cast<int>(n), v, r.get_den() == 1 ? Integer(r.get_num()) : Integer(-1));
      }
  }
  if (c.fit) rep.attach_fit(c.max_period, c.max_degree);
  return rep.emit(c, out);
}

struct ModelOptions {
  std::string name;
  int d = 2, k = 2, q = 2, m = 1;
  std::string group = "trivial", obstructions;
  std::string method = "groupoid";
  int axioms = -1;
  bool trace = false;
};

ModelFunctorPresentation make_presentation(const ModelOptions& o) {
  if (o.name == "roots-of-unity") return roots_of_unity_presentation(o.d);
  if (o.name == "elementary")
    return elementary_presentation(ElementaryModelFunctor(o.k, parse_group(o.group, o.k), parse_obstructions(o.obstructions, o.k)));
  if (o.name == "codes") return codes_presentation(o.q, o.m);
  if (o.name == "broken-asymmetric") return broken_asymmetric_presentation(o.d);
  if (o.name == "broken-count") return broken_count_presentation(o.k);
  throw std::invalid_argument("unknown presentation '" + o.name + "'");
}

int cmd_model(const std::vector<std::string>& args, const Common& c, const ModelOptions& o, std::ostream& out) {
  const auto pres = make_presentation(o);
  Report rep(args, "model");
  rep.params()["presentation"] = pres.name;
  rep.params()["s0"] = pres.s0;
  rep.params()["k"] = pres.k;
  rep.params()["countset"] = pres.countset.to_json();
  rep.params()["method"] = o.method;
  if (o.axioms >= 0) {
    const auto report = verify_axioms(pres, o.axioms);
    rep.raw()["axioms"] = report.to_json();
    rep.check("axioms up to n=" + std::to_string(o.axioms), report.ok,
              report.violation ? report.violation->axiom + " at n=" + std::to_string(report.violation->n) + ": " + report.violation->detail : "");
  }
  rep.run_range(c, [&](int n) -> Integer {
    if (o.method == "direct") return mf_orbit_count_direct(pres, n);
    if (o.method == "count-vectors") return mf_orbit_count_by_count_vectors(pres, n);
    return mf_count_via_groupoid(pres, n);
  });
  if (o.trace) {
    const auto r = parse_range(c.n);
    GroupoidCountTrace trace;
    try {
      mf_count_via_groupoid(pres, r.hi, &trace);
      rep.raw()["trace"] = {{"n", r.hi}, {"steps", trace.to_json()}};
    } catch (const std::exception& ex) {
      rep.raw()["trace"] = {{"n", r.hi}, {"error", ex.what()}};
    }
  }
  if (c.verify) {
    for (const auto& [n, v] : rep.sequence()) {
      const int ni = static_cast<int>(n);
      if (o.method != "count-vectors") rep.compare("agrees with count-vector components", ni, v, mf_orbit_count_by_count_vectors(pres, ni));
      if (o.method != "direct" && ni <= 7) {
        try {
          rep.compare("agrees with direct union-find", ni, v, mf_orbit_count_direct(pres, ni));
        } catch (const TooLarge&) {
        }
      }
    }
  }
  if (c.fit) rep.attach_fit(c.max_period, c.max_degree);
  return rep.emit(c, out);
}

int cmd_precomp(const std::vector<std::string>& args, const Common& c, const std::string& name, int compat,
                std::ostream& out) {
  PreComponentPresentation pc;
  if (name == "planes") pc = planes_presentation();
  else if (name == "broken-planes") pc = broken_planes_presentation();
  else throw std::invalid_argument("unknown pre-component presentation '" + name + "'");
  Report rep(args, "precomp");
  rep.params()["presentation"] = pc.name;
  if (compat >= 0) {
    const auto report = verify_compatibility(pc, compat);
    rep.raw()["compatibility"] = report.to_json();
    rep.check("compatibility up to n=" + std::to_string(compat), report.ok,
              report.violation ? report.violation->axiom + " at n=" + std::to_string(report.violation->n) + ": " + report.violation->detail : "");
  }
  rep.run_range(c, [&](int n) {
    const auto r = precomp_count(pc, n);
    rep.extra(n, "maximal_classes", r.maximal_classes.get_str());
    return r.orbits;
  });
  if (c.verify && name == "planes") {
    for (const auto& [n, v] : rep.sequence())
      if (n <= 14) rep.compare("agrees with minimal vertex covers", static_cast<int>(n), v, planes_brute(static_cast<int>(n)).orbits);
  }
  if (c.fit) rep.attach_fit(c.max_period, c.max_degree);
  return rep.emit(c, out);
}

struct ExampleOptions {
  std::string name;
  int d = 3, k = 1;
  std::string entries = "0,1";
  std::string shape = "symmetric";
};

int cmd_example(const std::vector<std::string>& args, const Common& c, const ExampleOptions& o, std::ostream& out) {
  Report rep(args, "example");
  rep.params()["example"] = o.name;
  const auto shape = o.shape == "general" ? MatrixShape::General : MatrixShape::Symmetric;
  if (o.shape != "general" && o.shape != "symmetric") throw std::invalid_argument("--shape must be general or symmetric");
  if (o.name == "planes") {
    rep.run_range(c, [&](int n) {
      const auto r = planes_orbit_count(n);
      rep.extra(n, "components", r.components.get_str());
      return r.orbits;
    });
    if (c.verify)
      for (const auto& [n, v] : rep.sequence()) {
        if (n > 14) continue;
        const auto b = planes_brute(static_cast<int>(n));
        rep.compare("orbits agree with minimal vertex covers", static_cast<int>(n), v, b.orbits);
        rep.compare("components agree with minimal vertex covers", static_cast<int>(n), planes_orbit_count(static_cast<int>(n)).components, b.components);
      }
  } else if (o.name == "points") {
    rep.params()["d"] = o.d;
    rep.run_range(c, [&](int n) {
      const auto r = points_orbit_count(o.d, n);
      rep.extra(n, "components", r.components.get_str());
      return r.orbits;
    });
    if (c.verify) {
      const ElementaryModelFunctor emf(o.d, PermGroup::trivial(o.d), DownwardClosedSet::full(o.d));
      for (const auto& [n, v] : rep.sequence()) {
        rep.compare("formula agrees with elementary_count", static_cast<int>(n), v, elementary_count(emf, n));
        if (pow_bound(o.d, static_cast<int>(n)) <= c.max_states)
          rep.compare("formula agrees with brute force", static_cast<int>(n), v, points_brute(o.d, static_cast<int>(n)));
      }
    }
  } else if (o.name == "galois") {
    rep.run_range(c, [&](int n) { return galois_orbit_count(n); });
    if (c.verify) {
      const ElementaryModelFunctor emf(2, PermGroup::symmetric(2), DownwardClosedSet::full(2));
      for (const auto& [n, v] : rep.sequence()) {
        rep.compare("formula agrees with elementary_count", static_cast<int>(n), v, elementary_count(emf, n));
        if (n <= 20) rep.compare("formula agrees with partition union-find", static_cast<int>(n), v, galois_brute(static_cast<int>(n)));
      }
    }
  } else if (o.name == "cube") {
    rep.params()["d"] = o.d;
    rep.run_range(c, [&](int n) { return cube_orbit_count(o.d, n); });
    if (c.verify)
      for (const auto& [n, v] : rep.sequence()) {
        rep.compare("formula agrees with rotation brute force", static_cast<int>(n), v, cube_brute(o.d, static_cast<int>(n)));
        // The model functor fixes a base coordinate, so it starts at n = 1.
        if (n >= 1 && n <= 12)
          rep.compare("formula agrees with the groupoid count", static_cast<int>(n), v, cube_via_groupoid(o.d, static_cast<int>(n)));
      }
  } else if (o.name == "ranks") {
    const auto entries = parse_entries(o.entries);
    rep.params()["entries"] = o.entries;
    rep.params()["k"] = o.k;
    rep.params()["shape"] = o.shape;
    rep.run_range(c, [&](int n) { return fixed_rank_orbit_count(entries, o.k, n, shape); });
    if (c.verify && shape == MatrixShape::Symmetric && entries == parse_entries("0,1") && o.k <= 2)
      for (const auto& [n, v] : rep.sequence())
        rep.compare("enumeration agrees with the closed form", static_cast<int>(n), v, symmetric01_formula(o.k, static_cast<int>(n)));
  } else if (o.name == "trees") {
    rep.run_range(c, [&](int n) {
      const auto r = tree_orbit_count(n);
      rep.extra(n, "labeled", r.labeled.get_str());
      return r.orbits;
    });
  } else {
    throw std::invalid_argument("unknown example '" + o.name + "'");
  }
  if (c.fit) rep.attach_fit(c.max_period, c.max_degree);
  return rep.emit(c, out);
}

int cmd_codes_count(const std::vector<std::string>& args, const Common& c, int q, int m, const std::string& method,
                    std::ostream& out) {
  if (method != "direct" && method != "burnside") throw std::invalid_argument("--method must be direct or burnside");
  Report rep(args, "codes count");
  rep.params()["q"] = q;
  rep.params()["m"] = m;
  rep.params()["method"] = method;
  rep.params()["alphabet"] = ProjectiveAlphabet::get(q, m).size();
  rep.run_range(c, [&](int n) { return method == "direct" ? count_codes_direct(q, m, n, c.max_states) : count_codes_burnside(q, m, n); });
  if (c.verify)
    for (const auto& [n, v] : rep.sequence()) {
      try {
        const auto other = method == "direct" ? count_codes_burnside(q, m, static_cast<int>(n))
                                              : count_codes_direct(q, m, static_cast<int>(n), c.max_states);
        rep.compare("direct and Burnside counts agree", static_cast<int>(n), v, other);
      } catch (const TooLarge&) {
      }
    }
  if (c.fit) rep.attach_fit(c.max_period, ProjectiveAlphabet::get(q, m).size() - 1);
  return rep.emit(c, out);
}

int cmd_codes_fit(const std::vector<std::string>& args, Common c, int q, int m, int nmax, std::ostream& out) {
  c.n = "0.." + std::to_string(nmax);
  Report rep(args, "codes fit");
  rep.params()["q"] = q;
  rep.params()["m"] = m;
  rep.run_range(c, [&](int n) { return count_codes_burnside(q, m, n); });
  rep.attach_fit(c.max_period, ProjectiveAlphabet::get(q, m).size() - 1);
  return rep.emit(c, out);
}

int cmd_fit(const std::vector<std::string>& args, const Common& c, const std::string& in, std::ostream& out) {
  std::ifstream f(in);
  if (!f) throw std::invalid_argument("cannot read '" + in + "'");
  Report rep(args, "fit");
  rep.params()["input"] = in;
  rep.set_sequence(read_sequence_csv(f));
  rep.attach_fit(c.max_period, c.max_degree);
  return rep.emit(c, out);
}

/// A fixed battery of small cross-checks.
int cmd_verify(const std::vector<std::string>& args, const Common& c, std::ostream& out) {
  Report rep(args, "verify");
  for (int n = 0; n <= 8; ++n) {
    rep.compare("points d=3: formula vs brute", n, points_orbit_count(3, n).orbits, points_brute(3, n));
    rep.compare("galois: formula vs union-find", n, galois_orbit_count(n), galois_brute(n));
    rep.compare("cube d=3: formula vs brute", n, cube_orbit_count(3, n), cube_brute(3, n));
    if (n >= 1) rep.compare("cube d=3: formula vs groupoid", n, cube_orbit_count(3, n), cube_via_groupoid(3, n));
    rep.compare("planes: pre-component vs vertex covers", n, planes_orbit_count(n).components, planes_brute(n).components);
  }
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 2; ++k)
      rep.compare("symmetric {0,1} rank " + std::to_string(k), n,
                  fixed_rank_orbit_count(parse_entries("0,1"), k, n, MatrixShape::Symmetric), symmetric01_formula(k, n));
  for (int n = 2; n <= 5; ++n) rep.compare("codes q=2 m=2: direct vs Burnside", n, count_codes_direct(2, 2, n), count_codes_burnside(2, 2, n));
  for (const auto& pres : {roots_of_unity_presentation(2), roots_of_unity_presentation(3), codes_presentation(2, 1)}) {
    const auto r = verify_axioms(pres, 4);
    rep.check("axioms hold for " + pres.name, r.ok, r.violation ? r.violation->detail : "");
  }
  rep.check("broken-asymmetric is rejected", !verify_axioms(broken_asymmetric_presentation(3), 4).ok);
  rep.check("broken-count is rejected", !verify_axioms(broken_count_presentation(2), 4).ok);
  rep.check("planes compatibility holds", verify_compatibility(planes_presentation(), 4).ok);
  rep.check("broken-planes is rejected", !verify_compatibility(broken_planes_presentation(), 4).ok);
  return rep.emit(c, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit counts for symmetric wide-matrix schemes", "widecount"};
  app.require_subcommand(1);
  Common c;
  std::function<int()> action;

  auto* elem = app.add_subcommand("elementary", "Words with count vectors in M modulo a letter group");
  int ek = 2;
  std::string egroup = "trivial", eobs;
  elem->add_option("--k", ek, "Alphabet size")->required();
  elem->add_option("--group", egroup, "trivial | sym | cyclic | generators like \"(1 2);(1 2 3)\"");
  elem->add_option("--obstructions", eobs, "Minimal excluded count vectors, e.g. \"2,0;0,3\"");
  add_common(elem, c);
  elem->callback([&] { action = [&] { return cmd_elementary(args, c, ek, egroup, eobs, out); }; });

  auto* model = app.add_subcommand("model", "Model functor presentations");
  ModelOptions mo;
  model->add_option("presentation", mo.name, "roots-of-unity | elementary | codes | broken-asymmetric | broken-count")->required();
  model->add_option("--d", mo.d, "Root order");
  model->add_option("--k", mo.k, "Alphabet size");
  model->add_option("--group", mo.group, "Letter group for elementary");
  model->add_option("--obstructions", mo.obstructions, "Count set obstructions for elementary");
  model->add_option("--q", mo.q, "Field size for codes");
  model->add_option("--m", mo.m, "Code dimension");
  model->add_option("--method", mo.method, "groupoid | direct | count-vectors")->check(CLI::IsMember({"groupoid", "direct", "count-vectors"}));
  model->add_option("--axioms", mo.axioms, "Check Axioms (1)-(3) up to this n");
  model->add_flag("--trace", mo.trace, "Include the recursion trace at the largest n");
  add_common(model, c);
  model->callback([&] { action = [&] { return cmd_model(args, c, mo, out); }; });

  auto* pre = app.add_subcommand("precomp", "Pre-component functors");
  std::string pname;
  int compat = -1;
  pre->add_option("presentation", pname, "planes | broken-planes")->required();
  pre->add_option("--compat", compat, "Check Compatibility (1)-(3) up to this n");
  add_common(pre, c);
  pre->callback([&] { action = [&] { return cmd_precomp(args, c, pname, compat, out); }; });

  auto* ex = app.add_subcommand("example", "Worked examples");
  ExampleOptions eo;
  ex->add_option("name", eo.name, "planes | points | galois | cube | ranks | trees")->required();
  ex->add_option("--d", eo.d, "Parameter d for points and cube");
  ex->add_option("--k", eo.k, "Rank for ranks");
  ex->add_option("--entries", eo.entries, "Entry set for ranks, e.g. \"0,1,1/2\"");
  ex->add_option("--shape", eo.shape, "symmetric | general");
  add_common(ex, c);
  ex->callback([&] { action = [&] { return cmd_example(args, c, eo, out); }; });

  auto* ranks = app.add_subcommand("ranks", "Fixed-rank matrices with entries in a set");
  ExampleOptions ro;
  ro.name = "ranks";
  ranks->add_option("--entries", ro.entries, "Entry set, e.g. \"0,1\"");
  ranks->add_option("--k", ro.k, "Rank")->required();
  ranks->add_option("--shape", ro.shape, "symmetric | general");
  add_common(ranks, c);
  ranks->callback([&] { action = [&] { return cmd_example(args, c, ro, out); }; });

  auto* codes = app.add_subcommand("codes", "Linear codes up to equivalence");
  codes->require_subcommand(1);
  int q = 2, m = 1, nmax = 14;
  std::string method = "burnside";
  auto* ccount = codes->add_subcommand("count", "Count equivalence classes");
  ccount->add_option("--q", q, "Field size")->required();
  ccount->add_option("--m", m, "Dimension")->required();
  ccount->add_option("--method", method, "direct | burnside");
  add_common(ccount, c);
  ccount->callback([&] { action = [&] { return cmd_codes_count(args, c, q, m, method, out); }; });
  auto* cfit = codes->add_subcommand("fit", "Fit the Burnside sequence");
  cfit->add_option("--q", q, "Field size")->required();
  cfit->add_option("--m", m, "Dimension")->required();
  cfit->add_option("--nmax", nmax, "Largest length")->capture_default_str();
  cfit->add_option("--max-period", c.max_period, "Largest period")->capture_default_str();
  cfit->add_option("--out", c.out, "Write the JSON report here and n,count CSV next to it");
  cfit->add_option("--threads", c.threads, "Worker cap");
  cfit->add_flag("--timings", c.timings, "Include wall time per n");
  cfit->callback([&] { action = [&] { return cmd_codes_fit(args, c, q, m, nmax, out); }; });

  auto* fitc = app.add_subcommand("fit", "Fit a quasipolynomial to an n,count CSV");
  std::string in;
  fitc->add_option("--in", in, "CSV with header n,count")->required();
  fitc->add_option("--max-period", c.max_period, "Largest period")->capture_default_str();
  fitc->add_option("--max-degree", c.max_degree, "Largest degree")->capture_default_str();
  fitc->add_option("--out", c.out, "Write the JSON report here");
  fitc->callback([&] { action = [&] { return cmd_fit(args, c, in, out); }; });

  auto* ver = app.add_subcommand("verify", "Run the built-in cross-check battery");
  ver->add_option("--out", c.out, "Write the JSON report here");
  ver->callback([&] { action = [&] { return cmd_verify(args, c, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    if (app.get_subcommands().empty()) err << app.help();
    return 1;
  }
  try {
    return action ? action() : 1;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace widecount::cli
