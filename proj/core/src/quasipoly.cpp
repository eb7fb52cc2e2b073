#include "widecount/quasipoly.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace widecount {

// Polynomial -----------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Rational& c) const {
  std::vector<Rational> out(coeffs_);
  for (auto& x : out) x *= c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  const std::size_t m = xs.size();
  // Newton divided differences, then expand the Newton form.
  std::vector<Rational> dd(ys);
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      Rational denom = xs[i] - xs[i - level];
      if (denom == 0) throw std::invalid_argument("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) / denom;
    }
  }
  std::vector<Rational> result(m, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // prod_{j<i} (x - xs[j])
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t d = 0; d < basis.size(); ++d) result[d] += dd[i] * basis[d];
    std::vector<Rational> next(basis.size() + 1, Rational(0));
    for (std::size_t d = 0; d < basis.size(); ++d) {
      next[d + 1] += basis[d];
      next[d] -= basis[d] * xs[i];
    }
    basis = std::move(next);
  }
  return Polynomial(std::move(result));
}

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = coeffs_.size(); d-- > 0;) {
    const Rational& c = coeffs_[d];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (d == 0 || a != 1) os << a.get_str();
    if (d > 0) os << (d == 0 || a != 1 ? "*" : "") << "n";
    if (d > 1) os << "^" << d;
    first = false;
  }
  return os.str();
}

// Quasipolynomial ------------------------------------------------------------

Quasipolynomial::Quasipolynomial() : constituents_{Polynomial()} {}

Quasipolynomial::Quasipolynomial(std::vector<Polynomial> constituents) : constituents_(std::move(constituents)) {
  if (constituents_.empty()) constituents_.push_back(Polynomial());
  normalize();
}

Quasipolynomial Quasipolynomial::constant(const Rational& c) { return Quasipolynomial({Polynomial::constant(c)}); }

Quasipolynomial Quasipolynomial::polynomial(const Polynomial& p) { return Quasipolynomial({p}); }

void Quasipolynomial::normalize() {
  const std::size_t n = constituents_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = constituents_[i] == constituents_[i % d];
    if (ok) {
      constituents_.resize(d);
      return;
    }
  }
}

const Polynomial& Quasipolynomial::constituent(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(period());
  return constituents_[static_cast<std::size_t>(((n % p) + p) % p)];
}

int Quasipolynomial::degree() const {
  int d = -1;
  for (const auto& c : constituents_) d = std::max(d, c.degree());
  return d;
}

Rational Quasipolynomial::evaluate(std::int64_t n) const {
  return constituent(n)(Rational(Integer(static_cast<long>(n))));
}

std::vector<Polynomial> Quasipolynomial::refined(std::size_t new_period) const {
  if (new_period % period() != 0) throw std::invalid_argument("refined: not a multiple of the period");
  std::vector<Polynomial> out(new_period);
  for (std::size_t i = 0; i < new_period; ++i) out[i] = constituents_[i % period()];
  return out;
}

Quasipolynomial Quasipolynomial::operator+(const Quasipolynomial& other) const {
  const std::size_t p = std::lcm(period(), other.period());
  auto a = refined(p);
  auto b = other.refined(p);
  for (std::size_t i = 0; i < p; ++i) a[i] = a[i] + b[i];
  return Quasipolynomial(std::move(a));
}

Quasipolynomial Quasipolynomial::scaled(const Rational& c) const {
  std::vector<Polynomial> out;
  out.reserve(period());
  for (const auto& p : constituents_) out.push_back(p * c);
  return Quasipolynomial(std::move(out));
}

std::string Quasipolynomial::to_string() const {
  if (period() == 1) return constituents_[0].to_string();
  std::ostringstream os;
  for (std::size_t i = 0; i < period(); ++i) {
    if (i) os << "; ";
    os << "n=" << i << " mod " << period() << ": " << constituents_[i].to_string();
  }
  return os.str();
}

bool equal_eventually(const Quasipolynomial& a, const Quasipolynomial& b) {
  const std::size_t p = std::lcm(a.period(), b.period());
  return a.refined(p) == b.refined(p);
}

// Fitting --------------------------------------------------------------------

NoFit::NoFit(FitWitness witness)
    : std::runtime_error("no quasipolynomial fits: " + witness.detail), witness_(std::move(witness)) {}

namespace {

struct Candidate {
  bool ok = false;
  bool enough_points = true;
  FitWitness witness;
  std::vector<Polynomial> constituents;
};

Candidate try_candidate(const Sequence& seq, std::int64_t onset, std::int64_t hi, std::size_t period,
                        int degree) {
  Candidate c;
  c.constituents.resize(period);
  const std::size_t need = static_cast<std::size_t>(degree) + 1;
  for (std::size_t r = 0; r < period; ++r) {
    std::vector<std::int64_t> ns;
    std::int64_t start = onset + static_cast<std::int64_t>((r + period - static_cast<std::size_t>(((onset % static_cast<std::int64_t>(period)) + static_cast<std::int64_t>(period)) % static_cast<std::int64_t>(period))) % period);
    for (std::int64_t n = start; n <= hi; n += static_cast<std::int64_t>(period)) ns.push_back(n);
    if (ns.size() < need + 2) {
      c.enough_points = false;
      c.witness = {period, degree, onset, r, start, "too few points in residue class"};
      return c;
    }
    std::vector<Rational> xs, ys;
    for (std::size_t i = 0; i < need; ++i) {
      xs.emplace_back(Integer(static_cast<long>(ns[i])));
      ys.emplace_back(seq.at(ns[i]));
    }
    Polynomial p = Polynomial::interpolate(xs, ys);
    for (std::size_t i = need; i < ns.size(); ++i) {
      Rational predicted = p(Rational(Integer(static_cast<long>(ns[i]))));
      if (predicted != Rational(seq.at(ns[i]))) {
        std::ostringstream os;
        os << "period " << period << ", degree " << degree << ", onset " << onset << ": residue " << r
           << " predicts " << predicted.get_str() << " at n=" << ns[i] << " but sequence has "
           << seq.at(ns[i]).get_str();
        c.witness = {period, degree, onset, r, ns[i], os.str()};
        return c;
      }
    }
    c.constituents[r] = std::move(p);
  }
  c.ok = true;
  return c;
}

}  // namespace

std::optional<FittedQuasipolynomial> try_fit(const Sequence& seq, std::size_t max_period, int max_degree,
                                             FitWitness* witness) {
  if (seq.empty()) throw std::invalid_argument("fit: empty sequence");
  if (max_period < 1 || max_degree < 0) throw std::invalid_argument("fit: need max_period >= 1, max_degree >= 0");
  const std::int64_t lo = seq.begin()->first;
  const std::int64_t hi = seq.rbegin()->first;
  if (static_cast<std::int64_t>(seq.size()) != hi - lo + 1) throw std::invalid_argument("fit: range is not contiguous");

  FitWitness best;
  best.detail = "no candidate had enough points";
  bool have_best = false;
  for (std::size_t period = 1; period <= max_period; ++period) {
    for (int degree = 0; degree <= max_degree; ++degree) {
      for (std::int64_t onset = lo; onset <= hi; ++onset) {
        Candidate c = try_candidate(seq, onset, hi, period, degree);
        if (!c.enough_points) {
          if (!have_best) best = c.witness;
          break;
        }
        if (c.ok) {
          return FittedQuasipolynomial{Quasipolynomial(std::move(c.constituents)), onset, onset, hi};
        }
        if (!have_best || c.witness.n > best.n) {
          best = c.witness;
          have_best = true;
        }
      }
    }
  }
  if (witness) *witness = best;
  return std::nullopt;
}

FittedQuasipolynomial fit(const Sequence& seq, std::size_t max_period, int max_degree) {
  FitWitness w;
  auto r = try_fit(seq, max_period, max_degree, &w);
  if (!r) throw NoFit(w);
  return *r;
}

// Serialization --------------------------------------------------------------

namespace {
std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

Sequence read_sequence_csv(std::istream& in) {
  Sequence seq;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_copy(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "n,count") throw std::invalid_argument("sequence CSV must start with header `n,count`");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected n,count");
    try {
      const std::int64_t n = std::stoll(trim_copy(line.substr(0, comma)));
      Integer v(trim_copy(line.substr(comma + 1)), 10);
      if (!seq.emplace(n, v).second) throw std::invalid_argument("duplicate n");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) throw std::invalid_argument("sequence CSV is empty");
  return seq;
}

void write_sequence_csv(std::ostream& out, const Sequence& seq) {
  out << "n,count\n";
  for (const auto& [n, v] : seq) out << n << ',' << v.get_str() << '\n';
}

nlohmann::json to_json(const Quasipolynomial& qp) {
  nlohmann::json constituents = nlohmann::json::array();
  for (const auto& p : qp.constituents()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
    constituents.push_back(coeffs);
  }
  return {{"period", qp.period()}, {"constituents", constituents}};
}

nlohmann::json to_json(const FittedQuasipolynomial& fitted) {
  auto j = to_json(fitted.qp);
  j["onset"] = fitted.onset;
  j["validated_range"] = {fitted.validated_lo, fitted.validated_hi};
  return j;
}

nlohmann::json to_json(const FitWitness& w) {
  return {{"period", w.period}, {"degree", w.degree}, {"onset", w.onset},
          {"residue", w.residue}, {"n", w.n}, {"detail", w.detail}};
}

FittedQuasipolynomial fitted_from_json(const nlohmann::json& j) {
  std::vector<Polynomial> constituents;
  for (const auto& cj : j.at("constituents")) {
    std::vector<Rational> coeffs;
    for (const auto& pair : cj) {
      Rational r(Integer(pair.at(0).get<std::string>(), 10), Integer(pair.at(1).get<std::string>(), 10));
      r.canonicalize();
      coeffs.push_back(r);
    }
    constituents.emplace_back(std::move(coeffs));
  }
  FittedQuasipolynomial f{Quasipolynomial(std::move(constituents)), j.value("onset", std::int64_t{0}), 0, 0};
  if (j.contains("validated_range")) {
    f.validated_lo = j["validated_range"].at(0).get<std::int64_t>();
    f.validated_hi = j["validated_range"].at(1).get<std::int64_t>();
  }
  if (j.contains("period") && j["period"].get<std::size_t>() != f.qp.period())
    throw std::invalid_argument("quasipolynomial JSON: period is not minimal for its constituents");
  return f;
}

}  // namespace widecount
