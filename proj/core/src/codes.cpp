#include "widecount/codes.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "widecount/errors.hpp"
#include "widecount/lattice.hpp"

namespace widecount {

// Fields ---------------------------------------------------------------------

namespace {

/// Conway polynomials, constant term first, monic.
std::vector<int> conway(int p, int f) {
  if (p == 2 && f == 2) return {1, 1, 1};
  if (p == 2 && f == 3) return {1, 1, 0, 1};
  if (p == 3 && f == 2) return {2, 2, 1};
  throw std::invalid_argument("no field table for q = " + std::to_string(p) + "^" + std::to_string(f));
}

std::vector<int> digits(int a, int p, int f) {
  std::vector<int> d(static_cast<std::size_t>(f));
  for (auto& x : d) {
    x = a % p;
    a /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
  p_ = 0;
  for (int p = 2; p <= q && !p_; ++p)
    if (q % p == 0) p_ = p;
  if (q < 2 || q > 9 || !p_) throw std::invalid_argument("field size must be a prime power <= 9");
  f_ = 0;
  for (int x = q; x > 1; x /= p_) {
    if (x % p_) throw std::invalid_argument("field size must be a prime power <= 9");
    ++f_;
  }
  const auto Q = static_cast<std::size_t>(q);
  add_.resize(Q * Q);
  mul_.resize(Q * Q);
  neg_.resize(Q);
  inv_.assign(Q, 0);
  const std::vector<int> modulus = f_ > 1 ? conway(p_, f_) : std::vector<int>{0, 1};
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p_, f_);
    std::vector<int> na(da);
    for (auto& x : na) x = (p_ - x) % p_;
    neg_[static_cast<std::size_t>(a)] = undigits(na, p_);
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p_, f_);
      std::vector<int> s(static_cast<std::size_t>(f_));
      for (int i = 0; i < f_; ++i) s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p_;
      add_[idx(a, b)] = undigits(s, p_);
      std::vector<int> prod(static_cast<std::size_t>(2 * f_), 0);
      for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j)
          prod[static_cast<std::size_t>(i + j)] += da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)];
      for (int deg = 2 * f_ - 1; deg >= f_; --deg) {
        const int c = prod[static_cast<std::size_t>(deg)] % p_;
        prod[static_cast<std::size_t>(deg)] = 0;
        for (int i = 0; i < f_; ++i) prod[static_cast<std::size_t>(deg - f_ + i)] -= c * modulus[static_cast<std::size_t>(i)];
      }
      prod.resize(static_cast<std::size_t>(f_));
      for (auto& x : prod) x = ((x % p_) + p_) % p_;
      mul_[idx(a, b)] = undigits(prod, p_);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul(a, b) == 1) inv_[static_cast<std::size_t>(a)] = b;
  // Field axioms on the tables.
  for (int a = 0; a < q; ++a) {
    if (a && !inv_[static_cast<std::size_t>(a)]) throw std::logic_error("field table: missing inverse");
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) || mul(a, mul(b, c)) != mul(mul(a, b), c) ||
            add(a, add(b, c)) != add(add(a, b), c))
          throw std::logic_error("field table: axiom failure");
  }
}

const FiniteField& FiniteField::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<FiniteField>(q);
  return *slot;
}

int FiniteField::inv(int a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[static_cast<std::size_t>(a)];
}

int FiniteField::frobenius(int a, int power) const {
  power = ((power % f_) + f_) % f_;
  for (int i = 0; i < power; ++i) {
    int x = 1;
    for (int j = 0; j < p_; ++j) x = mul(x, a);
    a = x;
  }
  return a;
}

// Codes ----------------------------------------------------------------------

std::string LinearCode::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) os << " / ";
    for (int x : rows[r]) os << x;
  }
  os << "]";
  return os.str();
}

nlohmann::json LinearCode::to_json() const { return {{"q", q}, {"m", m}, {"n", n}, {"rows", rows}}; }

int row_reduce(const FiniteField& F, std::vector<std::vector<int>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const int s = F.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = F.mul(x, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[r][j] = F.sub(rows[r][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  rows.resize(rank);
  return static_cast<int>(rank);
}

LinearCode make_code(int q, std::vector<std::vector<int>> generator) {
  const auto& F = FiniteField::get(q);
  LinearCode code;
  code.q = q;
  code.m = static_cast<int>(generator.size());
  code.n = generator.empty() ? 0 : static_cast<int>(generator.front().size());
  for (const auto& r : generator)
    if (static_cast<int>(r.size()) != code.n) throw std::invalid_argument("ragged generator matrix");
  if (row_reduce(F, generator) != code.m) throw std::invalid_argument("generator rows are dependent");
  code.rows = std::move(generator);
  return code;
}

std::optional<LinearCode> puncture(const LinearCode& code, int coordinate) {
  if (coordinate < 1 || coordinate > code.n) throw std::out_of_range("coordinate outside 1..n");
  auto rows = code.rows;
  for (auto& r : rows) r.erase(r.begin() + (coordinate - 1));
  LinearCode out;
  out.q = code.q;
  out.m = code.m;
  out.n = code.n - 1;
  if (row_reduce(FiniteField::get(code.q), rows) != code.m) return std::nullopt;
  out.rows = std::move(rows);
  return out;
}

LinearCode transform_code(const LinearCode& code, const Permutation& perm, const std::vector<int>& scalars,
                          int frobenius_power) {
  const auto& F = FiniteField::get(code.q);
  auto rows = code.rows;
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (int i = 0; i < code.n; ++i)
      rows[r][static_cast<std::size_t>(perm(i))] =
          F.frobenius(F.mul(scalars[static_cast<std::size_t>(i)], code.rows[r][static_cast<std::size_t>(i)]), frobenius_power);
  return make_code(code.q, std::move(rows));
}

// Projective alphabet --------------------------------------------------------

ProjectiveAlphabet::ProjectiveAlphabet(int q, int m) : q_(q), m_(m) {
  const auto& F = FiniteField::get(q);
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(q);
  lookup_.assign(total, -1);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> v(static_cast<std::size_t>(m));
    auto x = code;
    for (int i = m - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(x % static_cast<std::size_t>(q));
      x /= static_cast<std::size_t>(q);
    }
    auto first = std::find_if(v.begin(), v.end(), [](int c) { return c != 0; });
    if (first == v.end() || *first == 1) {
      lookup_[code] = static_cast<int>(points_.size());
      points_.push_back(v);
    }
  }
  (void)F;
}

const ProjectiveAlphabet& ProjectiveAlphabet::get(int q, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<ProjectiveAlphabet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{q, m}];
  if (!slot) slot = std::make_unique<ProjectiveAlphabet>(q, m);
  return *slot;
}

std::vector<int> ProjectiveAlphabet::unit(int j) const {
  std::vector<int> v(static_cast<std::size_t>(m_), 0);
  v[static_cast<std::size_t>(j)] = 1;
  return v;
}

int ProjectiveAlphabet::index_of(const std::vector<int>& column) const {
  const auto& F = FiniteField::get(q_);
  auto first = std::find_if(column.begin(), column.end(), [](int c) { return c != 0; });
  const int s = first == column.end() ? 1 : F.inv(*first);
  std::size_t code = 0;
  for (int c : column) code = code * static_cast<std::size_t>(q_) + static_cast<std::size_t>(F.mul(s, c));
  return lookup_[code];
}

const std::vector<std::vector<int>>& ProjectiveAlphabet::semilinear_action() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!action_.empty()) return action_;
  const auto& F = FiniteField::get(q_);
  const int cells = m_ * m_;
  double size = 1;
  for (int i = 0; i < cells; ++i) size *= q_;
  if (size > 1e7) throw TooLarge("GL_" + std::to_string(m_) + "(" + std::to_string(q_) + ") enumeration");
  std::vector<int> a(static_cast<std::size_t>(cells), 0);
  for (;;) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m_));
    for (int r = 0; r < m_; ++r) rows[static_cast<std::size_t>(r)].assign(a.begin() + r * m_, a.begin() + (r + 1) * m_);
    auto copy = rows;
    if (row_reduce(F, copy) == m_) {
      for (int fr = 0; fr < F.degree(); ++fr) {
        std::vector<int> image;
        for (const auto& x : points_) {
          std::vector<int> y(static_cast<std::size_t>(m_), 0);
          for (int r = 0; r < m_; ++r)
            for (int c = 0; c < m_; ++c)
              y[static_cast<std::size_t>(r)] = F.add(y[static_cast<std::size_t>(r)],
                                                     F.mul(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                                           F.frobenius(x[static_cast<std::size_t>(c)], fr)));
          image.push_back(index_of(y));
        }
        action_.push_back(std::move(image));
      }
    }
    int i = 0;
    while (i < cells && ++a[static_cast<std::size_t>(i)] == q_) a[static_cast<std::size_t>(i++)] = 0;
    if (i == cells) break;
  }
  if (action_.size() > 1'000'000) throw TooLarge("semilinear group too large");
  return action_;
}

// Canonical forms and counts -------------------------------------------------

namespace {

std::vector<int> column_classes(const LinearCode& code, const ProjectiveAlphabet& P) {
  std::vector<int> out;
  for (int i = 0; i < code.n; ++i) {
    std::vector<int> col;
    for (const auto& r : code.rows) col.push_back(r[static_cast<std::size_t>(i)]);
    out.push_back(P.index_of(col));
  }
  return out;
}

/// Least sorted image of a class vector over the semilinear group.
std::vector<int> least_multiset(const std::vector<int>& classes, const ProjectiveAlphabet& P) {
  std::vector<int> best;
  std::vector<int> img(classes.size());
  for (const auto& g : P.semilinear_action()) {
    for (std::size_t i = 0; i < classes.size(); ++i) img[i] = g[static_cast<std::size_t>(classes[i])];
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = img;
  }
  return best;
}

}  // namespace

LinearCode canonical_code(const LinearCode& code) {
  if (code.m == 0) return code;
  const auto& P = ProjectiveAlphabet::get(code.q, code.m);
  const auto least = least_multiset(column_classes(code, P), P);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(code.m));
  for (int c : least)
    for (int r = 0; r < code.m; ++r) rows[static_cast<std::size_t>(r)].push_back(P.point(c)[static_cast<std::size_t>(r)]);
  return make_code(code.q, std::move(rows));
}

Integer count_codes_direct(int q, int m, int n, std::uint64_t budget) {
  const auto& F = FiniteField::get(q);
  if (m < 0 || n < 0) throw std::invalid_argument("negative code parameters");
  if (m > n) return 0;
  if (m == 0) return 1;
  const auto& P = ProjectiveAlphabet::get(q, m);
  std::set<std::vector<int>> seen;
  std::uint64_t visited = 0;
  std::vector<int> pivots(static_cast<std::size_t>(m));
  std::iota(pivots.begin(), pivots.end(), 0);
  for (;;) {
    // Free cells: right of each pivot, outside pivot columns.
    std::vector<std::pair<int, int>> free_cells;
    for (int r = 0; r < m; ++r)
      for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) free_cells.push_back({r, c});
    std::vector<int> values(free_cells.size(), 0);
    for (;;) {
      if (++visited > budget) throw TooLarge("more than " + std::to_string(budget) + " subspaces");
      LinearCode code;
      code.q = q;
      code.m = m;
      code.n = n;
      code.rows.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n), 0));
      for (int r = 0; r < m; ++r) code.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] = 1;
      for (std::size_t i = 0; i < free_cells.size(); ++i)
        code.rows[static_cast<std::size_t>(free_cells[i].first)][static_cast<std::size_t>(free_cells[i].second)] = values[i];
      seen.insert(least_multiset(column_classes(code, P), P));
      std::size_t i = 0;
      while (i < values.size() && ++values[i] == q) values[i++] = 0;
      if (i == values.size()) break;
    }
    int r = m - 1;
    while (r >= 0 && pivots[static_cast<std::size_t>(r)] == n - m + r) --r;
    if (r < 0) break;
    ++pivots[static_cast<std::size_t>(r)];
    for (int s = r + 1; s < m; ++s) pivots[static_cast<std::size_t>(s)] = pivots[static_cast<std::size_t>(s - 1)] + 1;
  }
  (void)F;
  return Integer(static_cast<unsigned long>(seen.size()));
}

Integer count_codes_burnside(int q, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative code parameters");
  if (m == 0) return 1;
  const auto& F = FiniteField::get(q);
  const auto& P = ProjectiveAlphabet::get(q, m);
  // Subspaces of F_q^m as sets of point indices, with their Moebius value mu(W, V).
  struct Sub {
    std::vector<bool> contains;
    Integer mu;
  };
  std::vector<Sub> subs;
  for (int dim = 0; dim <= m; ++dim) {
    std::set<std::vector<bool>> found;
    const int c = m - dim;
    Integer mu;
    mpz_ui_pow_ui(mu.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(c * (c - 1) / 2));
    if (c % 2) mu = -mu;
    // Span of every dim-subset of points; duplicates removed.
    std::vector<int> pick(static_cast<std::size_t>(dim));
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == dim) {
        std::vector<std::vector<int>> rows;
        for (int i : pick) rows.push_back(P.point(i));
        auto copy = rows;
        if (row_reduce(F, copy) != dim) return;
        std::vector<bool> in(static_cast<std::size_t>(P.size()), false);
        for (int x = 0; x < P.size(); ++x) {
          auto ext = copy;
          ext.push_back(P.point(x));
          in[static_cast<std::size_t>(x)] = row_reduce(F, ext) == dim;
        }
        found.insert(in);
        return;
      }
      for (int i = start; i < P.size(); ++i) {
        pick[static_cast<std::size_t>(depth)] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(1, 0);
    for (const auto& in : found) subs.push_back({in, mu});
  }

  const auto& group = P.semilinear_action();
  Integer total = 0;
  for (const auto& g : group) {
    const Permutation perm(g);
    for (const auto& W : subs) {
      std::vector<int> weights;
      for (const auto& cyc : perm.cycles()) {
        bool inside = true;
        for (int x : cyc) inside = inside && W.contains[static_cast<std::size_t>(x)];
        if (inside) weights.push_back(static_cast<int>(cyc.size()));
      }
      total += W.mu * denumerant(weights, n);
    }
  }
  const Integer order(static_cast<unsigned long>(group.size()));
  if (total % order != 0) throw std::logic_error("Burnside sum not divisible by the group order");
  return total / order;
}

FittedQuasipolynomial codes_quasipolynomial(int q, int m, int n_max, std::size_t max_period) {
  Sequence seq;
  for (int n = 0; n <= n_max; ++n) seq[n] = count_codes_burnside(q, m, n);
  const int k = ProjectiveAlphabet::get(q, m).size();
  return fit(seq, max_period, k - 1);
}

// Model functor --------------------------------------------------------------

ModelFunctorPresentation codes_presentation(int q, int m) {
  const auto& P = ProjectiveAlphabet::get(q, m);
  const int k = P.size();
  auto group = std::make_shared<std::vector<std::vector<int>>>(P.semilinear_action());
  std::vector<int> basis;
  for (int j = 0; j < m; ++j) basis.push_back(P.basis_index(j));
  auto classes = [k, basis](const Pair& a) {
    std::vector<int> c(a.cells);
    for (auto& x : c)
      if (x >= k) x = basis[static_cast<std::size_t>(x - k)];
    return c;
  };

  ModelFunctorPresentation p;
  p.name = "codes(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ")";
  p.s0 = m;
  p.k = k;
  p.countset = DownwardClosedSet::full(k);
  p.provenance = "builtin";
  p.eq = [group, classes](int, const Pair& a, const Pair& b) {
    const auto ca = classes(a);
    const auto cb = classes(b);
    for (const auto& g : *group) {
      bool same = true;
      for (std::size_t i = 0; i < ca.size() && same; ++i) same = g[static_cast<std::size_t>(ca[i])] == cb[i];
      if (same) return true;
    }
    return false;
  };
  p.class_of = [group, classes, basis, k, m](int n, const Pair& a) {
    const auto ca = classes(a);
    std::set<Pair> out;
    std::set<std::vector<int>> images;
    for (const auto& g : *group) {
      std::vector<int> cb(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) cb[i] = g[static_cast<std::size_t>(ca[i])];
      if (!images.insert(cb).second) continue;
      std::vector<std::vector<int>> slots(static_cast<std::size_t>(m));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          if (cb[static_cast<std::size_t>(i)] == basis[static_cast<std::size_t>(j)]) slots[static_cast<std::size_t>(j)].push_back(i);
      std::vector<std::size_t> choice(static_cast<std::size_t>(m), 0);
      bool any = std::all_of(slots.begin(), slots.end(), [](const auto& s) { return !s.empty(); });
      while (any) {
        Pair b;
        b.cells = cb;
        for (int j = 0; j < m; ++j)
          b.cells[static_cast<std::size_t>(slots[static_cast<std::size_t>(j)][choice[static_cast<std::size_t>(j)]])] = k + j;
        out.insert(std::move(b));
        int j = 0;
        while (j < m && ++choice[static_cast<std::size_t>(j)] == slots[static_cast<std::size_t>(j)].size())
          choice[static_cast<std::size_t>(j++)] = 0;
        if (j == m) break;
      }
    }
    return std::vector<Pair>(out.begin(), out.end());
  };
  return p;
}

}  // namespace widecount
